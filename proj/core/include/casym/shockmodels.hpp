// Explicit shock distributions realizing the extremal copulas, sampling of
// (U,V), and analytic verification of the CDF relations.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "casym/copulas.hpp"

namespace casym {

struct Segment {
  double lo, hi, weight;
};

// Mixture of uniform distributions on disjoint intervals; continuous
// piecewise-linear CDF with closed-form quantiles.
class PiecewiseUniformDist {
 public:
  explicit PiecewiseUniformDist(std::vector<Segment> segments);

  double cdf(double t) const;
  double quantile(double u) const;  // u in [0,1)
  double support_min() const { return segments_.front().lo; }
  double support_max() const { return segments_.back().hi; }
  const std::vector<Segment>& segments() const { return segments_; }

  nlohmann::json to_json() const;

 private:
  std::vector<Segment> segments_;   // sorted, zero-weight segments dropped
  std::vector<double> cum_;         // cumulative weight after each segment
};

enum class ShockKind { MarshallCmu, MaxminCmu, MaxminDmu, RmmElammu };
enum class Coupling { MaxMax, MaxMin, Reflected };

std::string to_string(ShockKind k);
std::string to_string(Coupling c);

struct ShockModelSpec {
  ShockKind kind;
  double mu = 0.0;
  double lambda = 0.0;  // RmmElammu only
  PiecewiseUniformDist dist_x, dist_y, dist_z;
  Coupling coupling;
  Copula target;

  nlohmann::json to_json() const;
};

ShockModelSpec marshall_cmu_spec(double mu);
ShockModelSpec maxmin_cmu_spec(double mu);
ShockModelSpec maxmin_dmu_spec(double mu);
ShockModelSpec rmm_elammu_spec(double lambda, double mu);

// Marginal CDFs of U and V implied by the coupling (V lives on the negative
// axis for the reflected kind).
double cdf_u(const ShockModelSpec& spec, double t);
double cdf_v(const ShockModelSpec& spec, double t);

// P[A <= B] for independent A, B, exact on the piecewise-linear CDFs.
double prob_leq(const PiecewiseUniformDist& a, const PiecewiseUniformDist& b);

struct ShockCheck {
  std::string name;
  bool passed;
  double residual;
};

struct ShockVerifyReport {
  bool passed = true;
  std::vector<ShockCheck> checks;
};

// Analytic checks of the support-ordering probabilities and the displayed
// piecewise forms of F_U and F_V (tolerance 1e-12).
ShockVerifyReport verify_spec(const ShockModelSpec& spec);

struct ShockSample {
  double u, v;    // shock scale
  double cu, cv;  // copula scale via the exact marginals
};

// Deterministic per (spec, n, seed); sample i uses stream variates 3i..3i+2,
// so chunked parallel generation reproduces the same draws.
std::vector<ShockSample> sample(const ShockModelSpec& spec, std::size_t n,
                                std::uint64_t seed);

// Header `u,v,cu,cv`, 12 significant digits.
void write_scatter_csv(const std::vector<ShockSample>& samples,
                       std::ostream& os);

}  // namespace casym
