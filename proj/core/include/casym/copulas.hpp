// Copula families, transforms, axiom checking, quadrant-dependence
// classification, and rank-based empirical copulas.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "casym/generators.hpp"
#include "casym/numerics.hpp"

namespace casym {

enum class CopulaKind {
  FrechetM,
  FrechetW,
  Product,
  Marshall,
  Maxmin,
  RMM,
  Cmu,
  Dmu,
  Elammu,
  Wlambda,
  Nlambda,
  Pab,
  Qab,
  Transpose,
  Survival,
  Empirical,
};

std::string to_string(CopulaKind k);

// Immutable, cheaply copyable handle; evaluation is pure and thread safe.
class Copula {
 public:
  struct Data;  // implementation detail, defined in the .cpp

  double operator()(double x, double y) const;
  CopulaKind kind() const;

  // {"kind": string, "params": object, "f": generator?, "g": generator?}
  nlohmann::json to_json() const;
  static Copula from_json(const nlohmann::json& j);

  const nlohmann::json& params() const;
  const std::optional<Generator>& generator_f() const;
  const std::optional<Generator>& generator_g() const;

 private:
  explicit Copula(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;

  friend Copula frechet_m();
  friend Copula frechet_w();
  friend Copula product();
  friend Copula marshall(Generator f, Generator g);
  friend Copula maxmin(Generator f, Generator g);
  friend Copula rmm(Generator f, Generator g);
  friend Copula cmu(double mu);
  friend Copula dmu(double mu);
  friend Copula elammu(double lambda, double mu);
  friend Copula wlambda(double lambda);
  friend Copula nlambda(double lambda);
  friend Copula pab(double a, double b);
  friend Copula qab(double a, double b);
  friend Copula transpose(const Copula& c);
  friend Copula survival(const Copula& c);
  friend Copula empirical_copula(
      const std::vector<std::pair<double, double>>& points);
};

Copula frechet_m();
Copula frechet_w();
Copula product();

// Generator-built families; generators are class-validated at construction.
Copula marshall(Generator f, Generator g);
Copula maxmin(Generator f, Generator g);
Copula rmm(Generator f, Generator g);

// Maxmin from the (phi, psi) form; converts to (f, g) internally.
Copula maxmin_phi_psi(const Generator& phi, const Generator& psi);

// Direct evaluation of min{x, phi(x)y - phi(x)psi(y) + x psi(y)}, kept
// separate so tests can confirm the two maxmin forms agree.
double maxmin_eval_phi_psi(const Generator& phi, const Generator& psi,
                           double x, double y);

// Closed-form extremal families.
Copula cmu(double mu);                      // mu in (0,1)
Copula dmu(double mu);                      // mu in (0,1)
Copula elammu(double lambda, double mu);    // lambda in (0,1], mu in [0,1]
Copula wlambda(double lambda);              // lambda in [0,1]
Copula nlambda(double lambda);              // lambda in [0,(3-sqrt5)/2]
Copula pab(double a, double b);             // 0<=a<=1, 2a/(a+1)<=b<=1
Copula qab(double a, double b);             // 0<a<1, a<=b<=2a/(a+1)

Copula transpose(const Copula& c);
Copula survival(const Copula& c);

// Rank-based: C_n(x,y) = (1/n) #{i : R_i/n <= x, S_i/n <= y}.
Copula empirical_copula(const std::vector<std::pair<double, double>>& points);

struct AxiomReport {
  bool boundary_ok = true;
  bool two_increasing_ok = true;
  double worst_rectangle[5] = {0, 0, 0, 0, 0};  // x1,x2,y1,y2, volume
  int grid_n = 0;
};

// Boundary conditions on n grid lines and nonnegative volumes (>= -1e-12)
// on all (n-1)^2 grid cells.
AxiomReport check_axioms(const Field2D& c, int n);
AxiomReport check_axioms(const Copula& c, int n);

enum class QuadrantClass { PQD, NQD, Neither, Both };

std::string to_string(QuadrantClass q);

struct QuadrantReport {
  QuadrantClass classification;
  // Largest deviation of C - Pi on the wrong side of the classification
  // (for Both/Neither: the largest-magnitude deviation overall).
  double worst_x = 0, worst_y = 0, worst_residual = 0;
};

QuadrantReport classify_quadrant(const Copula& c, int n);

// Conservative sup-norm distance between the empirical copula of the sample
// and an analytic target: exact prefix counts on a grid_n x grid_n lattice
// plus the lattice-variation slack.
double empirical_sup_distance(const std::vector<std::pair<double, double>>& points,
                              const Copula& target, int grid_n = 2048);

}  // namespace casym
