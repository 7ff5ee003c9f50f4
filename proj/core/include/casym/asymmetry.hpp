// Maximal asymmetry functions d* per family, the bound functions F, G,
// G-hat, H, the mu_p non-exchangeability measures, and closed-form bounds.
#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "casym/copulas.hpp"
#include "casym/numerics.hpp"

namespace casym {

enum class FamilyTag { AllCopulas, PQD, NQD, Marshall, Maxmin, RMM };

std::string to_string(FamilyTag t);
std::optional<FamilyTag> parse_family(const std::string& s);

// Pointwise supremum of |C(x,y) - C(y,x)| over the family; symmetric in
// (x,y), zero on the diagonal and on the boundary of the square.
double dstar(FamilyTag family, double x, double y);

// Appendix bound functions.  F, Ghat, H require y >= x; G requires x+z <= 1.
double bound_F(double x, double y);
double bound_G(double x, double z);
double bound_Ghat(double x, double y);
double bound_H(double x, double y);

constexpr double kInfiniteP = std::numeric_limits<double>::infinity();

struct MeasureResult {
  double p = 1.0;  // kInfiniteP for the sup norm
  double value = 0.0;
  double err = 0.0;
  std::optional<std::pair<double, double>> witness;  // p = inf only

  // {"p": number|"inf", "value": .., "err": .., "witness": [x,y]?}
  nlohmann::json to_json() const;
};

// L_p distance between C and its transpose over the unit square; p = inf
// runs a sup search and reports the argmax as witness.
MeasureResult mu_p(const Copula& c, double p, const Tolerance& tol = {});

// ((2(2p+3) B(p+1, 2p+3)) / (p^2+3p+2))^(1/p).
double marshall_mu_p_bound(double p);

// Closed forms of mu_p for the two extremal examples (mu = 2/3 Marshall
// copula; lambda = sqrt(2)/2, mu = 1 reflected copula).
double mu_p_c23_closed(double p);
double mu_p_E_closed(double p);

// (mu_1, mu_2) closed-form bounds for the maxmin / reflected families.
std::pair<double, double> maxmin_mu12_bounds();
std::pair<double, double> rmm_mu12_bounds();

// A family member attaining dstar(family, x, y) at the requested interior
// off-diagonal point.
Copula attainment_witness(FamilyTag family, double x, double y);

}  // namespace casym
