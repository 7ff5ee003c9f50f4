#include "casym/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casym {

std::string to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::AllCopulas: return "all";
    case FamilyTag::PQD: return "pqd";
    case FamilyTag::NQD: return "nqd";
    case FamilyTag::Marshall: return "marshall";
    case FamilyTag::Maxmin: return "maxmin";
    case FamilyTag::RMM: return "rmm";
  }
  return "?";
}

std::optional<FamilyTag> parse_family(const std::string& s) {
  if (s == "all") return FamilyTag::AllCopulas;
  if (s == "pqd") return FamilyTag::PQD;
  if (s == "nqd") return FamilyTag::NQD;
  if (s == "marshall") return FamilyTag::Marshall;
  if (s == "maxmin") return FamilyTag::Maxmin;
  if (s == "rmm") return FamilyTag::RMM;
  return std::nullopt;
}

namespace {

void require_square(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw std::domain_error("dstar: point outside the unit square");
}

// All pieces below assume y >= x.
double dstar_marshall(double x, double y) {
  if (x <= y * y) return x * (1.0 - y);
  return x / y * (y - x);
}

double dstar_maxmin(double x, double y) {
  if (x >= std::max(1.0 - y, y * y)) return x / y * (y - x);
  if (y <= std::min(2.0 * x - x * x, 1.0 - x))
    return (1.0 - y) / (1.0 - x) * (y - x);
  return x * (1.0 - y);
}

double dstar_rmm(double x, double y) {
  if (x <= y * (1.0 - y)) return x * y;
  if (x <= 1.0 - y) return x / y * (y - x);
  return (1.0 - y) / y * (y - x);
}

}  // namespace

double dstar(FamilyTag family, double x, double y) {
  require_square(x, y);
  if (y < x) std::swap(x, y);
  switch (family) {
    case FamilyTag::AllCopulas:
      return std::min({x, y, 1.0 - x, 1.0 - y, y - x});
    case FamilyTag::PQD:
      return std::min({x * (1.0 - y), (1.0 - x) * y, y - x});
    case FamilyTag::NQD:
      return std::min({x * y, (1.0 - x) * (1.0 - y), y - x});
    case FamilyTag::Marshall:
      return dstar_marshall(x, y);
    case FamilyTag::Maxmin:
      return dstar_maxmin(x, y);
    case FamilyTag::RMM:
      return dstar_rmm(x, y);
  }
  throw std::logic_error("dstar: bad family tag");
}

double bound_F(double x, double y) {
  require_square(x, y);
  if (y < x) throw std::domain_error("bound_F: requires y >= x");
  return dstar_marshall(x, y);
}

double bound_G(double x, double z) {
  // Rounding slack: mapped triangle quadrature points can land an ulp past
  // the hypotenuse.
  if (!(x >= 0.0 && z >= 0.0 && x + z <= 1.0 + 1e-12))
    throw std::domain_error("bound_G: requires x, z >= 0 with x + z <= 1");
  const double rest = std::max(0.0, 1.0 - x - z);
  // The branch tests get the same rounding slack: the surface is continuous
  // across the true region boundaries (z = 1-sqrt(x) and x = 1-sqrt(z)), but
  // an ulp-level miss on the min() caps would otherwise fall through to the
  // x*z branch, which does not match along the diagonal z = x.
  const double eps = 1e-12;
  if (z >= 1.0 - std::sqrt(x) && z <= std::min(x, 1.0 - x) + eps)
    return x * rest / (1.0 - z);
  if (x >= 1.0 - std::sqrt(z) && x <= std::min(z, 1.0 - z) + eps)
    return z * rest / (1.0 - x);
  return x * z;
}

double bound_Ghat(double x, double y) {
  require_square(x, y);
  if (y < x) throw std::domain_error("bound_Ghat: requires y >= x");
  return bound_G(x, 1.0 - y);
}

double bound_H(double x, double y) {
  require_square(x, y);
  if (y < x) throw std::domain_error("bound_H: requires y >= x");
  return dstar_rmm(x, y);
}

nlohmann::json MeasureResult::to_json() const {
  nlohmann::json j;
  j["p"] = std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p);
  j["value"] = value;
  j["err"] = err;
  if (witness) j["witness"] = {witness->first, witness->second};
  return j;
}

MeasureResult mu_p(const Copula& c, double p, const Tolerance& tol) {
  if (!(p >= 1.0)) throw std::domain_error("mu_p: p must be >= 1 or inf");
  const Field2D diff = [&c](double x, double y) {
    return std::abs(c(x, y) - c(y, x));
  };
  MeasureResult r;
  r.p = p;
  if (std::isinf(p)) {
    const SupResult sup = sup_on_square(diff, tol);
    r.value = sup.value;
    r.err = 2.0 * sup.cell_size;  // difference fields are 2-Lipschitz
    r.witness = {sup.x, sup.y};
    return r;
  }
  // |C - Ct| is symmetric across the diagonal: integrate one triangle, double.
  const double half = integrate2d(diff, Region::TriangleXLeY, p, tol);
  const double total = 2.0 * std::max(0.0, half);
  r.value = std::pow(total, 1.0 / p);
  const double dtotal = 2.0 * tol.abs_tol;
  r.err = total > 0.0
              ? std::pow(total, 1.0 / p - 1.0) * dtotal / p
              : std::pow(dtotal, 1.0 / p);
  return r;
}

double marshall_mu_p_bound(double p) {
  if (!(p >= 1.0)) throw std::domain_error("marshall_mu_p_bound: p >= 1");
  const double b = incomplete_beta(1.0, p + 1.0, 2.0 * p + 3.0);
  return std::pow(2.0 * (2.0 * p + 3.0) * b / (p * p + 3.0 * p + 2.0),
                  1.0 / p);
}

double mu_p_c23_closed(double p) {
  if (!(p >= 1.0)) throw std::domain_error("mu_p_c23_closed: p >= 1");
  const double term1 =
      8.0 / (3.0 * (p + 1.0)) * incomplete_beta(1.0 / 3.0, p + 2.0, p + 1.0);
  const double term2 = std::pow(2.0, p + 3.0) * (4.0 * p + 5.0) /
                       (std::pow(3.0, 2.0 * p + 3.0) * (p + 1.0) * (p + 1.0) *
                        (p + 2.0));
  return 2.0 / 3.0 * std::pow(term1 + term2, 1.0 / p);
}

double mu_p_E_closed(double p) {
  if (!(p >= 1.0)) throw std::domain_error("mu_p_E_closed: p >= 1");
  const double s2 = std::sqrt(2.0);
  const double term1 =
      2.0 * incomplete_beta(s2 - 1.0, p + 2.0, p + 1.0) /
      (std::pow(s2, p) * (p + 1.0));
  const double term2 = 2.0 * std::pow(3.0 - 2.0 * s2, p + 1.0) *
                       ((s2 + 1.0) * p + 2.0 * s2 + 1.0) /
                       ((p + 1.0) * (p + 1.0) * (p + 2.0));
  return std::pow(term1 + term2, 1.0 / p);
}

std::pair<double, double> maxmin_mu12_bounds() {
  const double s5 = std::sqrt(5.0);
  const double mu1 = 2.0 * std::log(2.0) - 2.0 / 3.0 * std::log(s5 + 3.0) +
                     (97.0 - 47.0 * s5) / 36.0;
  const double mu2 =
      std::sqrt(2082.0 - 3038.0 / 3.0 * s5 + 864.0 * std::log(s5 - 1.0)) /
      12.0;
  return {mu1, mu2};
}

std::pair<double, double> rmm_mu12_bounds() {
  const double mu1 = std::log(2.0) / 3.0 - 31.0 / 180.0;
  const double mu2 = std::sqrt(84.0 * std::log(2.0) - 2437.0 / 42.0) / 6.0;
  return {mu1, mu2};
}

namespace {

// mu of the extremal Marshall copula through a point (a,b), a < b, both
// interior: the kink square when a <= b^2, else the diagonal segment.
double marshall_witness_mu(double a, double b) {
  return a <= b * b ? b : a / b;
}

}  // namespace

Copula attainment_witness(FamilyTag family, double x, double y) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
    throw std::invalid_argument("attainment_witness: point must be interior");
  if (x == y)
    throw std::invalid_argument("attainment_witness: point must be off-diagonal");
  const double a = std::min(x, y), b = std::max(x, y);
  switch (family) {
    case FamilyTag::AllCopulas:
      return wlambda(b - a);
    case FamilyTag::PQD: {
      if (b < 2.0 * a / (a + 1.0)) return qab(a, b);
      // The singular copula attains a(1-b) only when (b,a) falls in its
      // product region; otherwise fall back to the absolutely continuous
      // member through (b/(2-b), b), which attains it everywhere here.
      if (b >= 2.0 * a || 2.0 * b >= 1.0 + a) return pab(a, b);
      return qab(b / (2.0 - b), b);
    }
    case FamilyTag::NQD: {
      const double mt = std::abs(x + y - 1.0);
      const double lambda =
          (3.0 - mt - std::sqrt(mt * mt - 2.0 * mt + 5.0)) / 2.0;
      return nlambda(lambda);
    }
    case FamilyTag::Marshall:
      return cmu(marshall_witness_mu(a, b));
    case FamilyTag::Maxmin:
      if (a + b >= 1.0) return cmu(marshall_witness_mu(a, b));
      return dmu(marshall_witness_mu(1.0 - b, 1.0 - a));
    case FamilyTag::RMM:
      if (a + b >= 1.0) return elammu(b, 1.0);
      return elammu(b, a / (1.0 - b));
  }
  throw std::logic_error("attainment_witness: bad family tag");
}

}  // namespace casym
