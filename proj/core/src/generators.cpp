#include "casym/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "casym/numerics.hpp"

namespace casym {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCheckTol = 1e-12;  // absorbs rounding in exact PL checks
}  // namespace

Generator::Generator(std::vector<Knot> knots, std::optional<double> value_at_zero,
                     std::optional<double> value_at_one)
    : knots_(std::move(knots)),
      value_at_zero_(value_at_zero),
      value_at_one_(value_at_one) {
  if (knots_.empty()) throw std::invalid_argument("Generator: no knots");
  if (knots_.front().x > 0.0)
    knots_.insert(knots_.begin(), Knot{0.0, knots_.front().y});
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
    if (!(knots_[i].x < knots_[i + 1].x))
      throw std::invalid_argument("Generator: knot abscissae must increase");
  if (knots_.back().x != 1.0)
    throw std::invalid_argument("Generator: last knot must be at x = 1");
  if (value_at_zero_ && knots_.front().y == *value_at_zero_)
    value_at_zero_.reset();
  if (value_at_one_ && knots_.back().y == *value_at_one_) value_at_one_.reset();
}

double Generator::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("Generator: argument outside [0,1]");
  if (x == 0.0) return value_at_zero_.value_or(knots_.front().y);
  if (x == 1.0) return value_at_one_.value_or(knots_.back().y);
  auto it = std::upper_bound(
      knots_.begin(), knots_.end(), x,
      [](double v, const Knot& k) { return v < k.x; });
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  const double t = (x - lo.x) / (hi.x - lo.x);
  return lo.y + t * (hi.y - lo.y);
}

double Generator::star(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("Generator: argument outside [0,1]");
  if (x > 0.0) return (*this)(x) / x;
  const double limit = knots_.front().y;
  if (limit > 0.0) return kInf;
  if (limit < 0.0) return -kInf;
  // limit 0: the ratio tends to the slope of the first segment
  const Knot& a = knots_.front();
  const Knot& b = knots_[1];
  return (b.y - a.y) / (b.x - a.x);
}

nlohmann::json Generator::to_json() const {
  nlohmann::json j;
  j["value_at_zero"] =
      value_at_zero_ ? nlohmann::json(*value_at_zero_) : nlohmann::json("limit");
  j["value_at_one"] =
      value_at_one_ ? nlohmann::json(*value_at_one_) : nlohmann::json("limit");
  auto& k = j["knots"] = nlohmann::json::array();
  for (const Knot& kn : knots_) k.push_back({kn.x, kn.y});
  return j;
}

Generator Generator::from_json(const nlohmann::json& j) {
  std::vector<Knot> knots;
  for (const auto& kn : j.at("knots"))
    knots.push_back({kn.at(0).get<double>(), kn.at(1).get<double>()});
  auto endpoint = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_string()) return std::nullopt;
    return j[key].get<double>();
  };
  return Generator(std::move(knots), endpoint("value_at_zero"),
                   endpoint("value_at_one"));
}

bool Generator::same_knots(const Generator& other, double tol) const {
  if (knots_.size() != other.knots_.size()) return false;
  for (std::size_t i = 0; i < knots_.size(); ++i)
    if (std::abs(knots_[i].x - other.knots_[i].x) > tol ||
        std::abs(knots_[i].y - other.knots_[i].y) > tol)
      return false;
  auto ep = [tol](const std::optional<double>& a, const std::optional<double>& b,
                  double limit_a, double limit_b) {
    return std::abs(a.value_or(limit_a) - b.value_or(limit_b)) <= tol;
  };
  return ep(value_at_zero_, other.value_at_zero_, limit_at_zero(),
            other.limit_at_zero()) &&
         ep(value_at_one_, other.value_at_one_, limit_at_one(),
            other.limit_at_one());
}

std::string to_string(GeneratorClass c) {
  switch (c) {
    case GeneratorClass::MarshallFG: return "MarshallFG";
    case GeneratorClass::ScriptF: return "ScriptF";
    case GeneratorClass::MaxminPhi: return "MaxminPhi";
    case GeneratorClass::MaxminPsi: return "MaxminPsi";
  }
  return "?";
}

namespace {

struct Pt {
  double x, y;
};

// Sample points that pin down a piecewise-linear function exactly: actual
// endpoint values, limit knots, and midpoints of every knot interval.
std::vector<Pt> check_points(const Generator& g) {
  std::vector<Pt> pts;
  pts.push_back({0.0, g(0.0)});
  const auto& ks = g.knots();
  pts.push_back({0.0, ks.front().y});  // right-limit at 0
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    const double xm = 0.5 * (ks[i].x + ks[i + 1].x);
    if (i > 0) pts.push_back({ks[i].x, ks[i].y});
    pts.push_back({xm, g(xm)});
  }
  pts.push_back({1.0, ks.back().y});  // left-limit at 1
  pts.push_back({1.0, g(1.0)});
  return pts;
}

void require(GeneratorClassReport& rep, bool ok, double x,
             const std::string& condition, double residual) {
  if (ok) return;
  rep.passed = false;
  rep.violations.push_back({x, condition, residual});
}

void check_endpoint(GeneratorClassReport& rep, const Generator& g, double x,
                    double expected, const std::string& name) {
  const double v = g(x);
  require(rep, std::abs(v - expected) <= kCheckTol, x, name,
          std::abs(v - expected));
}

void check_monotone(GeneratorClassReport& rep, const std::vector<Pt>& pts,
                    bool nondecreasing, const std::string& name) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double d = pts[i + 1].y - pts[i].y;
    const bool ok = nondecreasing ? d >= -kCheckTol : d <= kCheckTol;
    require(rep, ok, pts[i + 1].x, name, std::abs(d));
  }
}

// Star values (f(x)/x) at the check points with x > 0, plus the extended
// value at 0+; order preserved.
std::vector<Pt> star_points(const Generator& g) {
  std::vector<Pt> pts;
  pts.push_back({0.0, g.star(0.0)});
  const auto& ks = g.knots();
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    if (i > 0) pts.push_back({ks[i].x, ks[i].y / ks[i].x});
    const double xm = 0.5 * (ks[i].x + ks[i + 1].x);
    pts.push_back({xm, g(xm) / xm});
  }
  pts.push_back({1.0, ks.back().y});
  pts.push_back({1.0, g(1.0)});
  return pts;
}

void check_star_nonincreasing(GeneratorClassReport& rep, const Generator& g,
                              const std::string& name) {
  const auto pts = star_points(g);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (std::isinf(pts[i].y)) continue;
    const double d = pts[i + 1].y - pts[i].y;
    require(rep, d <= kCheckTol, pts[i + 1].x, name, std::abs(d));
  }
}

void check_range(GeneratorClassReport& rep, const std::vector<Pt>& pts) {
  for (const Pt& p : pts) {
    require(rep, p.y >= -kCheckTol, p.x, "value >= 0", -p.y);
    require(rep, p.y <= 1.0 + kCheckTol, p.x, "value <= 1", p.y - 1.0);
  }
}

GeneratorClassReport validate_marshall_like(const Generator& g,
                                            GeneratorClass tag) {
  GeneratorClassReport rep{tag};
  check_endpoint(rep, g, 0.0, 0.0, "value at 0 equals 0");
  check_endpoint(rep, g, 1.0, 1.0, "value at 1 equals 1");
  const auto pts = check_points(g);
  check_range(rep, pts);
  check_monotone(rep, pts, true, "nondecreasing");
  check_star_nonincreasing(rep, g, "starred ratio nonincreasing");
  return rep;
}

GeneratorClassReport validate_script_f(const Generator& g) {
  GeneratorClassReport rep{GeneratorClass::ScriptF};
  check_endpoint(rep, g, 0.0, 0.0, "value at 0 equals 0");
  check_endpoint(rep, g, 1.0, 0.0, "value at 1 equals 0");
  auto pts = check_points(g);
  check_range(rep, pts);
  for (Pt& p : pts) p.y += p.x;
  check_monotone(rep, pts, true, "f(x) + x nondecreasing");
  check_star_nonincreasing(rep, g, "f(x)/x nonincreasing");
  return rep;
}

Generator reflect_psi_to_g(const Generator& psi) {
  // g(x) = 1 - x - psi(1 - x): reverse the knots through t -> 1 - t.
  std::vector<Generator::Knot> knots;
  const auto& ks = psi.knots();
  for (auto it = ks.rbegin(); it != ks.rend(); ++it)
    knots.push_back({1.0 - it->x, it->x - it->y});
  knots.front().x = 0.0;  // guard rounding at the endpoints
  knots.back().x = 1.0;
  return Generator(std::move(knots), 1.0 - psi(1.0), -psi(0.0));
}

Generator reflect_g_to_psi(const Generator& g) {
  // psi(t) = t - g(1 - t)
  std::vector<Generator::Knot> knots;
  const auto& ks = g.knots();
  for (auto it = ks.rbegin(); it != ks.rend(); ++it)
    knots.push_back({1.0 - it->x, 1.0 - it->x - it->y});
  knots.front().x = 0.0;
  knots.back().x = 1.0;
  return Generator(std::move(knots), -g(1.0), 1.0 - g(0.0));
}

}  // namespace

GeneratorClassReport validate_class(const Generator& g, GeneratorClass c) {
  switch (c) {
    case GeneratorClass::MarshallFG:
    case GeneratorClass::MaxminPhi:
      return validate_marshall_like(g, c);
    case GeneratorClass::ScriptF:
      return validate_script_f(g);
    case GeneratorClass::MaxminPsi: {
      GeneratorClassReport rep = validate_script_f(reflect_psi_to_g(g));
      rep.class_tested = GeneratorClass::MaxminPsi;
      for (ClassViolation& v : rep.violations) {
        v.x = 1.0 - v.x;
        v.condition = "via transformed g: " + v.condition;
      }
      return rep;
    }
  }
  throw std::logic_error("validate_class: bad tag");
}

std::pair<Generator, Generator> phi_psi_to_fg(const Generator& phi,
                                              const Generator& psi) {
  std::vector<Generator::Knot> fk;
  for (const auto& k : phi.knots()) fk.push_back({k.x, k.y - k.x});
  Generator f(std::move(fk), phi(0.0), phi(1.0) - 1.0);
  Generator g = reflect_psi_to_g(psi);
  if (!validate_class(f, GeneratorClass::ScriptF).passed ||
      !validate_class(g, GeneratorClass::ScriptF).passed)
    throw std::invalid_argument(
        "phi_psi_to_fg: inputs are not valid maxmin generators");
  return {std::move(f), std::move(g)};
}

std::pair<Generator, Generator> fg_to_phi_psi(const Generator& f,
                                              const Generator& g) {
  if (!validate_class(f, GeneratorClass::ScriptF).passed ||
      !validate_class(g, GeneratorClass::ScriptF).passed)
    throw std::invalid_argument("fg_to_phi_psi: inputs are not in class F");
  std::vector<Generator::Knot> pk;
  for (const auto& k : f.knots()) pk.push_back({k.x, k.y + k.x});
  Generator phi(std::move(pk), f(0.0), f(1.0) + 1.0);
  Generator psi = reflect_g_to_psi(g);
  return {std::move(phi), std::move(psi)};
}

Generator marshall_f_mu(double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("marshall_f_mu: mu must lie in (0,1)");
  return Generator({{0.0, mu}, {mu, mu}, {1.0, 1.0}}, 0.0);
}

Generator jump_to_one() { return Generator({{0.0, 1.0}, {1.0, 1.0}}, 0.0); }

Generator script_f_tent(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("script_f_tent: mu must lie in [0,1]");
  if (mu == 0.0) return zero_generator();
  if (mu == 1.0) return Generator({{0.0, 1.0}, {1.0, 0.0}}, 0.0);
  return Generator({{0.0, mu}, {mu, 0.0}, {1.0, 0.0}}, 0.0);
}

Generator script_f_roof() { return Generator({{0.0, 1.0}, {1.0, 0.0}}, 0.0); }

Generator script_f_hat(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("script_f_hat: lambda must lie in (0,1]");
  if (lambda == 1.0) return zero_generator();
  return Generator({{0.0, 0.0}, {lambda, 1.0 - lambda}, {1.0, 0.0}},
                   std::nullopt);
}

Generator identity_generator() {
  return Generator({{0.0, 0.0}, {1.0, 1.0}}, std::nullopt);
}

Generator zero_generator() {
  return Generator({{0.0, 0.0}, {1.0, 0.0}}, std::nullopt);
}

std::pair<Generator, Generator> maxmin_phi_psi_for_cmu(double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("maxmin_phi_psi_for_cmu: mu in (0,1)");
  Generator phi({{0.0, mu}, {mu, mu}, {1.0, 1.0}}, 0.0);
  Generator psi({{0.0, 0.0}, {1.0, 0.0}}, std::nullopt, 1.0);
  return {std::move(phi), std::move(psi)};
}

std::pair<Generator, Generator> maxmin_phi_psi_for_dmu(double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("maxmin_phi_psi_for_dmu: mu in (0,1)");
  Generator phi = jump_to_one();
  Generator psi({{0.0, 0.0}, {1.0 - mu, 1.0 - mu}, {1.0, 1.0 - mu}},
                std::nullopt, 1.0);
  return {std::move(phi), std::move(psi)};
}

namespace {

std::vector<double> random_interior_grid(UniformStream& rng, int count) {
  std::vector<double> xs;
  for (int i = 0; i < count; ++i) xs.push_back(0.02 + 0.96 * rng.next());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return b - a < 1e-4; }),
           xs.end());
  return xs;
}

}  // namespace

Generator random_script_f(std::uint64_t seed) {
  UniformStream rng(seed);
  const int count = 3 + static_cast<int>(rng.next() * 5);
  std::vector<double> xs = random_interior_grid(rng, count);
  // Build from the right: f(1) = 0; stepping left, keep f/x nonincreasing
  // (lower bound) and the slope of f at least -1 (upper bound).
  std::vector<double> ys(xs.size());
  double xr = 1.0, yr = 0.0;
  for (int i = static_cast<int>(xs.size()) - 1; i >= 0; --i) {
    const double lo = xs[i] * yr / xr;
    const double hi = yr + (xr - xs[i]);
    ys[i] = lo + rng.next() * (hi - lo);
    xr = xs[i];
    yr = ys[i];
  }
  std::vector<Generator::Knot> knots;
  // Right-limit at 0: either continuous from the first segment slope or a
  // jump bounded by the slope >= -1 constraint.
  double limit0;
  if (rng.next() < 0.5) {
    limit0 = 0.0;
  } else {
    limit0 = rng.next() * std::min(1.0, ys.front() + xs.front());
  }
  knots.push_back({0.0, limit0});
  for (std::size_t i = 0; i < xs.size(); ++i) knots.push_back({xs[i], ys[i]});
  knots.push_back({1.0, 0.0});
  return Generator(std::move(knots), 0.0);
}

namespace {

Generator random_marshall_generator(UniformStream& rng) {
  const int count = 3 + static_cast<int>(rng.next() * 5);
  std::vector<double> xs = random_interior_grid(rng, count);
  // f(1) = 1; stepping left keep f nondecreasing and f/x nonincreasing.
  std::vector<double> ys(xs.size());
  double xr = 1.0, yr = 1.0;
  for (int i = static_cast<int>(xs.size()) - 1; i >= 0; --i) {
    const double lo = xs[i] * yr / xr;
    ys[i] = lo + rng.next() * (yr - lo);
    xr = xs[i];
    yr = ys[i];
  }
  std::vector<Generator::Knot> knots;
  const double limit0 = rng.next() < 0.5 ? 0.0 : rng.next() * ys.front();
  knots.push_back({0.0, limit0});
  for (std::size_t i = 0; i < xs.size(); ++i) knots.push_back({xs[i], ys[i]});
  knots.push_back({1.0, 1.0});
  return Generator(std::move(knots), 0.0);
}

}  // namespace

std::pair<Generator, Generator> random_marshall_pair(std::uint64_t seed) {
  UniformStream rng(seed);
  Generator f = random_marshall_generator(rng);
  UniformStream rng2(seed ^ 0xD1B54A32D192ED03ULL);
  Generator g = random_marshall_generator(rng2);
  return {std::move(f), std::move(g)};
}

std::pair<Generator, Generator> random_script_f_pair(std::uint64_t seed) {
  return {random_script_f(seed), random_script_f(seed ^ 0xA0761D6478BD642FULL)};
}

}  // namespace casym
