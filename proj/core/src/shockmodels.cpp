#include "casym/shockmodels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casym/gridfield.hpp"
#include "casym/numerics.hpp"

namespace casym {

PiecewiseUniformDist::PiecewiseUniformDist(std::vector<Segment> segments) {
  for (const Segment& s : segments) {
    if (!(s.lo < s.hi))
      throw std::invalid_argument("PiecewiseUniformDist: need lo < hi");
    if (!(s.weight >= 0.0))
      throw std::invalid_argument("PiecewiseUniformDist: negative weight");
    if (s.weight == 0.0) continue;  // collapsed blocks are dropped
    segments_.push_back(s);
  }
  if (segments_.empty())
    throw std::invalid_argument("PiecewiseUniformDist: no mass");
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  double cum = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i > 0 && segments_[i].lo < segments_[i - 1].hi)
      throw std::invalid_argument("PiecewiseUniformDist: overlapping segments");
    cum += segments_[i].weight;
    cum_.push_back(cum);
  }
  if (std::abs(cum - 1.0) > 1e-12)
    throw std::invalid_argument("PiecewiseUniformDist: weights must sum to 1");
  cum_.back() = 1.0;
}

double PiecewiseUniformDist::cdf(double t) const {
  double below = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (t <= s.lo) return below;
    if (t < s.hi)
      return below + s.weight * (t - s.lo) / (s.hi - s.lo);
    below = cum_[i];
  }
  return 1.0;
}

double PiecewiseUniformDist::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("PiecewiseUniformDist::quantile: u in [0,1)");
  double below = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (u < cum_[i]) {
      const Segment& s = segments_[i];
      return s.lo + (u - below) / s.weight * (s.hi - s.lo);
    }
    below = cum_[i];
  }
  return segments_.back().hi;
}

nlohmann::json PiecewiseUniformDist::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Segment& s : segments_)
    arr.push_back({{"lo", s.lo}, {"hi", s.hi}, {"weight", s.weight}});
  return arr;
}

std::string to_string(ShockKind k) {
  switch (k) {
    case ShockKind::MarshallCmu: return "marshall-cmu";
    case ShockKind::MaxminCmu: return "maxmin-cmu";
    case ShockKind::MaxminDmu: return "maxmin-dmu";
    case ShockKind::RmmElammu: return "rmm-elammu";
  }
  return "?";
}

std::string to_string(Coupling c) {
  switch (c) {
    case Coupling::MaxMax: return "max_max";
    case Coupling::MaxMin: return "max_min";
    case Coupling::Reflected: return "reflected";
  }
  return "?";
}

nlohmann::json ShockModelSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  j["coupling"] = to_string(coupling);
  j["params"]["mu"] = mu;
  if (kind == ShockKind::RmmElammu) j["params"]["lambda"] = lambda;
  j["dist_x"] = dist_x.to_json();
  j["dist_y"] = dist_y.to_json();
  j["dist_z"] = dist_z.to_json();
  j["target"] = target.to_json();
  return j;
}

ShockModelSpec marshall_cmu_spec(double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("marshall_cmu_spec: mu in (0,1)");
  return ShockModelSpec{
      ShockKind::MarshallCmu,
      mu,
      0.0,
      PiecewiseUniformDist({{0, 1, mu}, {2, 3, 1.0 - mu}}),
      PiecewiseUniformDist({{0, 1, 1.0}}),
      PiecewiseUniformDist({{1, 2, 1.0}}),
      Coupling::MaxMax,
      cmu(mu)};
}

ShockModelSpec maxmin_cmu_spec(double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("maxmin_cmu_spec: mu in (0,1)");
  return ShockModelSpec{
      ShockKind::MaxminCmu,
      mu,
      0.0,
      PiecewiseUniformDist({{0, 1, mu}, {2, 3, 1.0 - mu}}),
      PiecewiseUniformDist({{2, 3, 1.0}}),
      PiecewiseUniformDist({{1, 2, 1.0}}),
      Coupling::MaxMin,
      cmu(mu)};
}

ShockModelSpec maxmin_dmu_spec(double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("maxmin_dmu_spec: mu in (0,1)");
  return ShockModelSpec{
      ShockKind::MaxminDmu,
      mu,
      0.0,
      PiecewiseUniformDist({{0, 1, 1.0}}),
      PiecewiseUniformDist({{0, 1, 1.0 - mu}, {2, 3, mu}}),
      PiecewiseUniformDist({{1, 2, 1.0}}),
      Coupling::MaxMin,
      dmu(mu)};
}

ShockModelSpec rmm_elammu_spec(double lambda, double mu) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("rmm_elammu_spec: lambda in (0,1]");
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("rmm_elammu_spec: mu in [0,1]");
  return ShockModelSpec{
      ShockKind::RmmElammu,
      mu,
      lambda,
      PiecewiseUniformDist({{2, 3, 1.0}}),
      PiecewiseUniformDist({{0, 1, 1.0 - mu}, {4, 5, mu}}),
      PiecewiseUniformDist({{1, 2, lambda}, {3, 4, 1.0 - lambda}}),
      Coupling::Reflected,
      elammu(lambda, mu)};
}

double cdf_u(const ShockModelSpec& spec, double t) {
  return spec.dist_x.cdf(t) * spec.dist_z.cdf(t);
}

double cdf_v(const ShockModelSpec& spec, double t) {
  const double fy = spec.dist_y.cdf(spec.coupling == Coupling::Reflected ? -t : t);
  const double fz = spec.dist_z.cdf(spec.coupling == Coupling::Reflected ? -t : t);
  switch (spec.coupling) {
    case Coupling::MaxMax:
      return fy * fz;
    case Coupling::MaxMin:
      return fy + fz - fy * fz;
    case Coupling::Reflected:
      return (1.0 - fy) * (1.0 - fz);
  }
  throw std::logic_error("cdf_v: bad coupling");
}

double prob_leq(const PiecewiseUniformDist& a, const PiecewiseUniformDist& b) {
  // P[A <= B] = int F_A dF_B; F_A is piecewise linear, so trapezoids over
  // the union of breakpoints are exact.
  double p = 0.0;
  for (const Segment& s : b.segments()) {
    std::vector<double> pts = {s.lo, s.hi};
    for (const Segment& t : a.segments()) {
      if (t.lo > s.lo && t.lo < s.hi) pts.push_back(t.lo);
      if (t.hi > s.lo && t.hi < s.hi) pts.push_back(t.hi);
    }
    std::sort(pts.begin(), pts.end());
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      integral +=
          0.5 * (a.cdf(pts[i]) + a.cdf(pts[i + 1])) * (pts[i + 1] - pts[i]);
    p += s.weight / (s.hi - s.lo) * integral;
  }
  return p;
}

namespace {

constexpr double kTol = 1e-12;

void add_check(ShockVerifyReport& rep, const std::string& name,
               double residual) {
  const bool ok = std::abs(residual) <= kTol;
  rep.checks.push_back({name, ok, residual});
  if (!ok) rep.passed = false;
}

// Breakpoints of all three shocks plus midpoints and points outside the
// support: enough to pin down every piecewise-linear identity.
std::vector<double> probe_points(const ShockModelSpec& spec) {
  std::vector<double> pts;
  for (const PiecewiseUniformDist* d :
       {&spec.dist_x, &spec.dist_y, &spec.dist_z})
    for (const Segment& s : d->segments()) {
      pts.push_back(s.lo);
      pts.push_back(s.hi);
    }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> out;
  out.push_back(pts.front() - 0.5);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.push_back(pts[i]);
    if (i + 1 < pts.size()) out.push_back(0.5 * (pts[i] + pts[i + 1]));
  }
  out.push_back(pts.back() + 0.5);
  return out;
}

using Curve = std::function<double(double)>;

void check_identity(ShockVerifyReport& rep, const std::string& name,
                    const std::vector<double>& pts, const Curve& actual,
                    const Curve& expected) {
  double worst = 0.0;
  for (double t : pts) {
    const double r = actual(t) - expected(t);
    if (std::abs(r) > std::abs(worst)) worst = r;
  }
  add_check(rep, name, worst);
}

void check_cdf_axioms(ShockVerifyReport& rep, const std::string& name,
                      const std::vector<double>& pts, const Curve& cdf) {
  add_check(rep, name + " starts at 0", cdf(pts.front()));
  add_check(rep, name + " ends at 1", cdf(pts.back()) - 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double d = cdf(pts[i + 1]) - cdf(pts[i]);
    if (d < worst) worst = d;
  }
  add_check(rep, name + " nondecreasing", worst < 0.0 ? worst : 0.0);
}

}  // namespace

ShockVerifyReport verify_spec(const ShockModelSpec& spec) {
  ShockVerifyReport rep;
  const auto& X = spec.dist_x;
  const auto& Y = spec.dist_y;
  const auto& Z = spec.dist_z;
  const std::vector<double> pts = probe_points(spec);
  const Curve fu = [&spec](double t) { return cdf_u(spec, t); };
  check_cdf_axioms(rep, "F_U", pts, fu);

  switch (spec.kind) {
    case ShockKind::MarshallCmu:
    case ShockKind::MaxminCmu: {
      if (spec.kind == ShockKind::MarshallCmu)
        add_check(rep, "P[Y <= Z] = 1", prob_leq(Y, Z) - 1.0);
      add_check(rep, "P[X <= Z] = mu", prob_leq(X, Z) - spec.mu);
      const double z2 = Z.support_max();
      check_identity(rep, "F_U = mu F_Z below z2 / F_X above", pts, fu,
                     [&](double t) {
                       return t <= z2 ? spec.mu * Z.cdf(t) : X.cdf(t);
                     });
      check_identity(
          rep, "F_V = F_Z", pts,
          [&spec](double t) { return cdf_v(spec, t); },
          [&Z](double t) { return Z.cdf(t); });
      break;
    }
    case ShockKind::MaxminDmu: {
      add_check(rep, "P[Y <= y2] = 1 - mu",
                Y.cdf(Y.segments().front().hi) - (1.0 - spec.mu));
      check_identity(rep, "F_U = F_Z", pts, fu,
                     [&Z](double t) { return Z.cdf(t); });
      const double z1 = Z.support_min(), z2 = Z.support_max();
      check_identity(rep, "F_V piecewise (F_Y / 1-mu+mu F_Z / 1)", pts,
                     [&spec](double t) { return cdf_v(spec, t); },
                     [&](double t) {
                       if (t <= z1) return Y.cdf(t);
                       if (t <= z2) return 1.0 - spec.mu + spec.mu * Z.cdf(t);
                       return 1.0;
                     });
      break;
    }
    case ShockKind::RmmElammu: {
      const double z2 = Z.segments().front().hi;
      add_check(rep, "F_Z(z2) = lambda", Z.cdf(z2) - spec.lambda);
      const double x2 = X.support_max();
      check_identity(rep, "F_U = lambda F_X below x2 / F_Z above", pts, fu,
                     [&](double t) {
                       return t <= x2 ? spec.lambda * X.cdf(t) : Z.cdf(t);
                     });
      // CDF of W = min{Y, Z} in the original scale...
      const Curve fw = [&](double t) {
        const double fy = Y.cdf(t), fz = Z.cdf(t);
        return fy + fz - fy * fz;
      };
      const double z1 = Z.support_min(), z4 = Z.support_max();
      check_identity(rep, "F_W piecewise (F_Y / (1-mu)+mu F_Z / 1)", pts, fw,
                     [&](double t) {
                       if (t <= z1) return Y.cdf(t);
                       if (t <= z4)
                         return 1.0 - spec.mu + spec.mu * Z.cdf(t);
                       return 1.0;
                     });
      // ...and the reflected relation F_V(-t) = (1-F_Y(t))(1-F_Z(t)).
      check_identity(rep, "F_V(-t) = (1-F_Y)(1-F_Z)", pts,
                     [&spec](double t) { return cdf_v(spec, -t); },
                     [&](double t) {
                       return (1.0 - Y.cdf(t)) * (1.0 - Z.cdf(t));
                     });
      break;
    }
  }
  return rep;
}

std::vector<ShockSample> sample(const ShockModelSpec& spec, std::size_t n,
                                std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n >= 1");
  UniformStream stream(seed);
  std::vector<ShockSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = spec.dist_x.quantile(stream.at(3 * i));
    const double y = spec.dist_y.quantile(stream.at(3 * i + 1));
    const double z = spec.dist_z.quantile(stream.at(3 * i + 2));
    const double u = std::max(x, z);
    double v = 0.0;
    switch (spec.coupling) {
      case Coupling::MaxMax: v = std::max(y, z); break;
      case Coupling::MaxMin: v = std::min(y, z); break;
      case Coupling::Reflected: v = -std::min(y, z); break;
    }
    out.push_back({u, v, cdf_u(spec, u), cdf_v(spec, v)});
  }
  return out;
}

void write_scatter_csv(const std::vector<ShockSample>& samples,
                       std::ostream& os) {
  os << "u,v,cu,cv\n";
  for (const ShockSample& s : samples)
    os << format_number(s.u) << ',' << format_number(s.v) << ','
       << format_number(s.cu) << ',' << format_number(s.cv) << '\n';
}

}  // namespace casym
