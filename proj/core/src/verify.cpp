#include "casym/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "casym/asymmetry.hpp"
#include "casym/copulas.hpp"
#include "casym/generators.hpp"
#include "casym/numerics.hpp"
#include "casym/shockmodels.hpp"

namespace casym {

std::optional<Suite> parse_suite(const std::string& s) {
  if (s == "all") return Suite::All;
  if (s == "axioms") return Suite::Axioms;
  if (s == "asymmetry") return Suite::Asymmetry;
  if (s == "shock") return Suite::Shock;
  return std::nullopt;
}

namespace {

struct Ctx {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!detail.str().empty()) detail << "; ";
    detail << what;
  }
  void note(const std::string& s) {
    if (!detail.str().empty()) detail << "; ";
    detail << s;
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---- criterion bodies ------------------------------------------------------

void crit1_sup_c23(Ctx& c) {
  const auto r = mu_p(cmu(2.0 / 3.0), kInfiniteP);
  c.check(near(r.value, 4.0 / 27.0, 1e-6),
          "sup = " + num(r.value) + " != 4/27");
  const double wx = r.witness->first, wy = r.witness->second;
  const double d1 = std::max(std::abs(wx - 4.0 / 9.0), std::abs(wy - 2.0 / 3.0));
  const double d2 = std::max(std::abs(wx - 2.0 / 3.0), std::abs(wy - 4.0 / 9.0));
  c.check(std::min(d1, d2) <= 1e-3, "witness off target");
  c.note("sup " + num(r.value) + " at (" + num(wx) + "," + num(wy) + ")");
}

void crit2_sup_E(Ctx& c) {
  const double s2 = std::sqrt(2.0);
  const auto r = mu_p(elammu(s2 / 2.0, 1.0), kInfiniteP);
  c.check(near(r.value, 3.0 - 2.0 * s2, 1e-6),
          "sup = " + num(r.value) + " != 3-2sqrt2");
  const double wx = r.witness->first, wy = r.witness->second;
  const double d1 =
      std::max(std::abs(wx - (1.0 - s2 / 2.0)), std::abs(wy - s2 / 2.0));
  const double d2 =
      std::max(std::abs(wx - s2 / 2.0), std::abs(wy - (1.0 - s2 / 2.0)));
  c.check(std::min(d1, d2) <= 1e-3, "witness off target");
  c.note("sup " + num(r.value) + " at (" + num(wx) + "," + num(wy) + ")");
}

void crit3_mu12_c23(Ctx& c) {
  const Copula C = cmu(2.0 / 3.0);
  const double m1 = mu_p(C, 1.0).value;
  const double m2 = mu_p(C, 2.0).value;
  c.check(near(m1, 10.0 / 243.0, 1e-6), "mu1 = " + num(m1) + " != 10/243");
  c.check(near(m2, 2.0 / 81.0 * std::sqrt(74.0 / 15.0), 1e-6),
          "mu2 = " + num(m2) + " != (2/81)sqrt(74/15)");
  c.note("mu1 " + num(m1) + ", mu2 " + num(m2));
}

void crit4_mu12_E(Ctx& c) {
  const double s2 = std::sqrt(2.0);
  const Copula E = elammu(s2 / 2.0, 1.0);
  const double m1 = mu_p(E, 1.0).value;
  const double m2 = mu_p(E, 2.0).value;
  c.check(near(m1, 29.0 / 24.0 * s2 - 5.0 / 3.0, 1e-6),
          "mu1 = " + num(m1) + " != (29/24)sqrt2-5/3");
  c.check(near(m2, std::sqrt(71.0 / 45.0 * s2 - 401.0 / 180.0), 1e-6),
          "mu2 = " + num(m2) + " off closed form");
  c.note("mu1 " + num(m1) + ", mu2 " + num(m2));
}

void crit5_marshall_bound(Ctx& c) {
  c.check(near(marshall_mu_p_bound(1.0), 1.0 / 18.0, 1e-10),
          "bound(1) != 1/18");
  c.check(near(marshall_mu_p_bound(2.0), 1.0 / (6.0 * std::sqrt(6.0)), 1e-10),
          "bound(2) != 1/(6sqrt6)");
  const Copula C = cmu(2.0 / 3.0);
  for (double p : {1.0, 2.0, 5.0}) {
    const double bound = marshall_mu_p_bound(p);
    const double v = mu_p(C, p).value;
    c.check(bound >= v, "bound(p=" + num(p) + ") " + num(bound) +
                            " < mu_p " + num(v));
  }
  c.note("bound(1) " + num(marshall_mu_p_bound(1.0)));
}

void crit6_maxmin_bounds(Ctx& c) {
  const auto [m1, m2] = maxmin_mu12_bounds();
  const Field2D G = [](double x, double z) { return bound_G(x, z); };
  const double q1 = 2.0 * integrate2d(G, Region::TriangleXPlusYLe1, 1.0);
  const double q2 =
      std::sqrt(2.0 * integrate2d(G, Region::TriangleXPlusYLe1, 2.0));
  c.check(near(q1, m1, 1e-6), "mu1: quad " + num(q1) + " vs " + num(m1));
  c.check(near(q2, m2, 1e-6), "mu2: quad " + num(q2) + " vs " + num(m2));
  c.note("mu1 " + num(m1) + ", mu2 " + num(m2));
}

void crit7_rmm_bounds(Ctx& c) {
  const auto [m1, m2] = rmm_mu12_bounds();
  const Field2D H = [](double x, double y) { return bound_H(x, y); };
  const double q1 = 2.0 * integrate2d(H, Region::TriangleXLeY, 1.0);
  const double q2 = std::sqrt(2.0 * integrate2d(H, Region::TriangleXLeY, 2.0));
  c.check(near(q1, m1, 1e-6), "mu1: quad " + num(q1) + " vs " + num(m1));
  c.check(near(q2, m2, 1e-6), "mu2: quad " + num(q2) + " vs " + num(m2));
  c.note("mu1 " + num(m1) + ", mu2 " + num(m2));
}

void crit8_dstar_sups(Ctx& c) {
  const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
  const std::pair<FamilyTag, double> cases[] = {
      {FamilyTag::AllCopulas, 1.0 / 3.0}, {FamilyTag::PQD, 3.0 - 2.0 * s2},
      {FamilyTag::NQD, s5 - 2.0},         {FamilyTag::Marshall, 4.0 / 27.0},
      {FamilyTag::Maxmin, 4.0 / 27.0},    {FamilyTag::RMM, 3.0 - 2.0 * s2}};
  for (const auto& [fam, target] : cases) {
    const SupResult r = sup_on_square(
        [fam](double x, double y) { return dstar(fam, x, y); });
    c.check(near(r.value, target, 1e-7),
            to_string(fam) + ": sup " + num(r.value) + " vs " + num(target));
  }
  c.note("all six family suprema match");
}

void crit9_witnesses(Ctx& c) {
  const FamilyTag fams[] = {FamilyTag::AllCopulas, FamilyTag::PQD,
                            FamilyTag::NQD,        FamilyTag::Marshall,
                            FamilyTag::Maxmin,     FamilyTag::RMM};
  double worst = 0.0;
  std::string where;
  for (FamilyTag fam : fams)
    for (int i = 1; i <= 101; ++i)
      for (int j = 1; j <= 101; ++j) {
        if (i == j) continue;
        const double x = i / 102.0, y = j / 102.0;
        const Copula w = attainment_witness(fam, x, y);
        const double r = std::abs(std::abs(w(x, y) - w(y, x)) -
                                  dstar(fam, x, y));
        if (r > worst) {
          worst = r;
          where = to_string(fam) + "@(" + num(x) + "," + num(y) + ")";
        }
      }
  c.check(worst <= 1e-12, "worst residual " + num(worst) + " at " + where);
  c.note("worst witness residual " + num(worst));
}

void crit10_property_suite(Ctx& c) {
  struct Family {
    const char* name;
    std::function<Copula(std::uint64_t)> make;
    std::function<double(double, double)> bound;  // y >= x
    bool pqd;
  };
  const Family fams[] = {
      {"marshall",
       [](std::uint64_t s) {
         auto [f, g] = random_marshall_pair(s);
         return marshall(f, g);
       },
       [](double x, double y) { return bound_F(x, y); }, true},
      {"maxmin",
       [](std::uint64_t s) {
         auto [f, g] = random_script_f_pair(s);
         return maxmin(f, g);
       },
       [](double x, double y) { return bound_Ghat(x, y); }, true},
      {"rmm",
       [](std::uint64_t s) {
         auto [f, g] = random_script_f_pair(s);
         return rmm(f, g);
       },
       [](double x, double y) { return bound_H(x, y); }, false}};
  std::uint64_t base = 1000;
  for (const Family& fam : fams) {
    for (int i = 0; i < 100; ++i) {
      const Copula C = fam.make(base + i);
      const AxiomReport ax = check_axioms(C, 128);
      c.check(ax.boundary_ok && ax.two_increasing_ok,
              std::string(fam.name) + "[" + num(i) + "]: axioms fail (V = " +
                  num(ax.worst_rectangle[4]) + ")");
      const QuadrantReport q = classify_quadrant(C, 128);
      const bool quadrant_ok =
          fam.pqd ? (q.classification == QuadrantClass::PQD ||
                     q.classification == QuadrantClass::Both)
                  : (q.classification == QuadrantClass::NQD ||
                     q.classification == QuadrantClass::Both);
      c.check(quadrant_ok, std::string(fam.name) + "[" + num(i) +
                               "]: quadrant " + to_string(q.classification));
      UniformStream pts(base + 100000 + i);
      for (int k = 0; k < 100; ++k) {
        double x = pts.next(), y = pts.next();
        if (y < x) std::swap(x, y);
        const double diff = std::abs(C(x, y) - C(y, x));
        c.check(diff <= fam.bound(x, y) + 1e-12,
                std::string(fam.name) + ": dominance fails at (" + num(x) +
                    "," + num(y) + ")");
      }
      if (!c.ok) return;  // one family counterexample is enough detail
    }
    base += 1000;
  }
  c.note("300 randomized instances pass axioms, quadrant, dominance");
}

void crit11_measure_axioms(Ctx& c) {
  const double s2 = std::sqrt(2.0);
  auto [mf, mg] = random_marshall_pair(7);
  const Copula instances[] = {
      cmu(0.3),          cmu(2.0 / 3.0),      dmu(0.5),
      elammu(0.7, 0.5),  elammu(s2 / 2, 1.0), wlambda(0.3),
      nlambda(0.25),     pab(0.3, 0.8),       qab(0.4, 0.5),
      marshall(mf, mg)};
  const Tolerance qtol{1e-8, 0.0, 500000};
  int idx = 0;
  for (const Copula& C : instances) {
    for (double p : {1.0, 2.0, kInfiniteP}) {
      const Tolerance tol = std::isinf(p) ? Tolerance{1e-7, 0.0, 64} : qtol;
      const MeasureResult a = mu_p(C, p, tol);
      const MeasureResult b = mu_p(transpose(C), p, tol);
      const MeasureResult d = mu_p(survival(C), p, tol);
      const double slack = 2.0 * (a.err + b.err + d.err) + 1e-12;
      c.check(std::abs(a.value - b.value) <= slack,
              "instance " + num(idx) + " p=" + num(p) + ": transpose mismatch");
      c.check(std::abs(a.value - d.value) <= slack,
              "instance " + num(idx) + " p=" + num(p) + ": survival mismatch");
    }
    ++idx;
  }
  for (double p : {1.0, 2.0, kInfiniteP})
    c.check(mu_p(product(), p).value <= 1e-8, "mu_p(Pi) not ~0");
  c.note("10 instances x p in {1,2,inf}");
}

void crit12_shock_models(Ctx& c) {
  struct Case {
    ShockModelSpec spec;
    std::uint64_t seed;
  };
  const double s2 = std::sqrt(2.0);
  const Case cases[] = {
      {marshall_cmu_spec(0.3), 42},   {marshall_cmu_spec(2.0 / 3.0), 43},
      {marshall_cmu_spec(0.9), 44},   {maxmin_cmu_spec(0.3), 45},
      {maxmin_cmu_spec(2.0 / 3.0), 46}, {maxmin_cmu_spec(0.9), 47},
      {maxmin_dmu_spec(0.25), 48},    {maxmin_dmu_spec(0.5), 49},
      {maxmin_dmu_spec(0.75), 50},    {rmm_elammu_spec(s2 / 2.0, 1.0), 51},
      {rmm_elammu_spec(0.5, 0.5), 52}, {rmm_elammu_spec(0.8, 0.3), 53}};
  const std::size_t n = 100000;
  const double tol = 2.2 / std::sqrt(static_cast<double>(n));
  double worst = 0.0;
  for (const Case& cs : cases) {
    const ShockVerifyReport rep = verify_spec(cs.spec);
    for (const ShockCheck& chk : rep.checks)
      c.check(chk.passed, to_string(cs.spec.kind) + ": " + chk.name +
                              " (residual " + num(chk.residual) + ")");
    const auto samples = sample(cs.spec, n, cs.seed);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(n);
    for (const ShockSample& s : samples) pts.emplace_back(s.cu, s.cv);
    const double d = empirical_sup_distance(pts, cs.spec.target);
    worst = std::max(worst, d);
    c.check(d <= tol, to_string(cs.spec.kind) + ": sup distance " + num(d) +
                          " > " + num(tol));
  }
  c.note("worst empirical sup distance " + num(worst) + " (cap " + num(tol) +
         ")");
}

void crit13_structure_identities(Ctx& c) {
  const int n = 101;
  auto grid = [&](int i) { return static_cast<double>(i) / (n - 1); };
  // D_mu is the survival copula of the transposed C_mu.
  for (double mu : {0.3, 2.0 / 3.0, 0.9}) {
    const Copula D = dmu(mu);
    const Copula S = survival(transpose(cmu(mu)));
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(D(grid(i), grid(j)) -
                                         S(grid(i), grid(j))));
    c.check(worst <= 1e-12, "D_mu identity residual " + num(worst));
  }
  // Dual maxmin forms agree.
  {
    auto pairs = {maxmin_phi_psi_for_cmu(0.6), maxmin_phi_psi_for_dmu(0.35),
                  fg_to_phi_psi(random_script_f(21), random_script_f(22))};
    for (const auto& [phi, psi] : pairs) {
      auto fg = phi_psi_to_fg(phi, psi);
      const Copula C = maxmin(fg.first, fg.second);
      double worst = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          worst = std::max(
              worst, std::abs(C(grid(i), grid(j)) -
                              maxmin_eval_phi_psi(phi, psi, grid(i), grid(j))));
      c.check(worst <= 1e-12, "maxmin dual-form residual " + num(worst));
    }
  }
  // Ghat(x,y) = max{F(x,y), F(1-y,1-x)} for y >= x.
  {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double x = grid(i), y = grid(j);
        worst = std::max(worst,
                         std::abs(bound_Ghat(x, y) -
                                  std::max(bound_F(x, y),
                                           bound_F(1.0 - y, 1.0 - x))));
      }
    c.check(worst <= 1e-12, "Ghat identity residual " + num(worst));
  }
  // dstar(Maxmin) is invariant under (x,y) -> (1-y,1-x); Marshall is not.
  {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double x = grid(i), y = grid(j);
        worst = std::max(worst, std::abs(dstar(FamilyTag::Maxmin, x, y) -
                                         dstar(FamilyTag::Maxmin, 1.0 - y,
                                               1.0 - x)));
      }
    c.check(worst <= 1e-12, "maxmin reflection residual " + num(worst));
    const double m1 = dstar(FamilyTag::Marshall, 0.5, 0.6);
    const double m2 = dstar(FamilyTag::Marshall, 0.4, 0.5);
    c.check(std::abs(m1 - m2) > 1e-3,
            "marshall dstar unexpectedly reflection-invariant");
    c.note("marshall non-invariance at (0.5,0.6): " + num(m1) + " vs " +
           num(m2));
  }
}

CriterionResult run_one(int id, const std::string& name,
                        const std::function<void(Ctx&)>& body) {
  Ctx c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
  const auto t1 = std::chrono::steady_clock::now();
  return {id, name, c.ok,
          std::chrono::duration<double>(t1 - t0).count(), c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(Suite suite) {
  struct Entry {
    int id;
    Suite suite;
    const char* name;
    void (*body)(Ctx&);
  };
  const Entry entries[] = {
      {1, Suite::Asymmetry, "sup asymmetry of C_{2/3} is 4/27", crit1_sup_c23},
      {2, Suite::Asymmetry, "sup asymmetry of E_{sqrt2/2,1} is 3-2sqrt2",
       crit2_sup_E},
      {3, Suite::Asymmetry, "mu_1, mu_2 of C_{2/3} match closed forms",
       crit3_mu12_c23},
      {4, Suite::Asymmetry, "mu_1, mu_2 of E_{sqrt2/2,1} match closed forms",
       crit4_mu12_E},
      {5, Suite::Asymmetry, "Marshall mu_p bound values and dominance",
       crit5_marshall_bound},
      {6, Suite::Asymmetry, "maxmin mu_1/mu_2 bounds match quadrature of G",
       crit6_maxmin_bounds},
      {7, Suite::Asymmetry, "reflected mu_1/mu_2 bounds match quadrature of H",
       crit7_rmm_bounds},
      {8, Suite::Asymmetry, "suprema of all six dstar surfaces",
       crit8_dstar_sups},
      {9, Suite::Asymmetry, "attainment witnesses exact on 101x101 grid",
       crit9_witnesses},
      {10, Suite::Axioms, "randomized instances: axioms, quadrant, dominance",
       crit10_property_suite},
      {11, Suite::Axioms, "measure axioms under transpose and survival",
       crit11_measure_axioms},
      {12, Suite::Shock, "shock-model Monte Carlo and CDF relations",
       crit12_shock_models},
      {13, Suite::Asymmetry, "symmetry and structure identities",
       crit13_structure_identities}};
  std::vector<CriterionResult> out;
  for (const Entry& e : entries)
    if (suite == Suite::All || suite == e.suite)
      out.push_back(run_one(e.id, e.name, e.body));
  return out;
}

}  // namespace casym
