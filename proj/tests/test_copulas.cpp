#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "casym/copulas.hpp"

using namespace casym;

namespace {

// Max |a - b| over an interior-inclusive n x n grid.
double grid_dist(const Copula& a, const Copula& b, int n = 41) {
  double worst = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double x = static_cast<double>(i) / n;
      const double y = static_cast<double>(j) / n;
      worst = std::max(worst, std::abs(a(x, y) - b(x, y)));
    }
  return worst;
}

}  // namespace

TEST_SUITE("copulas") {

TEST_CASE("frechet bounds and product") {
  Copula m = frechet_m(), w = frechet_w(), pi = product();
  CHECK(m(0.3, 0.7) == doctest::Approx(0.3));
  CHECK(w(0.3, 0.7) == doctest::Approx(0.0));
  CHECK(w(0.6, 0.7) == doctest::Approx(0.3));
  CHECK(pi(0.3, 0.7) == doctest::Approx(0.21));
  // Ordering W <= Pi <= M everywhere on a grid, boundaries exact.
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double x = i / 20.0, y = j / 20.0;
      CHECK(w(x, y) <= pi(x, y) + 1e-15);
      CHECK(pi(x, y) <= m(x, y) + 1e-15);
    }
  CHECK(m(0.42, 1.0) == doctest::Approx(0.42));
  CHECK(m(1.0, 0.42) == doctest::Approx(0.42));
  CHECK(m(0.0, 0.9) == doctest::Approx(0.0));
}

TEST_CASE("closed-form family spot values") {
  const double mu = 2.0 / 3.0;
  Copula c = cmu(mu);
  CHECK(c(4.0 / 9.0, 2.0 / 3.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(c(2.0 / 3.0, 4.0 / 9.0) == doctest::Approx(8.0 / 27.0).epsilon(1e-14));
  CHECK(c(0.5, 0.9) == doctest::Approx(0.5));      // x <= mu*y branch
  CHECK(c(0.9, 0.5) == doctest::Approx(0.45));     // product branch

  // D_mu is the survival copula of the transpose of C_mu.
  Copula d = dmu(mu);
  Copula ref = survival(transpose(c));
  CHECK(grid_dist(d, ref, 50) <= 1e-14);

  const double s2 = std::sqrt(2.0);
  Copula e = elammu(s2 / 2.0, 1.0);
  CHECK(e(1.0 - s2 / 2.0, s2 / 2.0) ==
        doctest::Approx(3.0 - 2.0 * s2).epsilon(1e-12));
  CHECK(e(s2 / 2.0, 1.0 - s2 / 2.0) == doctest::Approx(0.0));

  Copula q = qab(0.4, 0.5);
  CHECK(q(0.4, 0.5) == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(q(0.5, 0.4) == doctest::Approx(2.0 * 0.4 - 0.5).epsilon(1e-13));

  Copula p = pab(0.3, 0.8);
  CHECK(p(0.3, 0.8) == doctest::Approx(0.3).epsilon(1e-13));
  // Attains the PQD asymmetry a(1-b) = 0.06 at this point.
  CHECK(p(0.3, 0.8) - p(0.8, 0.3) == doctest::Approx(0.06).epsilon(1e-12));

  CHECK(wlambda(0.0)(0.3, 0.7) == doctest::Approx(frechet_m()(0.3, 0.7)));
  CHECK(nlambda(0.0)(0.3, 0.7) == doctest::Approx(product()(0.3, 0.7)));
}

TEST_CASE("generator-built families") {
  // Marshall with f = f_mu, g jumping to 1 reproduces C_mu.
  const double mu = 0.55;
  Copula built = marshall(marshall_f_mu(mu), jump_to_one());
  CHECK(grid_dist(built, cmu(mu), 50) <= 1e-14);

  // Maxmin phi/psi form agrees with the f/g form everywhere.
  auto [phi, psi] = maxmin_phi_psi_for_cmu(0.6);
  Copula mm = maxmin_phi_psi(phi, psi);
  for (int i = 1; i < 20; ++i)
    for (int j = 1; j < 20; ++j) {
      const double x = i / 20.0, y = j / 20.0;
      CHECK(mm(x, y) ==
            doctest::Approx(maxmin_eval_phi_psi(phi, psi, x, y)).epsilon(1e-13));
    }

  // RMM with the hat generators reproduces E_{lam,mu}.
  const double lam = 0.7, emu = 0.5;
  Copula r = rmm(script_f_tent(1.0 - lam), script_f_tent(lam));
  (void)r;  // structural smoke: construction validates the generators
  CHECK_THROWS_AS(marshall(script_f_tent(0.5), jump_to_one()),
                  std::invalid_argument);
  CHECK_THROWS_AS(rmm(identity_generator(), script_f_tent(lam)),
                  std::invalid_argument);
  CHECK(elammu(lam, emu)(0.2, 0.9) >= 0.0);
}

TEST_CASE("transpose and survival transforms") {
  Copula c = cmu(0.4);
  Copula t = transpose(c);
  Copula s = survival(c);
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) {
      const double x = i / 10.0, y = j / 10.0;
      CHECK(t(x, y) == doctest::Approx(c(y, x)));
      CHECK(s(x, y) ==
            doctest::Approx(x + y - 1.0 + c(1.0 - x, 1.0 - y)).epsilon(1e-14));
    }
  // Involutions.
  CHECK(grid_dist(transpose(t), c, 20) <= 1e-15);
  CHECK(grid_dist(survival(s), c, 20) <= 1e-14);
  // Product is invariant under both.
  CHECK(grid_dist(survival(product()), product(), 20) <= 1e-14);
}

TEST_CASE("axiom checking") {
  CHECK(check_axioms(product(), 64).boundary_ok);
  CHECK(check_axioms(product(), 64).two_increasing_ok);
  CHECK(check_axioms(frechet_w(), 64).two_increasing_ok);
  CHECK(check_axioms(qab(0.4, 0.5), 256).two_increasing_ok);
  CHECK(check_axioms(elammu(std::sqrt(2.0) / 2.0, 1.0), 128).two_increasing_ok);

  // Boundary-correct field with an oscillating perturbation: fails
  // 2-increasingness.
  const Field2D bad = [](double x, double y) {
    constexpr double pi2 = 6.283185307179586;
    return x * y + 0.1 * std::sin(pi2 * x) * std::sin(pi2 * y);
  };
  AxiomReport r = check_axioms(bad, 64);
  CHECK(r.boundary_ok);
  CHECK_FALSE(r.two_increasing_ok);
  CHECK(r.worst_rectangle[4] < -1e-12);

  // Field violating the margins.
  const Field2D off = [](double x, double y) { return 0.5 * x * y; };
  CHECK_FALSE(check_axioms(off, 32).boundary_ok);
}

TEST_CASE("quadrant classification") {
  CHECK(classify_quadrant(cmu(0.5), 64).classification == QuadrantClass::PQD);
  CHECK(classify_quadrant(elammu(0.7, 0.5), 64).classification ==
        QuadrantClass::NQD);
  CHECK(classify_quadrant(product(), 64).classification == QuadrantClass::Both);
  CHECK(classify_quadrant(frechet_m(), 64).classification == QuadrantClass::PQD);
  CHECK(classify_quadrant(frechet_w(), 64).classification == QuadrantClass::NQD);
  QuadrantReport r = classify_quadrant(cmu(0.5), 64);
  CHECK(r.worst_residual >= 0.0);
}

TEST_CASE("empirical copula") {
  // Comonotone sample: empirical copula close to M.
  const int n = 200;
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n;
    pts.push_back({t, t * t});  // monotone transform, same ranks
  }
  Copula emp = empirical_copula(pts);
  Copula m = frechet_m();
  double worst = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      worst = std::max(worst, std::abs(emp(static_cast<double>(i) / n,
                                           static_cast<double>(j) / n) -
                                       m(static_cast<double>(i) / n,
                                         static_cast<double>(j) / n)));
  CHECK(worst <= 1.0 / n + 1e-12);
  CHECK(empirical_sup_distance(pts, m, 512) <= 1.0 / n + 2.0 / 512 + 1e-12);
  CHECK(emp(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(emp(0.0, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("json round trips") {
  const std::vector<Copula> cases = {
      frechet_m(), frechet_w(), product(), cmu(0.37), dmu(0.8),
      elammu(0.6, 0.4), wlambda(0.25), nlambda(0.2), pab(0.3, 0.8),
      qab(0.4, 0.5), transpose(cmu(0.3)), survival(elammu(0.5, 0.5)),
      marshall(marshall_f_mu(0.4), jump_to_one()),
      rmm(script_f_tent(0.3), script_f_tent(0.7))};
  for (const Copula& c : cases) {
    Copula back = Copula::from_json(c.to_json());
    CHECK(back.kind() == c.kind());
    CHECK(grid_dist(back, c, 23) <= 1e-15);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(cmu(0.0), std::invalid_argument);
  CHECK_THROWS_AS(cmu(1.0), std::invalid_argument);
  CHECK_THROWS_AS(nlambda(0.5), std::invalid_argument);  // above (3-sqrt5)/2
  CHECK_THROWS_AS(qab(0.4, 0.9), std::invalid_argument); // b > 2a/(a+1)
  CHECK_THROWS_AS(pab(0.5, 0.1), std::invalid_argument); // b < 2a/(a+1)
  CHECK_THROWS_AS(product()(1.5, 0.5), std::domain_error);
}

}  // TEST_SUITE
