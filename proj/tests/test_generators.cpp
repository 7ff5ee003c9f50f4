#include <doctest.h>

#include <cmath>
#include <limits>

#include "casym/generators.hpp"

using namespace casym;

TEST_SUITE("generators") {

TEST_CASE("named generators evaluate correctly") {
  const double mu = 2.0 / 3.0;
  Generator f = marshall_f_mu(mu);
  CHECK(f(0.0) == doctest::Approx(0.0));       // value override at 0
  CHECK(f(0.5) == doctest::Approx(mu));        // flat part
  CHECK(f(mu) == doctest::Approx(mu));
  CHECK(f(0.8) == doctest::Approx(0.8));       // identity part
  CHECK(f(1.0) == doctest::Approx(1.0));
  CHECK(f.star(1.0 / 3.0) == doctest::Approx(2.0));
  CHECK(std::isinf(f.star(0.0)));              // right-limit mu > 0

  Generator g = jump_to_one();
  CHECK(g(0.0) == doctest::Approx(0.0));
  CHECK(g(0.3) == doctest::Approx(1.0));
  CHECK(g(1.0) == doctest::Approx(1.0));

  Generator tent = script_f_tent(0.5);
  CHECK(tent(0.25) == doctest::Approx(0.25));
  CHECK(tent(0.75) == doctest::Approx(0.0));
  CHECK(tent(0.0) == doctest::Approx(0.0));

  Generator roof = script_f_roof();
  CHECK(roof(0.4) == doctest::Approx(0.6));
  CHECK(roof(0.0) == doctest::Approx(0.0));   // jump at zero
  CHECK(roof.limit_at_zero() == doctest::Approx(1.0));

  CHECK(identity_generator()(0.37) == doctest::Approx(0.37));
  CHECK(identity_generator().star(0.2) == doctest::Approx(1.0));
  CHECK(zero_generator()(0.9) == doctest::Approx(0.0));
}

TEST_CASE("class validation") {
  CHECK(validate_class(marshall_f_mu(0.4), GeneratorClass::MarshallFG).passed);
  CHECK(validate_class(jump_to_one(), GeneratorClass::MarshallFG).passed);
  CHECK(validate_class(script_f_tent(0.3), GeneratorClass::ScriptF).passed);
  CHECK(validate_class(script_f_roof(), GeneratorClass::ScriptF).passed);
  CHECK(validate_class(script_f_hat(0.6), GeneratorClass::ScriptF).passed);
  CHECK(validate_class(identity_generator(), GeneratorClass::MaxminPsi).passed);

  // identity fails class F: f(1) must be 0.
  GeneratorClassReport r =
      validate_class(identity_generator(), GeneratorClass::ScriptF);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.violations.empty());

  // Concave-violating zigzag fails MarshallFG (f/x must be nonincreasing).
  Generator zig({{0.0, 0.0}, {0.5, 0.1}, {1.0, 1.0}}, std::nullopt);
  CHECK_FALSE(validate_class(zig, GeneratorClass::MarshallFG).passed);
}

TEST_CASE("phi/psi conversion round trips") {
  auto [phi_c, psi_c] = maxmin_phi_psi_for_cmu(2.0 / 3.0);
  auto [f_c, g_c] = phi_psi_to_fg(phi_c, psi_c);
  CHECK(f_c.same_knots(script_f_tent(2.0 / 3.0), 1e-15));
  auto [phi2, psi2] = fg_to_phi_psi(f_c, g_c);
  CHECK(phi2.same_knots(phi_c, 1e-14));
  CHECK(psi2.same_knots(psi_c, 1e-14));

  auto [phi_d, psi_d] = maxmin_phi_psi_for_dmu(0.5);
  auto [f_d, g_d] = phi_psi_to_fg(phi_d, psi_d);
  CHECK(f_d.same_knots(script_f_roof(), 1e-15));
  CHECK(g_d.same_knots(script_f_tent(0.5), 1e-14));

  // Identity pair maps to the zero generators.
  auto [f0, g0] = phi_psi_to_fg(identity_generator(), identity_generator());
  for (double x : {0.0, 0.25, 0.7, 1.0}) {
    CHECK(f0(x) == doctest::Approx(0.0));
    CHECK(g0(x) == doctest::Approx(0.0));
  }
}

TEST_CASE("json round trip") {
  for (const Generator& g :
       {marshall_f_mu(0.37), jump_to_one(), script_f_hat(0.71),
        random_script_f(17)}) {
    Generator back = Generator::from_json(g.to_json());
    CHECK(back.same_knots(g, 0.0));
    CHECK(back.value_at_zero() == g.value_at_zero());
    CHECK(back.value_at_one() == g.value_at_one());
    for (double x : {0.0, 0.123, 0.5, 0.987, 1.0})
      CHECK(back(x) == doctest::Approx(g(x)).epsilon(1e-15));
  }
}

TEST_CASE("random generators always validate") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Generator f = random_script_f(seed);
    CHECK(validate_class(f, GeneratorClass::ScriptF).passed);
    // class F implies f(x) <= 1 - x
    for (const auto& k : f.knots()) CHECK(k.y <= 1.0 - k.x + 1e-12);

    auto [mf, mg] = random_marshall_pair(seed);
    CHECK(validate_class(mf, GeneratorClass::MarshallFG).passed);
    CHECK(validate_class(mg, GeneratorClass::MarshallFG).passed);

    auto [sf, sg] = random_script_f_pair(seed);
    CHECK(validate_class(sf, GeneratorClass::ScriptF).passed);
    CHECK(validate_class(sg, GeneratorClass::ScriptF).passed);
  }
  // Determinism and pair independence.
  CHECK(random_script_f(9).same_knots(random_script_f(9), 0.0));
  auto [pf, pg] = random_script_f_pair(9);
  CHECK_FALSE(pf.same_knots(pg, 1e-6));
}

}  // TEST_SUITE
