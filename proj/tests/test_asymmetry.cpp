#include <doctest.h>

#include <cmath>

#include "casym/asymmetry.hpp"

using namespace casym;

TEST_SUITE("asymmetry") {

TEST_CASE("dstar spot values") {
  const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
  CHECK(dstar(FamilyTag::AllCopulas, 1.0 / 3.0, 2.0 / 3.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(dstar(FamilyTag::PQD, s2 - 1.0, 2.0 - s2) ==
        doctest::Approx(3.0 - 2.0 * s2).epsilon(1e-12));
  CHECK(dstar(FamilyTag::NQD, (3.0 - s5) / 2.0, (s5 - 1.0) / 2.0) ==
        doctest::Approx(s5 - 2.0).epsilon(1e-12));
  CHECK(dstar(FamilyTag::Marshall, 4.0 / 9.0, 2.0 / 3.0) ==
        doctest::Approx(4.0 / 27.0).epsilon(1e-14));
  CHECK(dstar(FamilyTag::Maxmin, 5.0 / 9.0, 1.0 / 3.0) ==
        doctest::Approx(4.0 / 27.0).epsilon(1e-14));
  CHECK(dstar(FamilyTag::RMM, 1.0 - s2 / 2.0, s2 / 2.0) ==
        doctest::Approx(3.0 - 2.0 * s2).epsilon(1e-12));
}

TEST_CASE("dstar structural properties") {
  for (FamilyTag fam : {FamilyTag::AllCopulas, FamilyTag::PQD, FamilyTag::NQD,
                        FamilyTag::Marshall, FamilyTag::Maxmin, FamilyTag::RMM}) {
    // Zero on the diagonal and the square's boundary, symmetric in (x,y).
    for (double t : {0.0, 0.21, 0.58, 1.0}) {
      CHECK(dstar(fam, t, t) == doctest::Approx(0.0));
      CHECK(dstar(fam, t, 0.0) == doctest::Approx(0.0));
      CHECK(dstar(fam, 1.0, t) == doctest::Approx(0.0));
    }
    for (double x : {0.13, 0.4, 0.77})
      for (double y : {0.22, 0.61, 0.9}) {
        CHECK(dstar(fam, x, y) == doctest::Approx(dstar(fam, y, x)));
        // Family bounds never exceed the universal 1/3.
        CHECK(dstar(fam, x, y) <= 1.0 / 3.0 + 1e-15);
        // Sub-families are dominated by the PQD/NQD and universal bounds.
        CHECK(dstar(fam, x, y) <=
              dstar(FamilyTag::AllCopulas, x, y) + 1e-15);
      }
  }
  CHECK_THROWS_AS(dstar(FamilyTag::PQD, -0.1, 0.5), std::domain_error);
}

TEST_CASE("bound functions") {
  CHECK(bound_F(4.0 / 9.0, 2.0 / 3.0) == doctest::Approx(4.0 / 27.0));
  CHECK(bound_H(2.0 / 9.0, 2.0 / 3.0) == doctest::Approx(4.0 / 27.0));
  CHECK(bound_Ghat(0.2, 0.5) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(bound_G(0.2, 0.5) == doctest::Approx(0.1).epsilon(1e-14));
  // G-hat is the pointwise max of F and its reflection.
  for (double x : {0.1, 0.3, 0.45})
    for (double y : {0.5, 0.7, 0.92}) {
      if (y < x) continue;
      CHECK(bound_Ghat(x, y) ==
            doctest::Approx(std::max(bound_F(x, y), bound_F(1.0 - y, 1.0 - x)))
                .epsilon(1e-13));
      // F and H coincide with the family dstar on y >= x.
      CHECK(bound_F(x, y) == doctest::Approx(dstar(FamilyTag::Marshall, x, y)));
      CHECK(bound_H(x, y) == doctest::Approx(dstar(FamilyTag::RMM, x, y)));
    }
  CHECK_THROWS_AS(bound_F(0.7, 0.2), std::domain_error);
  CHECK_THROWS_AS(bound_G(0.7, 0.7), std::domain_error);
}

TEST_CASE("mu_p closed forms and quadrature") {
  // Symmetric copulas have measure zero.
  MeasureResult r = mu_p(product(), 1.0);
  CHECK(r.value <= 1e-8);
  r = mu_p(frechet_m(), 2.0);
  CHECK(r.value <= 1e-8);

  CHECK(mu_p_c23_closed(1.0) == doctest::Approx(10.0 / 243.0).epsilon(1e-13));
  CHECK(mu_p_c23_closed(2.0) ==
        doctest::Approx(2.0 / 81.0 * std::sqrt(74.0 / 15.0)).epsilon(1e-13));
  CHECK(mu_p_c23_closed(3.0) == doctest::Approx(0.0643741073124795).epsilon(1e-12));
  CHECK(mu_p_c23_closed(5.0) == doctest::Approx(0.0775187558605217).epsilon(1e-12));

  const double s2 = std::sqrt(2.0);
  CHECK(mu_p_E_closed(1.0) ==
        doctest::Approx(29.0 / 24.0 * s2 - 5.0 / 3.0).epsilon(1e-13));
  CHECK(mu_p_E_closed(2.0) ==
        doctest::Approx(std::sqrt(71.0 / 45.0 * s2 - 401.0 / 180.0))
            .epsilon(1e-12));

  CHECK(marshall_mu_p_bound(1.0) == doctest::Approx(1.0 / 18.0).epsilon(1e-13));
  CHECK(marshall_mu_p_bound(2.0) ==
        doctest::Approx(1.0 / (6.0 * std::sqrt(6.0))).epsilon(1e-13));
  CHECK(marshall_mu_p_bound(5.0) ==
        doctest::Approx(0.0889160680370619).epsilon(1e-12));

  // Quadrature agrees with the closed forms on the two extremal examples.
  r = mu_p(cmu(2.0 / 3.0), 1.0);
  CHECK(r.value == doctest::Approx(10.0 / 243.0).epsilon(1e-7));
  CHECK(r.err <= 1e-6);
  r = mu_p(cmu(2.0 / 3.0), 2.0);
  CHECK(r.value == doctest::Approx(mu_p_c23_closed(2.0)).epsilon(1e-6));
  r = mu_p(elammu(s2 / 2.0, 1.0), 1.0);
  CHECK(r.value == doctest::Approx(mu_p_E_closed(1.0)).epsilon(1e-6));

  // Sup norm with witness.
  r = mu_p(cmu(2.0 / 3.0), kInfiniteP);
  CHECK(r.value == doctest::Approx(4.0 / 27.0).epsilon(1e-6));
  REQUIRE(r.witness.has_value());
  const double wx = std::min(r.witness->first, r.witness->second);
  const double wy = std::max(r.witness->first, r.witness->second);
  CHECK(wx == doctest::Approx(4.0 / 9.0).epsilon(1e-3));
  CHECK(wy == doctest::Approx(2.0 / 3.0).epsilon(1e-3));

  CHECK_THROWS_AS(mu_p(product(), 0.5), std::domain_error);
}

TEST_CASE("family bound values for mu1/mu2") {
  auto [mm1, mm2] = maxmin_mu12_bounds();
  CHECK(mm1 > 0.0);
  CHECK(mm2 > mm1);  // L2 of a [0,1/3]-valued field exceeds L1 here
  auto [rm1, rm2] = rmm_mu12_bounds();
  CHECK(rm1 == doctest::Approx(std::log(2.0) / 3.0 - 31.0 / 180.0));
  CHECK(rm1 > 0.0);
  CHECK(rm2 > 0.0);
  CHECK(rm2 > rm1);
  // The nested families cannot beat the universal sup bound 1/3.
  CHECK(mm1 < 1.0 / 3.0);
  CHECK(rm1 < 1.0 / 3.0);
}

TEST_CASE("attainment witnesses reach dstar exactly") {
  const double s2 = std::sqrt(2.0);
  struct Case {
    FamilyTag fam;
    double x, y;
  };
  const Case cases[] = {
      {FamilyTag::AllCopulas, 1.0 / 3.0, 2.0 / 3.0},
      {FamilyTag::AllCopulas, 0.15, 0.8},
      {FamilyTag::PQD, s2 - 1.0, 2.0 - s2},
      {FamilyTag::PQD, 0.3, 0.8},
      {FamilyTag::PQD, 0.4, 0.6},   // needs the interior fallback member
      {FamilyTag::PQD, 0.45, 0.55},
      {FamilyTag::NQD, 0.25, 0.55},
      {FamilyTag::NQD, 0.3, 0.85},
      {FamilyTag::Marshall, 4.0 / 9.0, 2.0 / 3.0},
      {FamilyTag::Marshall, 0.05, 0.9},
      {FamilyTag::Marshall, 0.5, 0.6},
      {FamilyTag::Maxmin, 5.0 / 9.0, 1.0 / 3.0},
      {FamilyTag::Maxmin, 0.2, 0.3},
      {FamilyTag::Maxmin, 0.7, 0.8},
      {FamilyTag::RMM, 1.0 - s2 / 2.0, s2 / 2.0},
      {FamilyTag::RMM, 0.2, 0.3},
      {FamilyTag::RMM, 0.4, 0.7},
  };
  for (const Case& c : cases) {
    CAPTURE(static_cast<int>(c.fam));
    CAPTURE(c.x);
    CAPTURE(c.y);
    Copula w = attainment_witness(c.fam, c.x, c.y);
    const double diff = std::abs(w(c.x, c.y) - w(c.y, c.x));
    CHECK(diff == doctest::Approx(dstar(c.fam, c.x, c.y)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(attainment_witness(FamilyTag::PQD, 0.5, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(attainment_witness(FamilyTag::PQD, 0.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("measure result json") {
  MeasureResult r;
  r.p = kInfiniteP;
  r.value = 0.25;
  r.err = 1e-6;
  r.witness = {0.4, 0.6};
  nlohmann::json j = r.to_json();
  CHECK(j["p"] == "inf");
  CHECK(j["value"] == doctest::Approx(0.25));
  CHECK(j["witness"][0] == doctest::Approx(0.4));
  r.p = 2.0;
  r.witness.reset();
  j = r.to_json();
  CHECK(j["p"] == doctest::Approx(2.0));
  CHECK_FALSE(j.contains("witness"));
}

TEST_CASE("family tag parsing") {
  CHECK(parse_family("all") == FamilyTag::AllCopulas);
  CHECK(parse_family("rmm") == FamilyTag::RMM);
  CHECK_FALSE(parse_family("bogus").has_value());
  CHECK(to_string(FamilyTag::Maxmin) == "maxmin");
}

}  // TEST_SUITE
