#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylcal/specfun.hpp"
#include "weylcal/testfields.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace weylcal;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

GridSpec npicture_grid(std::size_t m, double L, std::size_t N) {
  GridSpec g;
  g.axes.assign(1 + 2 * m, AxisSpec{L, N});
  return g;
}

}  // namespace

TEST_CASE("modified Bessel kernel of the second kind") {
  // reference values computed with 30-digit arbitrary-precision arithmetic
  struct Ref {
    double nu, z, k;
  };
  const Ref table[] = {
      {0.0, 5.0, 0.0036910983340425943}, {1.0, 2.0, 0.13986588181652243},
      {2.7, 3.1, 0.083986155466544825},  {0.3, 2.0, 0.11603697434811926},
      {0.0, 0.5, 0.92441907122766586},   {1.3, 0.25, 6.4583832799924698},
      {4.2, 7.0, 0.0013508726063228704},
  };
  for (const Ref& r : table) CHECK(rel(bessel_k(r.nu, r.z), r.k) < 1e-11);

  SUBCASE("even in the order") {
    CHECK(bessel_k(0.3, 2.0) == bessel_k(-0.3, 2.0));
    CHECK(bessel_k(1.7, 0.4) == bessel_k(-1.7, 0.4));
  }

  SUBCASE("normalized variant at order -1/2 reduces to a plain exponential") {
    for (double z : {1.0, 2.0, 5.0})
      CHECK(rel(bessel_k(-0.5, z, true), 0.5 * std::sqrt(kPi) * std::exp(-z)) < 1e-10);
    CHECK(rel(bessel_k(-0.5, 1.0, true), 0.32602466608664609) < 1e-11);
    CHECK(rel(bessel_k(0.5, 3.0, true), 0.029415093684638883) < 1e-11);
  }

  SUBCASE("strictly decreasing in the argument") {
    for (double nu : {0.0, 0.5, 1.3}) {
      double prev = bessel_k(nu, 0.25);
      for (double z = 0.5; z < 9.0; z += 0.25) {
        double cur = bessel_k(nu, z);
        CHECK(cur < prev);
        prev = cur;
      }
    }
  }

  SUBCASE("domain") {
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_k(0.0, -2.0), std::invalid_argument);
  }
}

TEST_CASE("radial power-law Fourier transform") {
  SUBCASE("closed form against independently integrated references, m = 1") {
    struct Ref {
      double mu, a, r, value;
    };
    // high-precision oscillatory quadrature of the defining integral
    const Ref table[] = {
        {1.0, 1.0, 0.0, 3.1415926535897932},   {1.0, 1.0, 1.0, 0.0058667443669334729},
        {1.5, 0.7, 0.9, 0.21152895139952708},  {2.0, 0.5, 0.5, 6.7156701628757907},
        {1.5, 2.0, 0.0, 0.5},                  {2.0, 1.0, 1.0, 0.021364293187114237},
    };
    for (const Ref& t : table) CHECK(rel(i_mu(t.mu, t.a, {t.r}), t.value) < 1e-12);
    CHECK(rel(i_mu(1.0, 1.0, {0.0}), kPi) < 1e-13);
    CHECK(rel(i_mu(1.0, 1.0, {1.0}), kPi * std::exp(-2.0 * kPi)) < 1e-13);
  }

  SUBCASE("closed form for m = 2 depends on eta only through its norm") {
    CHECK(rel(i_mu(1.5, 1.0, {0.0, 0.0}), 2.0 * kPi) < 1e-13);
    CHECK(rel(i_mu(1.5, 1.0, {0.6, 0.8}), 0.011733488733866946) < 1e-11);
    CHECK(rel(i_mu(1.5, 1.0, {0.6, 0.8}), i_mu(1.5, 1.0, {1.0, 0.0})) < 1e-12);
  }

  SUBCASE("direct quadrature agrees with the closed form on a parameter lattice") {
    for (double mu : {1.0, 1.5, 2.0})
      for (double a : {0.5, 1.0, 2.0})
        for (double r : {0.0, 0.5, 1.0}) {
          double closed = i_mu(mu, a, {r});
          double quad = i_mu(mu, a, {r}, IMuMode::Quadrature);
          CHECK(rel(quad, closed) < 1e-6);
        }
  }

  SUBCASE("domain") {
    CHECK_THROWS_AS(i_mu(0.5, 1.0, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(i_mu(1.0, 0.0, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(i_mu(1.0, 1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(i_mu(1.5, 1.0, {0.0, 0.0}, IMuMode::Quadrature), std::invalid_argument);
  }
}

TEST_CASE("Laplace-type cosine and sine transform identities") {
  SUBCASE("pinned parameter points") {
    ErdelyiParams p;
    p.c = 0.5;
    p.d = 2.0 * kPi;
    p.s = 1.0;
    CheckReport ec = erdelyi_identity_check(ErdelyiIdentity::ExpCos, p);
    CHECK(ec.passed());
    CHECK(ec.checks[0].value < 1e-6);
    CHECK(rel(std::stod(ec.checks[0].aux.at("rhs")), 0.028198741908809404) < 1e-10);

    ErdelyiParams q;  // c = d = s = 1
    CHECK(erdelyi_identity_check(ErdelyiIdentity::BesselSin, q).passed());
    q.nu = 1.0;
    CHECK(erdelyi_identity_check(ErdelyiIdentity::BesselCos, q).passed());
  }

  SUBCASE("random parameter draws") {
    std::mt19937_64 rng(substream_seed(20260815, "erdelyi"));
    std::uniform_real_distribution<double> uc(0.3, 2.0), ud(0.5, 3.0), us(0.3, 3.0),
        un(0.2, 1.5);
    for (int k = 0; k < 5; ++k) {
      ErdelyiParams p;
      p.c = uc(rng);
      p.d = ud(rng);
      p.s = us(rng);
      p.nu = un(rng);
      for (ErdelyiIdentity which : {ErdelyiIdentity::ExpCos, ErdelyiIdentity::BesselCos,
                                    ErdelyiIdentity::BesselSin}) {
        CheckReport r = erdelyi_identity_check(which, p);
        INFO(r.params.at("identity"), " c=", p.c, " d=", p.d, " s=", p.s, " nu=", p.nu);
        CHECK(r.passed());
      }
    }
  }

  SUBCASE("half-integer order collapses the Bessel-cosine case onto the exponential one") {
    ErdelyiParams p;
    p.c = 0.8;
    p.d = 1.7;
    p.s = 2.1;
    p.nu = 0.5;
    CheckReport r = erdelyi_identity_check(ErdelyiIdentity::BesselCos, p);
    CHECK(r.passed());
    double W = std::hypot(p.s, p.d);
    double expect = std::sqrt(0.5 * kPi / p.d) * bessel_k(0.0, p.c * W);
    CHECK(rel(std::stod(r.checks[0].aux.at("rhs")), expect) < 1e-12);
  }

  SUBCASE("guards") {
    ErdelyiParams p;
    CHECK_THROWS_AS(erdelyi_identity_check(ErdelyiIdentity::ExpCos, p, 50), NumericalGuard);
    p.c = 0.0;
    CHECK_THROWS_AS(erdelyi_identity_check(ErdelyiIdentity::ExpCos, p), std::invalid_argument);
  }
}

TEST_CASE("transform of the minimal K-type vectors") {
  GridSpec grid = npicture_grid(1, 8.0, 64);

  SUBCASE("spherical-mean vector") {
    CheckReport r = minimal_ktype_check(1, grid, MinimalKTypeKind::Plus);
    for (const CheckItem& it : r.checks) {
      INFO(it.name, " = ", it.value, " tol ", it.tolerance);
      CHECK(it.pass);
    }
    const CheckItem& cv = r.checks[1];
    CHECK(cv.name == "constant-verdict");
    CHECK(cv.aux.at("matched") == "rederived");
    CHECK(rel(std::stod(cv.aux.at("fitted-re")), kPi) < 0.01);
    CHECK(std::abs(std::stod(cv.aux.at("fitted-im"))) < 0.01);
  }

  SUBCASE("paired vectors for both coordinate directions of b") {
    for (auto b : {std::vector<cplx>{1.0, 0.0}, std::vector<cplx>{0.0, 1.0}}) {
      CheckReport r = minimal_ktype_check(1, grid, MinimalKTypeKind::MinusB, b);
      for (const CheckItem& it : r.checks) {
        INFO(r.params.at("b"), ": ", it.name, " = ", it.value, " tol ", it.tolerance);
        CHECK(it.pass);
      }
      CHECK(r.checks[1].aux.at("matched") == "printed");
      CHECK(rel(std::stod(r.checks[1].aux.at("fitted-re")), kPi) < 0.01);
    }
  }

  SUBCASE("fit normalization is scale invariant in b") {
    CheckReport r = minimal_ktype_check(1, grid, MinimalKTypeKind::MinusB, {2.0, 0.0});
    CHECK(r.passed());
    CHECK(rel(std::stod(r.checks[1].aux.at("fitted-re")), kPi) < 0.01);
  }

  SUBCASE("vanishing b gives the zero field on both sides") {
    CheckReport r = minimal_ktype_check(1, grid, MinimalKTypeKind::MinusB, {0.0, 0.0});
    CHECK(r.passed());
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].name == "zero-field");
    CHECK(r.checks[0].value == 0.0);
  }

  SUBCASE("guards") {
    CHECK_THROWS_AS(minimal_ktype_check(1, npicture_grid(1, 8.0, 8), MinimalKTypeKind::Plus),
                    std::invalid_argument);
    CHECK_THROWS_AS(minimal_ktype_check(1, grid, MinimalKTypeKind::MinusB, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(minimal_ktype_check(2, grid, MinimalKTypeKind::Plus),
                    std::invalid_argument);
  }
}
