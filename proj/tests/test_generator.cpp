#include <cmath>

#include "doctest.h"

#include "qharness/generator.hpp"
#include "test_common.hpp"

using namespace qh;
using R = Rational;

namespace {

Poly<R> monomial(int n) {
  Poly<R> m(R(1));
  for (int i = 0; i < n; ++i) m = m * Poly<R>::variable();
  return m;
}

}  // namespace

TEST_CASE("divided-difference kernel") {
  R x(3);
  CHECK(dd_kernel(monomial(0), x).is_zero());
  CHECK(dd_kernel(monomial(1), x).is_zero());
  CHECK(dd_kernel(monomial(2), x) == Poly<R>(R(1)));
  // K(x, y) = y + 2x for the cube
  CHECK(dd_kernel(monomial(3), x) == Poly<R>::variable() + Poly<R>(R(6)));
  // K(x, x) = f''(x)/2
  Poly<R> f = monomial(4) - Poly<R>(R(2)) * monomial(2);
  CHECK(dd_kernel(f, x).eval(x) == f.derivative().derivative().eval(x) / R(2));
}

TEST_CASE("low-degree actions are exact on every tuple") {
  for (const auto& p : qhtest::standard_tuples()) {
    R x("4/3"), t(1);
    CHECK(apply_generator_moments(p, x, t, monomial(0)) == R(0));
    CHECK(apply_generator_moments(p, x, t, monomial(1)) == R(0));
    CHECK(apply_generator_moments(p, x, t, monomial(2)) == R(1) + p.eta * x);
    R cube = apply_generator_moments(p, x, t, monomial(3));
    R want = (R(1) + p.eta * x) *
             ((R(2) + p.q) * x + p.gamma_t(t) + p.beta_t(t));
    CHECK(cube == want);

    // same through the algebra solution
    auto A = generator_element(solve_H(p, t, 10));
    for (int n = 0; n <= 4; ++n)
      CHECK(apply_generator_algebraic(A, monomial(n), x) ==
            apply_generator_moments(p, x, t, monomial(n)));
  }
}

TEST_CASE("the process is absorbed at -1/eta") {
  QHParams<R> p{R("1/4"), R("1/2"), R("1/5"), R("1/3")};
  R x(-4), t(2);  // x = -1/eta
  for (int n = 0; n <= 5; ++n)
    CHECK(apply_generator_moments(p, x, t, monomial(n)) == R(0));
}

TEST_CASE("closed form at q = -1 against the measure route") {
  QHParams<R> p{R("1/4"), R("1/2"), R("1/5"), R(-1)};
  R t(1);
  Poly<R> f = monomial(4) + Poly<R>(R(3)) * monomial(3) - monomial(1);
  // the point mass sits at theta + eta(t + tau) - x
  R pivot = p.theta + p.eta * (t + p.tau);
  SUBCASE("atom away from x") {
    R x(0);
    CHECK(generator_qm1(p, x, t, f) == apply_generator_moments(p, x, t, f));
  }
  SUBCASE("atom at x") {
    R x = pivot / R(2);
    REQUIRE(p.theta + p.eta * (t + p.tau) - x == x);
    CHECK(generator_qm1(p, x, t, f) == apply_generator_moments(p, x, t, f));
  }
  CHECK_THROWS_AS(generator_qm1(QHParams<R>{R(1), R(1), R(0), R(0)}, R(0), t, f),
                  std::domain_error);
}

TEST_CASE("numeric route through the identified measure") {
  QHParams<R> p{R("1/3"), R("1/4"), R("1/6"), R("1/2")};
  R x("1/2"), t(1);
  auto nu = classify_nu(p, x, t);
  QHParams<double> pd = p.cast<double>();
  Poly<double> f({0.0, -1.0, 2.0, 1.0});  // y^3 + 2y^2 - y
  double exact = to_double(apply_generator_moments(p, x, t, Poly<R>(
      std::vector<R>{R(0), R(-1), R(2), R(1)})));
  double via_measure = apply_generator_measure(nu.closed, pd, 0.5, f, 400);
  double via_quad = apply_generator_quadrature(nu.quadrature(20), pd, 0.5, f);
  CHECK(std::abs(via_measure - exact) < 1e-9);
  CHECK(std::abs(via_quad - exact) < 1e-11);
}

TEST_CASE("martingale polynomials are harmonic for the generator") {
  QHParams<R> p{R("1/3"), R("1/4"), R("1/6"), R("1/2")};
  for (int n = 0; n <= 5; ++n) {
    auto res = martingale_residual(p, n);
    CHECK(res.is_zero());
  }
}

TEST_CASE("difference quotients of the semigroup") {
  QHParams<R> p{R("1/4"), R("1/2"), R("1/5"), R("1/3")};
  R t(1), x("2/3");
  SUBCASE("degree <= 2: exact for every step size") {
    for (int k = 1; k <= 4; ++k) {
      R h = R(1) / R(1 << k);
      CHECK(finite_diff_generator(p, t, x, monomial(1), h) == R(0));
      CHECK(finite_diff_generator(p, t, x, monomial(2), h) ==
            apply_generator_moments(p, x, t, monomial(2)));
    }
  }
  SUBCASE("degree 3 and 4: first order convergence") {
    for (int deg : {3, 4}) {
      Poly<R> f = monomial(deg);
      R exact = apply_generator_moments(p, x, t, f);
      std::vector<double> errs;
      for (int k = 4; k <= 12; ++k) {
        R h = R(1) / R(1 << k);
        errs.push_back(std::abs(to_double(finite_diff_generator(p, t, x, f, h) - exact)));
      }
      double slope = 0;
      for (std::size_t i = 0; i + 1 < errs.size(); ++i)
        slope += std::log2(errs[i] / errs[i + 1]);
      slope /= errs.size() - 1;
      CHECK(slope > 0.8);
      CHECK(slope < 1.2);
    }
  }
  CHECK_THROWS_AS(finite_diff_generator(p, t, x, monomial(2), R(0)), std::domain_error);
}
