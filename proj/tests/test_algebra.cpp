#include "doctest.h"

#include "qharness/commutation.hpp"
#include "qharness/polyseq.hpp"
#include "test_common.hpp"

using namespace qh;
using R = Rational;
using qhtest::Lcg;

namespace {
constexpr int W = 12;   // checked window
constexpr int L = 14;   // build window (margin for degree-raising factors)
}  // namespace

TEST_CASE("polynomial ring basics") {
  Poly<R> x = Poly<R>::variable();
  Poly<R> p = x * x - Poly<R>(R(2)) * x + Poly<R>(R(1));
  CHECK(p.degree() == 2);
  CHECK(p.eval(R(1)) == R(0));
  CHECK(p.derivative() == Poly<R>(R(2)) * x - Poly<R>(R(2)));
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  Poly<R> q = p * p;
  CHECK(q.coeff(4) == R(1));
  CHECK(q.eval(R(1)) == R(0));
}

TEST_CASE("structural identities of the special elements") {
  Lcg rng(12345);
  for (int it = 0; it < 22; ++it) {
    R beta = rng.rat();
    R q = rng.rat(1);
    auto E = seq_E<R>(L);
    auto D = seq_D<R>(L);
    auto F = seq_F<R>(L);
    auto Dq = seq_Dq(q, L);

    CHECK(qhtest::seq_is_zero(mul(D, F) - E, W));

    // Dq annihilates E - F D
    CHECK(qhtest::seq_is_zero(mul(Dq, E - mul(F, D)), W));

    // Dq F = q F Dq + E
    CHECK(qhtest::seq_is_zero(mul(Dq, F) - scale(q, mul(F, Dq)) - E, W));

    auto W1 = seq_W(1, beta, q, L);
    auto W2 = seq_W(2, beta, q, L);
    auto W3 = seq_W(3, beta, q, L);
    auto W4 = seq_W(4, beta, q, L);

    CHECK(qhtest::seq_is_zero(mul(W1, Dq) - mul(Dq, W2), W));
    CHECK(qhtest::seq_is_zero(mul(Dq, W1) - mul(W4, Dq), W));
    CHECK(qhtest::seq_is_zero(mul(mul(Dq, Dq), W2) - mul(W4, mul(Dq, Dq)), W));
    CHECK(qhtest::seq_is_zero(W1 - W3 - scale(beta, Dq), W));
    CHECK(qhtest::seq_is_zero(mul(mul(Dq, F), W3) - E - scale(q, mul(mul(W2, F), Dq)), W));
    CHECK(qhtest::seq_is_zero(mul(W2, W3) - mul(W1, W2 - scale(beta, Dq)), W));
  }
}

TEST_CASE("inversion") {
  Lcg rng(777);
  for (int it = 0; it < 5; ++it) {
    R beta = rng.rat();
    R q = rng.rat(1);
    auto E = seq_E<R>(L);
    auto W1 = seq_W(1, beta, q, L);
    auto W1inv = seq_W1_inverse(beta, q, L);
    CHECK(qhtest::seq_is_zero(mul(W1, W1inv) - E, L));
    CHECK(qhtest::seq_is_zero(mul(W1inv, W1) - E, L));

    QHParams<R> p{rng.rat(1), rng.rat(), rng.rat(1), q};
    R t = R(1) + rng.rat(1) * rng.rat(1);
    if (t <= 0) t = R(1);
    auto B = build_B(p, t, rng.rat(1), L);
    auto Binv = invert_graded(B);
    CHECK(qhtest::seq_is_zero(mul(B, Binv) - E, L));
    CHECK(qhtest::seq_is_zero(mul(Binv, B) - E, L));
  }
  // invert_neumann rejects graded input, invert_graded rejects non-graded
  auto F = seq_F<R>(6);
  CHECK_THROWS_AS(invert_neumann(seq_E<R>(6)), std::invalid_argument);
  CHECK_THROWS_AS(invert_graded(F), std::invalid_argument);
}

TEST_CASE("symbolic auxiliary variable substitution") {
  // lifting and substituting a z-free element is the identity
  QHParams<R> p{R("1/4"), R("1/2"), R("1/5"), R("1/3")};
  auto B = build_B(p, R(1), R(0), 8);
  auto lifted = lift_z(B);
  auto back = substitute_z(lifted);
  CHECK(qhtest::seq_is_zero(back - B, 8));
}

TEST_CASE("coordinates of the basic sequences") {
  auto Dq = seq_Dq(R("1/2"), 6);
  CHECK(Dq.coords[0].is_zero());
  CHECK(Dq.coords[1] == Poly<R>(R(1)));
  CHECK(Dq.coords[2] == Poly<R>(R("3/2")) * Poly<R>::variable());
  auto D1 = seq_D1<R>(6);
  CHECK(D1.coords[3] == Poly<R>(R(3)) * Poly<R>::variable() * Poly<R>::variable());
  auto Ea = seq_Ea(R(2), 5);
  CHECK(Ea.coords[3] == Poly<R>(R(8)));
}
