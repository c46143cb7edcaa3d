// Acceptance harness: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qharness/commutation.hpp"
#include "qharness/generator.hpp"
#include "qharness/measures.hpp"
#include "qharness/process.hpp"
#include "qharness/quadrature.hpp"
#include "test_common.hpp"

using namespace qh;
using R = Rational;

namespace {

Poly<R> monomial(int n) {
  Poly<R> m(R(1));
  for (int i = 0; i < n; ++i) m = m * Poly<R>::variable();
  return m;
}

bool criterion1() {
  constexpr int W = 12, L = 14;
  qhtest::Lcg rng(2024);
  for (int it = 0; it < 20; ++it) {
    R beta = rng.rat();
    R q = rng.rat(1);
    auto E = seq_E<R>(L);
    auto D = seq_D<R>(L);
    auto F = seq_F<R>(L);
    auto Dq = seq_Dq(q, L);
    auto W1 = seq_W(1, beta, q, L);
    auto W2 = seq_W(2, beta, q, L);
    auto W3 = seq_W(3, beta, q, L);
    auto W4 = seq_W(4, beta, q, L);
    bool ok = qhtest::seq_is_zero(mul(D, F) - E, W) &&
              qhtest::seq_is_zero(mul(Dq, F) - scale(q, mul(F, Dq)) - E, W) &&
              qhtest::seq_is_zero(mul(W1, Dq) - mul(Dq, W2), W) &&
              qhtest::seq_is_zero(mul(Dq, W1) - mul(W4, Dq), W) &&
              qhtest::seq_is_zero(mul(mul(Dq, Dq), W2) - mul(W4, mul(Dq, Dq)), W) &&
              qhtest::seq_is_zero(W1 - W3 - scale(beta, Dq), W) &&
              qhtest::seq_is_zero(mul(mul(Dq, F), W3) - E - scale(q, mul(mul(W2, F), Dq)), W) &&
              qhtest::seq_is_zero(mul(W2, W3) - mul(W1, W2 - scale(beta, Dq)), W);
    if (!ok) return false;
  }
  return true;
}

bool criterion2() {
  constexpr int W = 12, L = 16;
  for (const auto& p : qhtest::standard_tuples()) {
    R t(2);
    PolySeq<R> H = solve_H(p, t, L);  // throws if the two routes disagree
    auto res = qcommutation_residual(H, p, t);
    if (res.validity < W || !qhtest::seq_is_zero(res, W)) return false;
    auto ann = mul(H, seq_E<R>(L) - mul(seq_F<R>(L), seq_D<R>(L)));
    if (!qhtest::seq_is_zero(ann, W)) return false;
  }
  // dual reconstruction routes agree coordinate by coordinate
  QHParams<R> p{R("1/3"), R("1/4"), R("1/6"), R("1/2")};
  auto Ha = htilde_via_B(p, R(2), R(0), L);
  auto Hb = htilde_via_series(p, R(2), L);
  return check_identity(Ha, Hb, min_int(Ha.validity, Hb.validity)).exact;
}

bool criterion3() {
  for (const auto& p : qhtest::standard_tuples()) {
    R x("4/3"), t(1);
    if (apply_generator_moments(p, x, t, monomial(0)) != R(0)) return false;
    if (apply_generator_moments(p, x, t, monomial(1)) != R(0)) return false;
    if (apply_generator_moments(p, x, t, monomial(2)) != R(1) + p.eta * x) return false;
  }
  QHParams<R> p{R("1/3"), R("1/4"), R("1/6"), R("1/2")};
  for (int n = 0; n <= 8; ++n)
    if (!martingale_residual(p, n).is_zero()) return false;
  return true;
}

bool criterion4() {
  // dual-route moments on the exact conditional-law recurrence
  for (const auto& p : qhtest::standard_tuples()) {
    const int n = 10;
    auto J = nu_jacobi(p, R("3/5"), R(2), n).cast<double>();
    if (favard_classify(nu_jacobi(p, R("3/5"), R(2), n)).cls != FavardClass::PositiveDefinite)
      continue;  // truncated laws handled below
    auto mom = moments_from_jacobi(J, 2 * n - 1);
    auto rule = golub_welsch(J, n, 1.0);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
      if (std::abs(s - mom[k]) > 1e-10 * std::max(1.0, std::abs(mom[k]))) return false;
    }
  }

  auto match = [](const OrthMeasure& m, const JacobiMatrix<double>& J, int K) {
    auto mom = moments_from_jacobi(J, K);
    if (std::abs(m.total_mass(400) - 1.0) > 1e-8) return false;
    for (int k = 0; k <= K; ++k)
      if (std::abs(m.moment(k, 400) - mom[k]) > 1e-7 * std::max(1.0, std::abs(mom[k])))
        return false;
    return true;
  };

  // free regime with and without atom
  for (const R& eta : {R("1/4"), R(2)}) {
    QHParams<R> p{eta, R("1/2"), R("1/5"), R(0)};
    auto nu = classify_nu(p, R(2), R(1));
    if (!nu.has_closed_form) return false;
    if (eta == R(2) && nu.closed.atoms.size() != 1) return false;
    if (!match(nu.closed, nu.jac.cast<double>(), 8)) return false;
  }
  // four-parameter regime, continuous case
  {
    QHParams<R> p{R("1/3"), R("1/4"), R("1/6"), R("1/2")};
    auto nu = classify_nu(p, R("1/2"), R(1));
    if (!nu.has_closed_form || !nu.closed.atoms.empty()) return false;
    if (!match(nu.closed, nu.jac.cast<double>(), 8)) return false;
  }
  // first-kind lattice boundary law
  {
    QHParams<R> p{R(1), R("-1/2"), R(0), R("1/2")};
    double sd = 0.25, eta = 1, theta = -0.5, q = 0.5;
    double alpha = (1 - q - eta * eta * sd) / (1 - q);
    OrthMeasure m = asc1_measure(-sd * eta * eta / (1 - q), q);
    auto mom = moments_from_jacobi(martingale_jacobi(p, R("1/4"), 10).cast<double>(), 8);
    for (int k = 0; k <= 8; ++k) {
      double acc = 0;
      for (auto& [w, mass] : m.atoms) acc += mass * std::pow((w - alpha) / eta, k);
      if (std::abs(acc - mom[k]) > 1e-7 * std::max(1.0, std::abs(mom[k]))) return false;
    }
  }
  // two-point boundary law
  {
    QHParams<R> p{R(1), R(-1), R(0), R("-1/2")};
    auto J = martingale_jacobi(p, R(1), 10);
    auto rep = favard_classify(J);
    if (rep.cls != FavardClass::Truncated || rep.index != 2) return false;
    auto Jd = J.cast<double>();
    Jd.diag.resize(2);
    Jd.sub.resize(1);
    auto rule = golub_welsch(Jd, 2, 1.0);
    if (std::abs(rule.nodes[0] + 1.0) > 1e-12 || std::abs(rule.nodes[1] - 1.0) > 1e-12)
      return false;
  }
  // q = -1 point mass
  {
    QHParams<R> p{R("1/4"), R("1/2"), R("1/5"), R(-1)};
    auto nu = classify_nu(p, R("1/3"), R(2));
    if (nu.closed.family != "dirac") return false;
    double want = to_double(p.theta + p.eta * (R(2) + p.tau) - R("1/3"));
    if (std::abs(nu.closed.atoms[0].first - want) > 1e-14) return false;
  }
  return true;
}

bool criterion5() {
  int done = 0;
  for (const auto& p : qhtest::standard_tuples()) {
    if (p.q == R(1)) continue;
    if (done == 5) break;
    ++done;
    R x("3/5"), t(2);
    auto lhs = nu_jacobi(p, x, t, 12);
    R tp = p.alpha_t(t) / (R(1) - p.q);
    R sp = p.q * p.q * tp;
    R xp = p.q * x + p.gamma_t(t) + p.beta_t(t);
    auto rhs = bipoisson_transition_jacobi(p.eta, p.theta_tilde(), p.q, xp, sp, tp, 12);
    for (int i = 0; i < 12; ++i)
      if (lhs.diag[i] != rhs.diag[i]) return false;
    for (int i = 0; i < 11; ++i)
      if (lhs.sub[i] != rhs.sub[i]) return false;
  }
  return done == 5;
}

bool criterion6() {
  for (const auto& p : qhtest::standard_tuples()) {
    R t(1);
    for (const R& x : {R("-1/3"), R("1/2"), R("5/4")}) {
      for (int k = 1; k <= 4; ++k) {
        R h = R(1) / R(1 << (2 * k));
        if (finite_diff_generator(p, t, x, monomial(1), h) != R(0)) return false;
        if (finite_diff_generator(p, t, x, monomial(2), h) !=
            apply_generator_moments(p, x, t, monomial(2)))
          return false;
      }
      for (int deg : {3, 4}) {
        Poly<R> f = monomial(deg);
        R exact = apply_generator_moments(p, x, t, f);
        std::vector<double> errs;
        for (int k = 4; k <= 12; ++k)
          errs.push_back(std::abs(
              to_double(finite_diff_generator(p, t, x, f, R(1) / R(1 << k)) - exact)));
        double slope = 0;
        for (std::size_t i = 0; i + 1 < errs.size(); ++i)
          slope += std::log2(errs[i] / errs[i + 1]);
        slope /= errs.size() - 1;
        if (slope < 0.8 || slope > 1.2) return false;
      }
    }
  }
  return true;
}

bool criterion7() {
  QHParams<R> p{R("1/4"), R("1/2"), R("1/5"), R(-1)};
  R t(1);
  Poly<R> f = monomial(4) + Poly<R>(R(3)) * monomial(3) - monomial(1);
  R pivot = (p.theta + p.eta * (t + p.tau)) / R(2);
  for (const R& x : {R(0), pivot}) {
    if (generator_qm1(p, x, t, f) != apply_generator_moments(p, x, t, f)) return false;
  }
  return true;
}

bool criterion8() {
  bool caught = false;
  try {
    classify_nu(QHParams<R>{R(1), R(-2), R("1/2"), R(0)}, R(0), R(1));
  } catch (const std::domain_error&) {
    caught = true;
  }
  if (!caught) return false;
  caught = false;
  try {
    askey_wilson_std(Cplx(2), Cplx(0.6), Cplx(0.1), Cplx(0), 0.3);
  } catch (const std::domain_error&) {
    caught = true;
  }
  return caught;
}

}  // namespace

int main() {
  struct Item {
    const char* label;
    std::function<bool()> fn;
  };
  std::vector<Item> items = {
      {"1 algebra identities, 20 random parameter pairs, window 12", criterion1},
      {"2 commutation equation solved exactly on all tuples", criterion2},
      {"3 generator normalization and martingale property", criterion3},
      {"4 measure construction against closed forms", criterion4},
      {"5 conditional law identity, exact recurrence equality", criterion5},
      {"6 finite-difference consistency of the semigroup", criterion6},
      {"7 q = -1 closed form", criterion7},
      {"8 negative controls reject bad parameters", criterion8},
  };
  int failures = 0;
  for (auto& it : items) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
      ok = it.fn();
    } catch (const std::exception& e) {
      err = e.what();
    }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %s: %s (%.2fs)%s%s\n", it.label, ok ? "PASS" : "FAIL", dt,
                err.empty() ? "" : " error: ", err.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
