#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "qharness/jacobi.hpp"
#include "qharness/measures.hpp"
#include "qharness/qh_params.hpp"
#include "qharness/rational.hpp"

namespace qh {

// Orthogonal-polynomial recurrence of the transition probabilities of the
// tau = 0 process:
//   A_n = q^n x + [n](eta t + theta - eta s (1+q) q^{n-1}),
//   B_n = [n](t - s q^{n-1}) {1 + eta x q^{n-1} + eta [n-1](theta - eta s q^{n-1})}.
template <class S>
JacobiMatrix<S> bipoisson_transition_jacobi(const S& eta, const S& theta, const S& q,
                                            const S& x, const S& s, const S& t, int N) {
  JacobiMatrix<S> J;
  S qn(1);  // q^{n-1} when handling level n
  J.diag.push_back(x);
  for (int n = 1; n < N; ++n) {
    S bn = qbracket(n, q) * (t - s * qn) *
           (S(1) + eta * x * qn + eta * qbracket(n - 1, q) * (theta - eta * s * qn));
    S an = qn * q * x +
           qbracket(n, q) * (eta * t + theta - eta * s * (S(1) + q) * qn);
    J.diag.push_back(an);
    J.sub.push_back(bn);
    qn = qn * q;
  }
  return J;
}

// Same for the full process with tau:
//   A_n = q^n x + [n](eta t + theta + eta tau([n]+[n-1]) - (1+q) q^{n-1} s eta),
//   B_n = [n](t - s q^{n-1} + tau [n-1]) {1 + eta x q^{n-1}
//           + eta [n-1](theta + eta tau [n-1] - s eta q^{n-1})}.
template <class S>
JacobiMatrix<S> qh_transition_jacobi(const QHParams<S>& p, const S& x, const S& s,
                                     const S& t, int N) {
  JacobiMatrix<S> J;
  const S &eta = p.eta, &theta = p.theta, &tau = p.tau, &q = p.q;
  S qn(1);
  J.diag.push_back(x);
  for (int n = 1; n < N; ++n) {
    S br = qbracket(n, q), br1 = qbracket(n - 1, q);
    S bn = br * (t - s * qn + tau * br1) *
           (S(1) + eta * x * qn + eta * br1 * (theta + eta * tau * br1 - s * eta * qn));
    S an = qn * q * x +
           br * (eta * t + theta + eta * tau * (br + br1) - (S(1) + q) * qn * s * eta);
    J.diag.push_back(an);
    J.sub.push_back(bn);
    qn = qn * q;
  }
  return J;
}

// Recurrence of the conditional law nu_{x,t}, read off from the B_n family
// with the auxiliary variable set to x:
//   diag[n] = (gamma + beta([n+1]+[n]))[n+1] + x q^{n+1},
//   sub[n-1] = alpha (1 + eta gamma [n] + eta beta [n]^2 + x eta q^n)[n+1][n].
template <class S>
JacobiMatrix<S> nu_jacobi(const QHParams<S>& p, const S& x, const S& t, int N) {
  const S alpha = p.alpha_t(t), beta = p.beta_t(t), gamma = p.gamma_t(t);
  const S& q = p.q;
  JacobiMatrix<S> J;
  S qn(1);  // q^n
  for (int n = 0; n < N; ++n) {
    S qn1 = qn * q;
    S an = (gamma + beta * (qbracket(n + 1, q) + qbracket(n, q))) * qbracket(n + 1, q) +
           x * qn1;
    J.diag.push_back(an);
    if (n >= 1) {
      S br = qbracket(n, q);
      S cn = alpha * (S(1) + p.eta * gamma * br + p.eta * beta * br * br + x * p.eta * qn) *
             qbracket(n + 1, q) * br;
      J.sub.push_back(cn);
    }
    qn = qn1;
  }
  return J;
}

// Recurrence of the one-dimensional law at time t (the measure orthogonalizing
// the martingale polynomials).
template <class S>
JacobiMatrix<S> martingale_jacobi(const QHParams<S>& p, const S& t, int N) {
  JacobiMatrix<S> J;
  const S &eta = p.eta, &theta = p.theta, &tau = p.tau, &q = p.q;
  for (int n = 0; n < N; ++n) {
    S br = qbracket(n, q), br1 = qbracket(n - 1 >= 0 ? n - 1 : 0, q);
    if (n == 0) br1 = S(0);
    J.diag.push_back((eta * t + theta + (br + br1) * eta * tau) * br);
    if (n >= 1)
      J.sub.push_back((t + tau * br1) * (S(1) + br1 * eta * theta + br1 * br1 * eta * eta * tau) * br);
  }
  return J;
}

// Existence constraints on the parameter set: the global one,
// 1 + eta theta_tilde/(1-q) >= 0, and the short-time one,
// 1 + eta theta + eta^2 tau >= 0.
template <class S>
void require_admissible(const QHParams<S>& p) {
  if (p.q == S(1)) {
    if (!(p.tau == S(0))) throw std::domain_error("q = 1 requires tau = 0");
  } else {
    S g = S(1) + p.eta * p.theta_tilde() / (S(1) - p.q);
    if (g < S(0))
      throw std::domain_error("parameters violate 1 + eta theta~/(1-q) >= 0");
  }
  S h = S(1) + p.eta * p.theta + p.eta * p.eta * p.tau;
  if (h < S(0))
    throw std::domain_error("parameters violate 1 + eta theta + eta^2 tau >= 0");
}

// One-sided difference quotient of the semigroup at step h:
//   (int f dP_{t,t+h}(x, .) - f(x)) / h,
// computed through exact transition moments. Exact in rational mode, which
// makes the h-independence of the degree <= 2 cases an identity rather than
// a numerical accident.
template <class S>
S finite_diff_generator(const QHParams<S>& p, const S& t, const S& x, const Poly<S>& f,
                        const S& h) {
  if (!(h > S(0))) throw std::domain_error("finite_diff_generator: h > 0 required");
  int deg = f.degree() < 0 ? 0 : f.degree();
  S th = t + h;
  JacobiMatrix<S> J = qh_transition_jacobi(p, x, t, th, deg / 2 + 1);
  std::vector<S> m = moments_from_jacobi(J, deg);
  S acc(0);
  for (int n = 0; n <= deg; ++n) acc = acc + f.coeff(n) * m[n];
  return (acc - f.eval(x)) / h;
}

// ----- closed-form measures -----

// Transition probability of the tau = 0 process as an affine image of a
// four-parameter measure: with E = sqrt(1 - q + eta theta),
//   point = u y + w,  u = 2 sqrt(t) E/(1-q),  w = (theta + eta t)/(1-q),
//   a = -eta sqrt(t)/E,  b = 0,
//   c, d = sqrt(s/t) (z_s +- sqrt(z_s^2 - 1)),
//   z_s = ((1-q) x - eta s - theta)/(2 E sqrt(s)).
inline OrthMeasure bipoisson_transition_measure(double eta, double theta, double q,
                                                double x, double s, double t) {
  if (std::abs(q) >= 1.0) throw std::domain_error("closed form requires |q| < 1");
  double E2 = 1.0 - q + eta * theta;
  if (!(E2 > 0)) throw std::domain_error("closed form requires 1 - q + eta theta > 0");
  if (!(t > s && s >= 0)) throw std::domain_error("need 0 <= s < t");
  double E = std::sqrt(E2);
  double u = 2.0 * std::sqrt(t) * E / (1.0 - q);
  double w = (theta + eta * t) / (1.0 - q);
  Cplx a(-eta * std::sqrt(t) / E, 0.0), b(0.0, 0.0), c, d;
  if (s == 0) {
    c = Cplx(((1.0 - q) * x - theta) / (E * std::sqrt(t)), 0.0);
    d = Cplx(0.0, 0.0);
  } else {
    double zs = ((1.0 - q) * x - eta * s - theta) / (2.0 * E * std::sqrt(s));
    Cplx sq = std::sqrt(Cplx(zs * zs - 1.0, 0.0));
    double r = std::sqrt(s / t);
    c = r * (Cplx(zs, 0.0) + sq);
    d = r * (Cplx(zs, 0.0) - sq);
  }
  // keep a nonzero parameter in the leading slot so the atom ladder has
  // enough companions
  if (std::abs(a) < 1e-15) std::swap(a, c);
  AWStd std_m = askey_wilson_std(a, b, c, d, q);
  return affine_of_std(std_m, u, w, "askey-wilson");
}

// The full-process transition probability reduces to the tau = 0 one by a
// deterministic time change and theta shift.
inline OrthMeasure qh_transition_measure(const QHParams<double>& p, double x, double s,
                                         double t) {
  if (p.q == 1.0) throw std::domain_error("closed form requires |q| < 1");
  double tt = p.theta + p.eta * p.tau / (1.0 - p.q);
  return bipoisson_transition_measure(p.eta, tt, p.q, x, p.alpha_t(s) / (1.0 - p.q),
                                      p.alpha_t(t) / (1.0 - p.q));
}

// Support of the time t one-dimensional law: the interval [w - u, w + u] in
// the notation of bipoisson_transition_measure with s = 0, plus the atoms of
// that measure.
struct SupportInterval {
  double lo = 0, hi = 0;
};

inline SupportInterval qh_support_interval(const QHParams<double>& p, double t) {
  double tt = p.theta + p.eta * p.tau / (1.0 - p.q);
  double tp = p.alpha_t(t) / (1.0 - p.q);
  double E2 = 1.0 - p.q + p.eta * tt;
  if (!(E2 > 0)) throw std::domain_error("support interval requires 1 - q + eta theta~ > 0");
  double u = 2.0 * std::sqrt(tp) * std::sqrt(E2) / (1.0 - p.q);
  double w = (tt + p.eta * tp) / (1.0 - p.q);
  return {w - u, w + u};
}

// ----- classification of nu_{x,t} -----

struct NuMeasure {
  JacobiMatrix<Rational> jac;    // exact recurrence data
  FavardReport favard;
  bool has_closed_form = false;
  OrthMeasure closed;            // valid when has_closed_form
  std::string note;

  QuadRule quadrature(int n) const {
    JacobiMatrix<double> Jd = jac.template cast<double>();
    int m = n;
    if (favard.cls == FavardClass::Truncated) m = std::min(m, favard.index);
    return golub_welsch(Jd, m, 1.0);
  }
};

// Identifies the orthogonality measure of the exact recurrence of nu_{x,t}.
// The recurrence itself is always returned; a closed-form description is
// attached when one of the known families applies, otherwise integration
// falls back to Gaussian quadrature on the recurrence.
inline NuMeasure classify_nu(const QHParams<Rational>& p, const Rational& x,
                             const Rational& t, int N = 40) {
  require_admissible(p);
  NuMeasure res;
  res.jac = nu_jacobi(p, x, t, N);
  res.favard = favard_classify(res.jac);
  if (res.favard.cls == FavardClass::Invalid)
    throw std::domain_error("recurrence coefficient " + std::to_string(res.favard.index) +
                            " is negative: no orthogonality measure");
  if (res.favard.cls == FavardClass::Truncated) {
    int N0 = res.favard.index;
    res.has_closed_form = true;
    if (N0 == 1) {
      res.closed = dirac_measure(to_double(res.jac.diag[0]));
    } else {
      JacobiMatrix<double> Jd = res.jac.template cast<double>();
      QuadRule r = golub_welsch(Jd, N0, 1.0);
      res.closed.family = "finite-atomic";
      for (int i = 0; i < N0; ++i) res.closed.atoms.push_back({r.nodes[i], r.weights[i]});
    }
    res.note = "finitely supported (truncated recurrence)";
    return res;
  }
  if (p.q == Rational(1) || p.q <= Rational(-1) || p.q > Rational(1)) {
    res.note = "quadrature only";
    return res;
  }
  if (p.q == Rational(0)) {
    res.has_closed_form = true;
    res.closed = free_meixner_measure(to_double(res.jac.diag[0]), to_double(res.jac.diag[1]),
                                      to_double(res.jac.sub[0]));
    res.note = "free regime";
    return res;
  }
  Rational E2 = Rational(1) - p.q + p.eta * p.theta_tilde();
  if (E2 > 0) {
    try {
      QHParams<double> pd = p.template cast<double>();
      double td = to_double(t);
      double tt = pd.theta + pd.eta * pd.tau / (1.0 - pd.q);
      double tp = pd.alpha_t(td) / (1.0 - pd.q);
      double sp = pd.q * pd.q * tp;
      double xp = pd.q * to_double(x) + pd.gamma_t(td) + pd.beta_t(td);
      res.closed = bipoisson_transition_measure(pd.eta, tt, pd.q, xp, sp, tp);
      res.has_closed_form = true;
      res.note = "askey-wilson regime";
    } catch (const std::exception& e) {
      res.note = std::string("quadrature only (") + e.what() + ")";
    }
    return res;
  }
  // boundary 1 - q + eta theta~ = 0; eta != 0 here
  QHParams<double> pd = p.template cast<double>();
  double td = to_double(t), xd = to_double(x);
  double beta = pd.beta_t(td);
  double omq2 = (1.0 - pd.q) * (1.0 - pd.q);
  double denom = pd.eta * beta - (1.0 + xd * pd.eta) * omq2;
  // the lattice measure mu is the law of u Y + w for Y ~ nu, so the atoms of
  // nu sit at (y - w)/u
  try {
    if (denom != 0.0) {
      double u = -pd.q * pd.eta * omq2 / denom;
      double w = -u * (pd.eta * beta - omq2) / (pd.eta * omq2);
      double c = pd.eta * beta / denom;
      OrthMeasure mu = big_q_jacobi_measure(pd.q, 0.0, c, pd.q);
      res.closed.family = "big-q-jacobi";
      for (auto& [y, m] : mu.atoms) res.closed.atoms.push_back({(y - w) / u, m});
      res.has_closed_form = true;
      res.note = "boundary regime";
    } else {
      double u = -omq2 / beta;
      double w = 1.0 + u / pd.eta;
      OrthMeasure mu = little_q_jacobi_measure(pd.q, 0.0, pd.q);
      res.closed.family = "little-q-jacobi";
      for (auto& [y, m] : mu.atoms) res.closed.atoms.push_back({(y - w) / u, m});
      res.has_closed_form = true;
      res.note = "boundary regime";
    }
  } catch (const std::exception& e) {
    res.note = std::string("quadrature only (") + e.what() + ")";
  }
  return res;
}

}  // namespace qh
