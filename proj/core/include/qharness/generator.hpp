#pragma once

#include <stdexcept>

#include "qharness/commutation.hpp"
#include "qharness/measures.hpp"
#include "qharness/process.hpp"

namespace qh {

// Synthetic division by (y - r); the remainder f(r) is discarded, so the
// caller is responsible for r being a root when exactness matters.
template <class S>
Poly<S> poly_divide_linear(const Poly<S>& f, const S& r) {
  if (f.degree() < 1) return Poly<S>();
  std::vector<S> q(f.degree(), S(0));
  S carry = f.coeff(f.degree());
  for (int i = f.degree() - 1; i >= 0; --i) {
    q[i] = carry;
    carry = f.coeff(i) + r * carry;
  }
  return Poly<S>(std::move(q));
}

// The divided-difference kernel of the generator at the point x:
//   K_f(x, y) = d/dx [(f(y) - f(x))/(y - x)]
//             = (f(y) - f(x) - f'(x)(y - x)) / (y - x)^2,
// a polynomial in y since the numerator has a double root at x.
template <class S>
Poly<S> dd_kernel(const Poly<S>& f, const S& x) {
  Poly<S> num = f - Poly<S>(f.eval(x)) -
                Poly<S>(f.derivative().eval(x)) * (Poly<S>::variable() - Poly<S>(x));
  return poly_divide_linear(poly_divide_linear(num, x), x);
}

// Generator applied to a polynomial through the moments of nu_{x,t}:
//   (1 + eta x) sum_j [K_f]_j m_j.
// Exact when S is an exact scalar type.
template <class S>
S apply_generator_moments(const QHParams<S>& p, const S& x, const S& t, const Poly<S>& f) {
  Poly<S> K = dd_kernel(f, x);
  if (K.is_zero()) return S(0);
  int kmax = K.degree();
  JacobiMatrix<S> J = nu_jacobi(p, x, t, kmax / 2 + 1);
  std::vector<S> m = moments_from_jacobi(J, kmax);
  S acc(0);
  for (int j = 0; j <= kmax; ++j) acc = acc + K.coeff(j) * m[j];
  return (S(1) + p.eta * x) * acc;
}

// Generator applied through the algebra solution: f = sum c_n y^n maps to
// sum c_n A_n evaluated at x.
template <class S>
S apply_generator_algebraic(const PolySeq<S>& A, const Poly<S>& f, const S& x) {
  if (f.degree() >= A.validity)
    throw std::invalid_argument("generator element window too small for this polynomial");
  S acc(0);
  for (int n = 0; n <= f.degree(); ++n) acc = acc + f.coeff(n) * A.coords[n].eval(x);
  return acc;
}

// Numeric evaluation against a closed-form measure. The kernel is continuous
// with K_f(x, x) = f''(x)/2, so an atom sitting exactly at x contributes the
// second-derivative term of the pointwise formula automatically.
inline double apply_generator_measure(const OrthMeasure& m, const QHParams<double>& p,
                                      double x, const Poly<double>& f, int npts = 200) {
  Poly<double> K = dd_kernel(f, x);
  double val = m.integrate([&](double y) { return K.eval(y); }, npts);
  return (1.0 + p.eta * x) * val;
}

inline double apply_generator_quadrature(const QuadRule& r, const QHParams<double>& p,
                                         double x, const Poly<double>& f) {
  Poly<double> K = dd_kernel(f, x);
  double val = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) val += r.weights[i] * K.eval(r.nodes[i]);
  return (1.0 + p.eta * x) * val;
}

// Closed form at q = -1, where nu_{x,t} is a single atom at
// m = theta + eta(t + tau) - x:
//   m == x : (1 + eta x) g''(x)/2,
//   m != x : (1 + eta x) [(g(m) - g(x))/(m - x) - g'(x)]/(m - x).
template <class S>
S generator_qm1(const QHParams<S>& p, const S& x, const S& t, const Poly<S>& g) {
  if (!(p.q == S(0) - S(1))) throw std::domain_error("closed form requires q = -1");
  S m = p.theta + p.eta * (t + p.tau) - x;
  S pre = S(1) + p.eta * x;
  if (m == x) {
    return pre * g.derivative().derivative().eval(x) / S(2);
  }
  S d = m - x;
  return pre * ((g.eval(m) - g.eval(x)) / d - g.derivative().eval(x)) / d;
}

// Residual of the martingale property for the n-th martingale polynomial,
// with both the space variable and time kept symbolic: the generator applied
// to P_n(.; t) plus the time derivative of P_n must vanish identically.
inline Poly<Poly<Rational>> martingale_residual(const QHParams<Rational>& p, int n,
                                                int window = 0) {
  using S = Poly<Rational>;
  int L = window > 0 ? window : n + 3;
  QHParams<S> ps = p.cast<S>();
  S tv = S::variable();
  JacobiMatrix<S> J = martingale_jacobi(ps, tv, n + 1);
  std::vector<Poly<S>> polys = J.polynomials(n);
  PolySeq<S> H = solve_H(ps, tv, L);
  PolySeq<S> A = generator_element(H);
  const Poly<S>& Pn = polys[n];
  Poly<S> acc;
  const Poly<S> xv = Poly<S>::variable();
  for (int k = 0; k <= Pn.degree(); ++k) {
    if (k >= A.validity) throw std::invalid_argument("window too small");
    acc += Poly<S>(Pn.coeff(k)) * A.coords[k];
    acc += Poly<S>(Pn.coeff(k).derivative()) * xv.pow(k);
  }
  return acc;
}

}  // namespace qh
