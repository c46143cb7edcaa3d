#pragma once

#include <stdexcept>
#include <utility>

#include "qharness/qh_params.hpp"

namespace qh {

// The conjugating element B(z): a graded sequence of monic polynomials
// obeying the three-term recurrence
//   B_{n+1} = (y - b_n) B_n - c_n B_{n-1},
//   b_n = (gamma + beta([n+1]+[n]))[n+1] + z q^{n+1},
//   c_n = alpha (1 + eta gamma [n] + eta beta [n]^2 + z eta q^n)[n+1][n],
// with alpha, beta, gamma taken at time t and z an auxiliary scalar (pass a
// polynomial scalar to keep z symbolic).
template <class S>
PolySeq<S> build_B(const QHParams<S>& p, const S& t, const S& z, int L) {
  const S alpha = p.alpha_t(t), beta = p.beta_t(t), gamma = p.gamma_t(t);
  const S& q = p.q;
  PolySeq<S> B = PolySeq<S>::zero(L);
  const Poly<S> y = Poly<S>::variable();
  if (L > 0) B.coords[0] = Poly<S>(1);
  S qn(1);  // q^n
  for (int n = 0; n + 1 < L; ++n) {
    S qn1 = qn * q;
    S bn = (gamma + beta * (qbracket(n + 1, q) + qbracket(n, q))) * qbracket(n + 1, q) +
           z * qn1;
    Poly<S> next = (y - Poly<S>(bn)) * B.coords[n];
    if (n >= 1) {
      S cn = alpha *
             (S(1) + p.eta * gamma * qbracket(n, q) +
              p.eta * beta * qbracket(n, q) * qbracket(n, q) + z * p.eta * qn) *
             qbracket(n + 1, q) * qbracket(n, q);
      next -= Poly<S>(cn) * B.coords[n - 1];
    }
    B.coords[n + 1] = std::move(next);
    qn = qn1;
  }
  B.bandwidth = 0;
  B.validity = L;
  return B;
}

template <class S>
PolySeq<S> seq_W1_inverse(const S& beta, const S& q, int L) {
  return invert_neumann(seq_W_perturbation(1, beta, q, L));
}

// H-tilde as a conjugation of D_q W1^{-1} by B(z); the result does not
// depend on the choice of z.
template <class S>
PolySeq<S> htilde_via_B(const QHParams<S>& p, const S& t, const S& z, int L) {
  PolySeq<S> B = build_B(p, t, z, L);
  PolySeq<S> Binv = invert_graded(B);
  PolySeq<S> Dq = seq_Dq(p.q, L);
  PolySeq<S> W1inv = seq_W1_inverse(p.beta_t(t), p.q, L);
  PolySeq<S> H = mul(mul(mul(B, Dq), W1inv), Binv);
  H.bandwidth = -1;
  return H;
}

// The defect element M-tilde = ((E - F D) B(z)^{-1}) with z replaced by the
// generic variable afterwards. Only the constant coordinate of E - F D
// survives, so coordinate n is the constant term (in y) of B(z)^{-1}_n.
template <class S>
PolySeq<S> build_Mtilde(const QHParams<S>& p, const S& t, int L) {
  QHParams<Poly<S>> pz = p.template cast<Poly<S>>();
  PolySeq<Poly<S>> Bz = build_B(pz, Poly<S>(t), Poly<S>::variable(), L);
  PolySeq<Poly<S>> Binv = invert_graded(Bz);
  PolySeq<Poly<S>> M = PolySeq<Poly<S>>::zero(L);
  for (int n = 0; n < L; ++n) M.coords[n] = Poly<Poly<S>>(Binv.coords[n].coeff(0));
  M.validity = L;
  return substitute_z(M);
}

// H-tilde reconstructed from its defect: sum_k F^k M-tilde D^{k+1}.
template <class S>
PolySeq<S> htilde_via_series(const QHParams<S>& p, const S& t, int L) {
  PolySeq<S> M = build_Mtilde(p, t, L);
  PolySeq<S> F = seq_F<S>(L);
  PolySeq<S> D = seq_D<S>(L);
  PolySeq<S> term = mul(M, D);
  PolySeq<S> H = term;
  for (int k = 1; k < L; ++k) {
    term = mul(mul(F, term), D);
    H = H + term;
  }
  H.bandwidth = -1;
  H.validity = min_int(H.validity, L);
  return H;
}

// Left multiplication by E + eta F scales coordinate n by (1 + eta x).
template <class S>
PolySeq<S> premul_E_plus_etaF(const S& eta, const PolySeq<S>& X) {
  PolySeq<S> R = X;
  const Poly<S> m = Poly<S>(S(1)) + Poly<S>(eta) * Poly<S>::variable();
  for (int n = 0; n < R.validity; ++n) R.coords[n] = m * R.coords[n];
  R.bandwidth = X.bandwidth + 1;
  return R;
}

// Solves the q-commutation equation: returns the element H with
//   H T - q T H = E + theta H + eta T + tau H^2,  T = F - t H,
// constructed through B(z) and cross-checked against the series route.
template <class S>
PolySeq<S> solve_H(const QHParams<S>& p, const S& t, int L) {
  PolySeq<S> Ht = htilde_via_B(p, t, S(0), L);
  PolySeq<S> Ht2 = htilde_via_series(p, t, L);
  auto rep = check_identity(Ht, Ht2, min_int(Ht.validity, Ht2.validity));
  if (!rep.exact)
    throw std::runtime_error("H-tilde routes disagree at coordinate " +
                             std::to_string(rep.first_mismatch));
  PolySeq<S> H = premul_E_plus_etaF(p.eta, Ht);
  H.bandwidth = 0;
  return H;
}

// Residual of the q-commutation equation for a candidate H; the zero element
// on the usable window certifies the solution.
template <class S>
PolySeq<S> qcommutation_residual(const PolySeq<S>& H, const QHParams<S>& p, const S& t) {
  const int L = H.window();
  PolySeq<S> F = seq_F<S>(L);
  PolySeq<S> T = F - scale(t, H);
  T.bandwidth = 1;
  PolySeq<S> lhs = mul(H, T) - scale(p.q, mul(T, H));
  PolySeq<S> rhs = seq_E<S>(L) + scale(p.theta, H) + scale(p.eta, T) +
                   scale(p.tau, mul(H, H));
  return lhs - rhs;
}

// Closed form at q = 1, tau = 0 (quantum Bessel regime): coordinate n equals
// (1 + eta x)((x + c)^n - x^n)/c with c = theta - t eta, understood as the
// derivative sequence when c = 0.
template <class S>
PolySeq<S> quantum_bessel_H(const QHParams<S>& p, const S& t, int L) {
  if (!(p.q == S(1)) || !(p.tau == S(0)))
    throw std::domain_error("closed form requires q = 1, tau = 0");
  const S c = p.theta - t * p.eta;
  const Poly<S> x = Poly<S>::variable();
  const Poly<S> m = Poly<S>(S(1)) + Poly<S>(p.eta) * x;
  PolySeq<S> H = PolySeq<S>::zero(L);
  if (c == S(0)) {
    for (int n = 1; n < L; ++n)
      H.coords[n] = m * Poly<S>(S(n)) * x.pow(n - 1);
  } else {
    const Poly<S> xc = x + Poly<S>(c);
    for (int n = 1; n < L; ++n)
      H.coords[n] = m * ((xc.pow(n) - x.pow(n)) / Poly<S>(c));
  }
  H.bandwidth = 0;
  H.validity = L;
  return H;
}

// The generator element A = sum_j F^j H D^{j+1}; coordinate n is the image
// of the monomial x^n under the generator at time t.
template <class S>
PolySeq<S> generator_element(const PolySeq<S>& H) {
  const int L = H.window();
  PolySeq<S> F = seq_F<S>(L);
  PolySeq<S> D = seq_D<S>(L);
  PolySeq<S> term = mul(H, D);
  PolySeq<S> A = term;
  for (int j = 1; j < L; ++j) {
    term = mul(mul(F, term), D);
    A = A + term;
  }
  A.bandwidth = 0;
  A.validity = min_int(A.validity, H.validity);
  return A;
}

}  // namespace qh
