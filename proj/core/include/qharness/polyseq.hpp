#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharness/polynomial.hpp"

namespace qh {

// Truncated element of the algebra of polynomial sequences. A window of L
// coordinate polynomials is stored; `validity` counts how many leading
// coordinates are exact under the truncation (operations below only ever
// read coordinates they can certify). `bandwidth` is a declared bound b
// with deg(coords[n]) <= n + b.
template <class S>
struct PolySeq {
  std::vector<Poly<S>> coords;
  int bandwidth = 0;
  int validity = 0;

  int window() const { return static_cast<int>(coords.size()); }

  const Poly<S>& at(int n) const {
    if (n < 0 || n >= window()) throw std::out_of_range("PolySeq coordinate out of window");
    return coords[n];
  }

  bool bandwidth_ok() const {
    for (int n = 0; n < validity; ++n)
      if (coords[n].degree() > n + bandwidth) return false;
    return true;
  }

  static PolySeq zero(int L) {
    PolySeq r;
    r.coords.assign(L, Poly<S>());
    r.bandwidth = 0;
    r.validity = L;
    return r;
  }
};

// Product per the defining rule: coordinate k of PQ is sum_j [Q_k]_j P_j.
// Validity of the result is the longest prefix for which every needed P_j
// is itself valid; multiplying by a right factor that lowers degree (e.g.
// a difference-type element) can therefore preserve or even extend the
// usable prefix, which the exact Neumann inversion relies on.
template <class S>
PolySeq<S> mul(const PolySeq<S>& P, const PolySeq<S>& Q) {
  const int L = std::min(P.window(), Q.window());
  PolySeq<S> R;
  R.coords.assign(L, Poly<S>());
  R.bandwidth = P.bandwidth + Q.bandwidth;
  int v = 0;
  bool valid = true;
  for (int k = 0; k < L; ++k) {
    if (k >= Q.validity) break;
    const Poly<S>& Qk = Q.coords[k];
    if (Qk.degree() >= P.window()) break;  // window exhausted
    if (Qk.degree() >= P.validity) valid = false;
    if (!valid) break;
    Poly<S> acc;
    for (int j = 0; j <= Qk.degree(); ++j) {
      S c = Qk.coeff(j);
      if (c == S(0)) continue;
      acc += Poly<S>(c) * P.coords[j];
    }
    R.coords[k] = std::move(acc);
    ++v;
    assert(R.coords[k].is_zero() || R.coords[k].degree() <= k + R.bandwidth);
  }
  R.validity = v;
  return R;
}

template <class S>
PolySeq<S> operator*(const PolySeq<S>& P, const PolySeq<S>& Q) {
  return mul(P, Q);
}

template <class S>
PolySeq<S> operator+(const PolySeq<S>& A, const PolySeq<S>& B) {
  const int L = std::min(A.window(), B.window());
  PolySeq<S> R;
  R.coords.resize(L);
  for (int k = 0; k < L; ++k) R.coords[k] = A.coords[k] + B.coords[k];
  R.bandwidth = std::max(A.bandwidth, B.bandwidth);
  R.validity = std::min(A.validity, B.validity);
  return R;
}

template <class S>
PolySeq<S> operator-(const PolySeq<S>& A, const PolySeq<S>& B) {
  const int L = std::min(A.window(), B.window());
  PolySeq<S> R;
  R.coords.resize(L);
  for (int k = 0; k < L; ++k) R.coords[k] = A.coords[k] - B.coords[k];
  R.bandwidth = std::max(A.bandwidth, B.bandwidth);
  R.validity = std::min(A.validity, B.validity);
  return R;
}

template <class S>
PolySeq<S> scale(const S& s, const PolySeq<S>& A) {
  PolySeq<S> R = A;
  for (auto& p : R.coords) p = Poly<S>(s) * p;
  return R;
}

inline int min_int(int a, int b) { return a < b ? a : b; }

// q-bracket [n]_q = 1 + q + ... + q^{n-1}, with [0]_q = 0.
template <class S>
S qbracket(int n, const S& q) {
  S r(0), p(1);
  for (int i = 0; i < n; ++i) {
    r = r + p;
    p = p * q;
  }
  return r;
}

template <class S>
S spow(const S& s, int k) {
  S r(1);
  for (int i = 0; i < k; ++i) r = r * s;
  return r;
}

// ----- special elements -----

template <class S>
PolySeq<S> seq_E(int L) {
  PolySeq<S> r = PolySeq<S>::zero(L);
  for (int n = 0; n < L; ++n) r.coords[n] = Poly<S>::variable().pow(n);
  r.bandwidth = 0;
  return r;
}

template <class S>
PolySeq<S> seq_Ea(const S& a, int L) {
  PolySeq<S> r = PolySeq<S>::zero(L);
  for (int n = 0; n < L; ++n) r.coords[n] = Poly<S>(spow(a, n));
  r.bandwidth = 0;
  return r;
}

template <class S>
PolySeq<S> seq_D(int L) {
  PolySeq<S> r = PolySeq<S>::zero(L);
  for (int n = 1; n < L; ++n) r.coords[n] = Poly<S>::variable().pow(n - 1);
  r.bandwidth = -1;
  return r;
}

template <class S>
PolySeq<S> seq_F(int L) {
  PolySeq<S> r = PolySeq<S>::zero(L);
  for (int n = 0; n < L; ++n) r.coords[n] = Poly<S>::variable().pow(n + 1);
  r.bandwidth = 1;
  return r;
}

template <class S>
PolySeq<S> seq_Dq(const S& q, int L) {
  PolySeq<S> r = PolySeq<S>::zero(L);
  for (int n = 1; n < L; ++n)
    r.coords[n] = Poly<S>(qbracket(n, q)) * Poly<S>::variable().pow(n - 1);
  r.bandwidth = -1;
  return r;
}

template <class S>
PolySeq<S> seq_D1(int L) {
  return seq_Dq(S(1), L);
}

// W elements: identity plus a degree-lowering perturbation with coordinate n
// equal to beta*[n]^2 x^{n-1} (W1), beta*[n][n-1] x^{n-1} (W2), q*that (W3),
// beta*[n+1][n] x^{n-1} (W4).
template <class S>
PolySeq<S> seq_W_perturbation(int which, const S& beta, const S& q, int L) {
  PolySeq<S> r = PolySeq<S>::zero(L);
  for (int n = 1; n < L; ++n) {
    S c;
    switch (which) {
      case 1: c = beta * qbracket(n, q) * qbracket(n, q); break;
      case 2: c = beta * qbracket(n, q) * qbracket(n - 1, q); break;
      case 3: c = q * beta * qbracket(n, q) * qbracket(n - 1, q); break;
      case 4: c = beta * qbracket(n + 1, q) * qbracket(n, q); break;
      default: throw std::invalid_argument("W index");
    }
    r.coords[n] = Poly<S>(c) * Poly<S>::variable().pow(n - 1);
  }
  r.bandwidth = -1;
  return r;
}

template <class S>
PolySeq<S> seq_W(int which, const S& beta, const S& q, int L) {
  PolySeq<S> r = seq_E<S>(L) + seq_W_perturbation(which, beta, q, L);
  r.bandwidth = 0;
  return r;
}

template <class S>
struct AlgebraParams {
  S alpha, beta, gamma, q;
};

template <class S>
PolySeq<S> seq_R(const AlgebraParams<S>& p, int L) {
  auto Dq = seq_Dq(p.q, L);
  auto W1 = seq_W(1, p.beta, p.q, L);
  auto W2 = seq_W(2, p.beta, p.q, L);
  return mul(W1 + scale(p.gamma, Dq), W2) + scale(p.alpha, mul(Dq, Dq));
}

template <class S>
PolySeq<S> seq_Q(const AlgebraParams<S>& p, int L) {
  auto Dq = seq_Dq(p.q, L);
  auto W2 = seq_W(2, p.beta, p.q, L);
  return scale(S(1) - p.q, mul(Dq, W2)) - scale(p.beta, mul(Dq, Dq));
}

template <class S>
PolySeq<S> seq_S(const AlgebraParams<S>& p, const S& z, int L) {
  auto R = seq_R(p, L);
  auto Q = seq_Q(p, L);
  auto D = seq_D<S>(L);
  return R + scale(z, D - Q);
}

// ----- identity checking -----

struct IdentityReport {
  bool exact = false;
  int window = 0;          // number of coordinates compared
  int first_mismatch = -1;
  std::string detail;
};

template <class S>
IdentityReport check_identity(const PolySeq<S>& lhs, const PolySeq<S>& rhs, int V) {
  IdentityReport rep;
  int v = std::min({V, lhs.validity, rhs.validity});
  if (v < V)
    throw std::invalid_argument("check_identity: requested window exceeds validity (" +
                                std::to_string(v) + " < " + std::to_string(V) + ")");
  rep.window = V;
  rep.exact = true;
  for (int k = 0; k < V; ++k) {
    if (!(lhs.coords[k] == rhs.coords[k])) {
      rep.exact = false;
      rep.first_mismatch = k;
      rep.detail = "coordinate " + std::to_string(k) + ": " + lhs.coords[k].str() +
                   " vs " + rhs.coords[k].str();
      break;
    }
  }
  return rep;
}

// ----- inversion -----

// Inverse of E + X when X lowers degree (deg X_n <= n-1): the Neumann series
// sum (-X)^k terminates coordinate-wise.
template <class S>
PolySeq<S> invert_neumann(const PolySeq<S>& X) {
  for (int n = 0; n < X.validity; ++n)
    if (X.coords[n].degree() > n - 1)
      throw std::invalid_argument("invert_neumann: coordinate degree exceeds n-1");
  const int L = X.window();
  PolySeq<S> R = seq_E<S>(L);
  PolySeq<S> term = seq_E<S>(L);
  int sign = -1;
  for (int k = 1; k <= L; ++k) {
    term = mul(term, X);
    bool all_zero = true;
    for (int n = 0; n < term.validity; ++n)
      if (!term.coords[n].is_zero()) {
        all_zero = false;
        break;
      }
    if (all_zero) break;
    R = (sign < 0) ? R - term : R + term;
    sign = -sign;
  }
  R.bandwidth = 0;
  R.validity = std::min(R.validity, X.validity);
  return R;
}

// Inverse of a graded element (deg P_n = n) via the coefficient-matrix
// representation M(X)_{n,j} = [X_n]_j. The map is an order-reversing
// isomorphism, M(PQ) = M(Q) M(P), so inverting P is a lower-triangular solve.
template <class S>
PolySeq<S> invert_graded(const PolySeq<S>& P) {
  const int V = P.validity;
  for (int n = 0; n < V; ++n)
    if (P.coords[n].degree() != n)
      throw std::invalid_argument("invert_graded: input is not graded (deg P_n != n)");
  // forward substitution for Y = M(P)^{-1}
  std::vector<std::vector<S>> Y(V, std::vector<S>(V, S(0)));
  for (int n = 0; n < V; ++n) {
    const Poly<S>& Pn = P.coords[n];
    for (int col = 0; col <= n; ++col) {
      S rhs = (n == col) ? S(1) : S(0);
      for (int j = col; j < n; ++j) rhs = rhs - Pn.coeff(j) * Y[j][col];
      Y[n][col] = rhs / Pn.coeff(n);
    }
  }
  PolySeq<S> R;
  R.coords.assign(P.window(), Poly<S>());
  for (int n = 0; n < V; ++n) {
    std::vector<S> c(n + 1, S(0));
    for (int j = 0; j <= n; ++j) c[j] = Y[n][j];
    R.coords[n] = Poly<S>(std::move(c));
  }
  R.bandwidth = 0;
  R.validity = V;
  return R;
}

// Substitutes the auxiliary indeterminate z by the generic variable x:
// each coordinate sum_i c_i(z) x^i becomes sum_i c_i(x) x^i. Substitution
// does not commute with the product, so callers must apply it exactly where
// the construction demands.
template <class S>
PolySeq<S> substitute_z(const PolySeq<Poly<S>>& X) {
  PolySeq<S> R;
  R.coords.assign(X.window(), Poly<S>());
  const Poly<S> x = Poly<S>::variable();
  for (int n = 0; n < X.validity; ++n) {
    Poly<S> acc;
    const Poly<Poly<S>>& Xn = X.coords[n];
    for (int i = 0; i <= Xn.degree(); ++i) acc += Xn.coeff(i).eval(x) * x.pow(i);
    R.coords[n] = std::move(acc);
  }
  R.validity = X.validity;
  int b = -R.window();
  for (int n = 0; n < R.validity; ++n) b = std::max(b, R.coords[n].degree() - n);
  R.bandwidth = std::max(b, 0);
  return R;
}

// Lifts a sequence over S to a sequence over Poly<S> (constant in z).
template <class S>
PolySeq<Poly<S>> lift_z(const PolySeq<S>& X) {
  PolySeq<Poly<S>> R;
  R.coords.assign(X.window(), Poly<Poly<S>>());
  for (int n = 0; n < X.window(); ++n) {
    std::vector<Poly<S>> c;
    c.reserve(X.coords[n].degree() + 1);
    for (int i = 0; i <= X.coords[n].degree(); ++i) c.emplace_back(X.coords[n].coeff(i));
    R.coords[n] = Poly<Poly<S>>(std::move(c));
  }
  R.bandwidth = X.bandwidth;
  R.validity = X.validity;
  return R;
}

}  // namespace qh
