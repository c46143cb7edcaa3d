#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qharness/polynomial.hpp"

namespace qh {

// Monic three-term recurrence data: y p_n = p_{n+1} + diag[n] p_n + sub[n-1] p_{n-1}.
// sub[k] is the entry coupling levels k and k+1 of the monic Jacobi matrix
// (whose subdiagonal is identically 1).
template <class S>
struct JacobiMatrix {
  std::vector<S> diag;
  std::vector<S> sub;

  int size() const { return static_cast<int>(diag.size()); }

  // p_0 .. p_N evaluated as polynomials.
  std::vector<Poly<S>> polynomials(int N) const {
    if (N > size()) throw std::invalid_argument("not enough recurrence coefficients");
    std::vector<Poly<S>> p;
    p.reserve(N + 1);
    p.push_back(Poly<S>(1));
    const Poly<S> y = Poly<S>::variable();
    for (int n = 0; n < N; ++n) {
      Poly<S> next = (y - Poly<S>(diag[n])) * p[n];
      if (n >= 1) next -= Poly<S>(sub[n - 1]) * p[n - 1];
      p.push_back(next);
    }
    return p;
  }

  template <class T>
  JacobiMatrix<T> cast() const {
    JacobiMatrix<T> r;
    for (auto& v : diag) r.diag.push_back(T(v));
    for (auto& v : sub) r.sub.push_back(T(v));
    return r;
  }
};

enum class FavardClass { PositiveDefinite, Truncated, Invalid };

struct FavardReport {
  FavardClass cls = FavardClass::PositiveDefinite;
  // for Truncated: smallest N0 >= 1 with sub[N0-1] = 0, the measure is
  // supported on the N0 zeros of p_{N0}; for Invalid: index of the first
  // negative sub entry.
  int index = -1;
};

template <class S>
FavardReport favard_classify(const JacobiMatrix<S>& J) {
  FavardReport rep;
  for (std::size_t k = 0; k < J.sub.size(); ++k) {
    if (J.sub[k] == S(0)) {
      rep.cls = FavardClass::Truncated;
      rep.index = static_cast<int>(k) + 1;
      return rep;
    }
    if (J.sub[k] < S(0)) {
      rep.cls = FavardClass::Invalid;
      rep.index = static_cast<int>(k);
      return rep;
    }
  }
  return rep;
}

// Moments m_k = (J^k)_{00} by exact matrix-vector iteration. Needs a matrix
// of size at least kmax/2 + 1 to be exact up to m_kmax; the caller is
// responsible for sizing.
template <class S>
std::vector<S> moments_from_jacobi(const JacobiMatrix<S>& J, int kmax) {
  const int N = J.size();
  if (N < kmax / 2 + 1)
    throw std::invalid_argument("Jacobi matrix too small for requested moments");
  std::vector<S> v(N, S(0)), nv(N, S(0));
  v[0] = S(1);
  std::vector<S> m;
  m.reserve(kmax + 1);
  m.push_back(S(1));
  for (int k = 1; k <= kmax; ++k) {
    for (int i = 0; i < N; ++i) {
      S acc = J.diag[i] * v[i];
      if (i > 0) acc = acc + v[i - 1];
      if (i + 1 < N && i < static_cast<int>(J.sub.size())) acc = acc + J.sub[i] * v[i + 1];
      nv[i] = acc;
    }
    std::swap(v, nv);
    m.push_back(v[0]);
  }
  return m;
}

}  // namespace qh
