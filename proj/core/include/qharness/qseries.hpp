#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <initializer_list>
#include <stdexcept>

namespace qh {

using Cplx = std::complex<double>;

// Finite q-shifted factorial (a; q)_k.
template <class S>
S qpoch(const S& a, const S& q, int k) {
  S r(1), aq = a;
  for (int i = 0; i < k; ++i) {
    r = r * (S(1) - aq);
    aq = aq * q;
  }
  return r;
}

// Infinite product (a; q)_inf for |q| < 1.
inline Cplx qpoch_inf(Cplx a, double q, int max_terms = 4000) {
  if (std::abs(q) >= 1.0) throw std::domain_error("qpoch_inf needs |q| < 1");
  Cplx r(1.0, 0.0);
  for (int i = 0; i < max_terms; ++i) {
    r *= (Cplx(1.0, 0.0) - a);
    a *= q;
    if (std::abs(a) < 1e-300) break;
  }
  return r;
}

inline Cplx qpoch_inf(std::initializer_list<Cplx> as, double q) {
  Cplx r(1.0, 0.0);
  for (const Cplx& a : as) r *= qpoch_inf(a, q);
  return r;
}

}  // namespace qh
