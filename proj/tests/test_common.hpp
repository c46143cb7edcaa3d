#pragma once

#include <cstdint>
#include <vector>

#include "qharness/qh_params.hpp"
#include "qharness/rational.hpp"

namespace qhtest {

// Deterministic parameter generator for property tests.
struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 33;
  }
  // rational in (-bound, bound) with denominator up to 12
  qh::Rational rat(int bound = 3) {
    std::int64_t den = static_cast<std::int64_t>(next() % 12) + 1;
    std::int64_t num = static_cast<std::int64_t>(next() % (2 * bound * den + 1)) - bound * den;
    return qh::Rational(num) / qh::Rational(den);
  }
};

inline bool seq_is_zero(const qh::PolySeq<qh::Rational>& X, int window) {
  if (X.validity < window) return false;
  for (int k = 0; k < window; ++k)
    if (!X.coords[k].is_zero()) return false;
  return true;
}

// The tuple list used by the commutation and generator suites: q spans
// {-1, -1/2, 0, 1/3, 1/2, 1} with tau = 0 forced at q = 1.
inline std::vector<qh::QHParams<qh::Rational>> standard_tuples() {
  using R = qh::Rational;
  return {
      {R("1/4"), R("1/2"), R("1/5"), R("-1")},
      {R("-1/3"), R("1"), R("1/2"), R("-1")},
      {R("1/2"), R("-1/4"), R("1/3"), R("-1/2")},
      {R("1/5"), R("2"), R("0"), R("-1/2")},
      {R("1/4"), R("1/2"), R("1/5"), R("0")},
      {R("2"), R("1/2"), R("1/5"), R("0")},
      {R("1/4"), R("1/2"), R("1/5"), R("1/3")},
      {R("1/3"), R("1/4"), R("1/6"), R("1/2")},
      {R("-1/4"), R("3/4"), R("1/8"), R("1/2")},
      {R("1/4"), R("1/2"), R("0"), R("1")},
  };
}

}  // namespace qhtest
