#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qh {

// Dense univariate polynomial over a commutative scalar ring S.
// The zero polynomial has degree -1. Coefficient vectors are kept trimmed,
// so equality is plain vector comparison. S may itself be a Poly, which is
// how the symbolic-z and symbolic-(x,t) computations are realized.
template <class S>
class Poly {
 public:
  Poly() = default;
  Poly(int n) {
    if (n != 0) c_.push_back(S(n));
  }
  Poly(const S& s) {
    if (!(s == S(0))) c_.push_back(s);
  }
  explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly variable() {
    Poly p;
    p.c_ = {S(0), S(1)};
    return p;
  }
  static Poly constant(const S& s) { return Poly(s); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  S coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return S(0);
    return c_[i];
  }
  const std::vector<S>& coeffs() const { return c_; }

  S leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<S> r(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<S> r(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = S(0) - v;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const S& s, const Poly& p) { return Poly(s) * p; }
  friend Poly operator*(const Poly& p, const S& s) { return p * Poly(s); }

  // Division is only defined by a nonzero constant; that is all the graded
  // triangular solves need when the scalar is itself a polynomial ring.
  friend Poly operator/(const Poly& a, const Poly& b) {
    if (b.degree() != 0) throw std::domain_error("polynomial division by non-constant");
    Poly r = a;
    for (auto& v : r.c_) v = v / b.c_[0];
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Horner evaluation; T must be constructible from S (e.g. T = S, or
  // T = Poly<...> when substituting one indeterminate for another).
  template <class T>
  T eval(const T& x) const {
    T r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + T(c_[i]);
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<S> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * S(static_cast<int>(i));
    return Poly(std::move(r));
  }

  Poly pow(int k) const {
    Poly r(1);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  std::string str(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == S(0)) continue;
      if (!first) os << " + ";
      os << "(" << coeff_str(c_[i]) << ")";
      if (i >= 1) os << "*" << var;
      if (i >= 2) os << "^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  template <class T>
  static std::string coeff_str(const T& v) {
    if constexpr (requires { v.str(); })
      return v.str();
    else {
      std::ostringstream os;
      os << v;
      return os.str();
    }
  }
  void trim() {
    while (!c_.empty() && c_.back() == S(0)) c_.pop_back();
  }
  std::vector<S> c_;
};

}  // namespace qh
