#pragma once

#include <stdexcept>

#include "qharness/polyseq.hpp"

namespace qh {

// Parameters (eta, theta; tau; q) of the quadratic harness, sigma = 0.
// Derived time-dependent quantities used throughout:
//   alpha_t = tau + (1-q) t
//   beta_t  = eta * alpha_t
//   gamma_t = theta - eta t
// and, for q != 1, the shifted theta_tilde = theta + eta*tau/(1-q).
template <class S>
struct QHParams {
  S eta{0}, theta{0}, tau{0}, q{0};

  S alpha_t(const S& t) const { return tau + (S(1) - q) * t; }
  S beta_t(const S& t) const { return eta * alpha_t(t); }
  S gamma_t(const S& t) const { return theta - eta * t; }

  S theta_tilde() const {
    if (q == S(1)) throw std::domain_error("theta_tilde undefined at q = 1");
    return theta + eta * tau / (S(1) - q);
  }

  AlgebraParams<S> algebra_at(const S& t) const {
    return AlgebraParams<S>{alpha_t(t), beta_t(t), gamma_t(t), q};
  }

  template <class T>
  QHParams<T> cast() const {
    return QHParams<T>{T(eta), T(theta), T(tau), T(q)};
  }
};

}  // namespace qh
