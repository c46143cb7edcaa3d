#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qharness/jacobi.hpp"

namespace qh {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sums to the total mass of the measure
};

// Golub-Welsch: nodes are eigenvalues of the symmetrized Jacobi matrix,
// weights the squared first components of the eigenvectors.
inline QuadRule golub_welsch(const JacobiMatrix<double>& J, int n, double total_mass = 1.0) {
  if (n > J.size()) throw std::invalid_argument("golub_welsch: rule larger than matrix");
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    T(i, i) = J.diag[i];
    if (i + 1 < n) {
      double b = J.sub[i];
      if (b < 0) throw std::domain_error("golub_welsch: negative recurrence coefficient");
      T(i, i + 1) = T(i + 1, i) = std::sqrt(b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen solve failed");
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    r.weights[i] = v * v * total_mass;
  }
  return r;
}

// Gauss-Legendre on [-1, 1] through the Legendre monic recurrence.
inline QuadRule gauss_legendre(int n) {
  JacobiMatrix<double> J;
  J.diag.assign(n, 0.0);
  for (int k = 1; k < n; ++k) J.sub.push_back(double(k) * k / (4.0 * k * k - 1.0));
  QuadRule r = golub_welsch(J, n, 2.0);
  return r;
}

}  // namespace qh
