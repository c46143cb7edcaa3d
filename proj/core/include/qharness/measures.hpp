#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qharness/polyseq.hpp"
#include "qharness/qseries.hpp"
#include "qharness/quadrature.hpp"

namespace qh {

// A probability measure described in closed form: an optional absolutely
// continuous part given by a density on the reference interval (-1, 1),
// pushed forward through y |-> u y + w, plus finitely many atoms (already in
// the target coordinate). density_std is a density with respect to dy and
// may blow up like 1/sqrt(1 - y^2) at the ends; integration substitutes
// y = cos(theta), which removes the singularity.
struct OrthMeasure {
  std::string family;
  bool has_density = false;
  std::function<double(double)> density_std;
  double u = 1.0, w = 0.0;
  std::vector<std::pair<double, double>> atoms;

  double integrate(const std::function<double(double)>& g, int npts = 200) const {
    double s = 0.0;
    if (has_density) {
      const double pi = 3.14159265358979323846;
      QuadRule gl = gauss_legendre(npts);
      for (int i = 0; i < npts; ++i) {
        double th = (gl.nodes[i] + 1.0) * pi / 2.0;
        double y = std::cos(th);
        s += gl.weights[i] * (pi / 2.0) * g(u * y + w) * density_std(y) * std::sin(th);
      }
    }
    for (const auto& [xa, ma] : atoms) s += ma * g(xa);
    return s;
  }

  double moment(int k, int npts = 200) const {
    return integrate([k](double y) { return std::pow(y, k); }, npts);
  }

  double total_mass(int npts = 200) const {
    return integrate([](double) { return 1.0; }, npts);
  }

  double atom_mass_at(double x0, double tol = 1e-9) const {
    double m = 0.0;
    for (const auto& [xa, ma] : atoms)
      if (std::abs(xa - x0) <= tol) m += ma;
    return m;
  }
};

inline OrthMeasure dirac_measure(double x0) {
  OrthMeasure m;
  m.family = "dirac";
  m.atoms = {{x0, 1.0}};
  return m;
}

// Probability measure on two prescribed points with prescribed mean.
inline OrthMeasure two_point_measure(double mean, double x1, double x2) {
  if (x1 == x2) throw std::invalid_argument("two_point_measure: coincident points");
  double w1 = (x2 - mean) / (x2 - x1);
  OrthMeasure m;
  m.family = "two-point";
  m.atoms = {{x1, w1}, {x2, 1.0 - w1}};
  return m;
}

// Measure with monic Jacobi data (a0, b, b, ...; s2, s2, ...): a shifted
// semicircle of radius 2 sqrt(s2) centered at b, divided by an affine
// factor, with at most one atom. Resolvent algebra gives the density
//   sqrt(4 s2 - (y-b)^2) / (2 pi (delta (y - a0) + s2)),  delta = b - a0,
// and an atom at a0 - s2/delta of mass 1 - s2/delta^2 when delta^2 > s2.
inline OrthMeasure free_meixner_measure(double a0, double b, double s2) {
  if (s2 < 0) throw std::domain_error("free_meixner_measure: negative variance");
  if (s2 == 0) return dirac_measure(a0);
  const double pi = 3.14159265358979323846;
  const double sig = std::sqrt(s2);
  const double delta = b - a0;
  OrthMeasure m;
  m.family = "free-meixner";
  m.has_density = true;
  m.u = 2.0 * sig;
  m.w = b;
  m.density_std = [=](double yr) {
    double y = 2.0 * sig * yr + b;
    double rad = 4.0 * s2 - (y - b) * (y - b);
    if (rad < 0) rad = 0;
    return 2.0 * sig * std::sqrt(rad) / (2.0 * pi * (delta * (y - a0) + s2));
  };
  if (delta * delta > s2) {
    double xa = a0 - s2 / delta;
    double ma = 1.0 - s2 / (delta * delta);
    m.atoms.push_back({xa, ma});
  }
  return m;
}

// ----- Askey-Wilson family -----

struct AWStd {
  bool has_density = false;
  std::function<double(double)> density_std;
  std::vector<std::pair<double, double>> atoms;  // reference coordinate
};

namespace detail {

inline bool nearly_real(const Cplx& v, double tol = 1e-12) {
  return std::abs(v.imag()) <= tol * (1.0 + std::abs(v.real()));
}

inline int count_in_ray(const std::vector<Cplx>& prods, double mult) {
  int c = 0;
  for (const Cplx& p : prods) {
    Cplx v = mult * p;
    if (nearly_real(v) && v.real() >= 1.0) ++c;
  }
  return c;
}

}  // namespace detail

// Orthogonality measure of the four-parameter family in the reference
// coordinate. Parameters may be complex as long as they come in conjugate
// pairs; nonreal parameters never spawn atoms. Only the generic existence
// regime is supported (no product of two parameters in [1, oo), and for
// q < 0 the same with an extra factor q); other regimes either admit no
// measure or degenerate to finitely many atoms, and both raise.
inline AWStd askey_wilson_std(Cplx a, Cplx b, Cplx c, Cplx d, double q) {
  if (std::abs(q) >= 1.0) throw std::domain_error("askey_wilson_std needs |q| < 1");
  const Cplx abcd = a * b * c * d;
  if (detail::nearly_real(abcd) && abcd.real() >= 1.0)
    throw std::domain_error("askey_wilson_std: abcd in [1, oo)");
  if (detail::nearly_real(abcd) && q * abcd.real() >= 1.0)
    throw std::domain_error("askey_wilson_std: q abcd in [1, oo)");
  std::vector<Cplx> prods = {a * b, a * c, a * d, b * c, b * d, c * d};
  int m1 = detail::count_in_ray(prods, 1.0);
  int m2 = detail::count_in_ray(prods, q);
  if (m1 != 0 || (q < 0 && m2 != 0))
    throw std::domain_error("askey_wilson_std: no orthogonality measure in this regime (m1=" +
                            std::to_string(m1) + ", m2=" + std::to_string(m2) + ")");

  const double pi = 3.14159265358979323846;
  Cplx pref = qpoch_inf(q, q) * qpoch_inf(a * b, q) * qpoch_inf(a * c, q) *
              qpoch_inf(a * d, q) * qpoch_inf(b * c, q) * qpoch_inf(b * d, q) *
              qpoch_inf(c * d, q) / qpoch_inf(abcd, q);
  const double C = pref.real() / (2.0 * pi);

  AWStd res;
  res.has_density = true;
  res.density_std = [=](double y) {
    if (y <= -1.0 || y >= 1.0) return 0.0;
    double th = std::acos(y);
    Cplx e(std::cos(th), std::sin(th));
    double num = std::norm(qpoch_inf(e * e, q));
    double den = std::norm(qpoch_inf(a * e, q) * qpoch_inf(b * e, q) * qpoch_inf(c * e, q) *
                           qpoch_inf(d * e, q));
    return C * num / (den * std::sqrt(1.0 - y * y));
  };

  // atom ladder for each real parameter outside the unit disk
  std::vector<Cplx> params = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    if (!detail::nearly_real(params[i])) continue;
    double p = params[i].real();
    if (std::abs(p) <= 1.0) continue;
    std::vector<Cplx> o;
    for (int j = 0; j < 4; ++j)
      if (j != i) o.push_back(params[j]);
    Cplx b_ = o[0], c_ = o[1], d_ = o[2];
    double rho0 = (qpoch_inf(Cplx(1.0 / (p * p)), q) * qpoch_inf(b_ * c_, q) *
                   qpoch_inf(b_ * d_, q) * qpoch_inf(c_ * d_, q) /
                   (qpoch_inf(b_ / p, q) * qpoch_inf(c_ / p, q) * qpoch_inf(d_ / p, q) *
                    qpoch_inf(p * b_ * c_ * d_, q)))
                      .real();
    std::vector<Cplx> nz;
    for (const Cplx& v : o)
      if (std::abs(v) > 1e-15) nz.push_back(v);
    int k = 0;
    while (std::abs(p) * std::pow(std::abs(q), k) > 1.0) {
      double pk = p * std::pow(q, k);
      double xk = (pk + 1.0 / pk) / 2.0;
      double rk;
      if (k == 0) {
        rk = rho0;
      } else if (nz.size() == 3) {
        Cplx num = qpoch(Cplx(p * p), Cplx(q), k) * qpoch(p * b_, Cplx(q), k) *
                   qpoch(p * c_, Cplx(q), k) * qpoch(p * d_, Cplx(q), k) *
                   (1.0 - p * p * std::pow(q, 2 * k));
        Cplx den = qpoch(Cplx(q), Cplx(q), k) * qpoch(q * p / b_, Cplx(q), k) *
                   qpoch(q * p / c_, Cplx(q), k) * qpoch(q * p / d_, Cplx(q), k) *
                   (1.0 - p * p);
        rk = rho0 * (num / den * std::pow(Cplx(q) / (p * b_ * c_ * d_), k)).real();
      } else if (nz.size() == 2) {
        Cplx u_ = nz[0], v_ = nz[1];
        Cplx num = qpoch(Cplx(p * p), Cplx(q), k) * qpoch(p * u_, Cplx(q), k) *
                   qpoch(p * v_, Cplx(q), k) * (1.0 - p * p * std::pow(q, 2 * k));
        Cplx den = qpoch(Cplx(q), Cplx(q), k) * qpoch(q * p / u_, Cplx(q), k) *
                   qpoch(q * p / v_, Cplx(q), k) * (1.0 - p * p);
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        Cplx fac = std::pow(Cplx(1.0) / (p * p * u_ * v_), k) *
                   std::pow(q, -0.5 * k * (k - 1)) * sgn;
        rk = rho0 * (num / den * fac).real();
      } else {
        throw std::runtime_error("askey_wilson_std: atom ladder needs two nonzero companions");
      }
      res.atoms.push_back({xk, rk});
      ++k;
    }
  }
  return res;
}

inline OrthMeasure affine_of_std(const AWStd& s, double u, double w, std::string family) {
  OrthMeasure m;
  m.family = std::move(family);
  m.has_density = s.has_density;
  m.density_std = s.density_std;
  m.u = u;
  m.w = w;
  for (const auto& [y, mass] : s.atoms) m.atoms.push_back({u * y + w, mass});
  return m;
}

// ----- q-lattice families (purely atomic, normalized numerically) -----

namespace detail {
inline OrthMeasure normalize_atoms(OrthMeasure m) {
  double tot = 0.0;
  for (auto& [x, mass] : m.atoms) tot += mass;
  if (tot <= 0) throw std::runtime_error("atomic measure with nonpositive total mass");
  for (auto& [x, mass] : m.atoms) mass /= tot;
  return m;
}
}  // namespace detail

// Atoms at a q^{k+1} and c q^{k+1} with masses from the q-integral of the
// weight (x/a, x/c; q)_inf / ((x, b x/c; q)_inf). Requires 0 < aq < 1,
// 0 <= bq < 1, c < 0.
inline OrthMeasure big_q_jacobi_measure(double a, double b, double c, double q,
                                        double trunc = 1e-16) {
  if (!(q > 0 && q < 1)) throw std::domain_error("big_q_jacobi_measure: q in (0,1)");
  if (!(a * q > 0 && a * q < 1) || !(b * q >= 0 && b * q < 1) || !(c < 0))
    throw std::domain_error("big_q_jacobi_measure: parameter range");
  auto W = [&](double x) {
    return (qpoch_inf(Cplx(x / a), q) * qpoch_inf(Cplx(x / c), q) /
            (qpoch_inf(Cplx(x), q) * qpoch_inf(Cplx(b * x / c), q)))
        .real();
  };
  OrthMeasure m;
  m.family = "big-q-jacobi";
  double qk = 1.0;
  for (int k = 0; k < 4000; ++k) {
    double xp = a * q * qk, xm = c * q * qk;
    double mp = a * q * (1.0 - q) * qk * W(xp);
    double mm = -c * q * (1.0 - q) * qk * W(xm);
    m.atoms.push_back({xp, mp});
    m.atoms.push_back({xm, mm});
    if (std::abs(mp) + std::abs(mm) < trunc && k > 8) break;
    qk *= q;
  }
  return detail::normalize_atoms(std::move(m));
}

// Atoms at q^k with masses proportional to (bq; q)_k / (q; q)_k (aq)^k.
inline OrthMeasure little_q_jacobi_measure(double a, double b, double q,
                                           double trunc = 1e-16) {
  if (!(q > 0 && q < 1)) throw std::domain_error("little_q_jacobi_measure: q in (0,1)");
  if (!(a * q > 0 && a * q < 1)) throw std::domain_error("little_q_jacobi_measure: aq range");
  OrthMeasure m;
  m.family = "little-q-jacobi";
  double num = 1.0, den = 1.0, pw = 1.0;
  for (int k = 0; k < 4000; ++k) {
    double mass = num / den * pw;
    m.atoms.push_back({std::pow(q, k), mass});
    if (std::abs(mass) < trunc && k > 8) break;
    num *= (1.0 - b * q * std::pow(q, k));
    den *= (1.0 - std::pow(q, k + 1));
    pw *= a * q;
  }
  return detail::normalize_atoms(std::move(m));
}

// First-kind lattice family: weight (qx, qx/a; q)_inf on {q^k} and {a q^k},
// a < 0, masses from the q-integral over [a, 1].
inline OrthMeasure asc1_measure(double a, double q, double trunc = 1e-16) {
  if (!(q > 0 && q < 1)) throw std::domain_error("asc1_measure: q in (0,1)");
  if (!(a < 0)) throw std::domain_error("asc1_measure: a < 0 required");
  auto V = [&](double x) {
    return (qpoch_inf(Cplx(q * x), q) * qpoch_inf(Cplx(q * x / a), q)).real();
  };
  OrthMeasure m;
  m.family = "asc1";
  double qk = 1.0;
  for (int k = 0; k < 4000; ++k) {
    double mp = (1.0 - q) * qk * V(qk);
    double mm = -a * (1.0 - q) * qk * V(a * qk);
    m.atoms.push_back({qk, mp});
    m.atoms.push_back({a * qk, mm});
    if (std::abs(mp) + std::abs(mm) < trunc && k > 8) break;
    qk *= q;
  }
  return detail::normalize_atoms(std::move(m));
}

// ----- monic recurrences of the closed-form families -----

// Monic three-term recurrence data of the four-parameter family:
// diag[n] = B_n/2, sub[n-1] = A_{n-1} C_n / 4 with
//   A_n = (1-ab q^n)(1-ac q^n)(1-ad q^n)(1-abcd q^{n-1})
//         / ((1-abcd q^{2n-1})(1-abcd q^{2n})),
//   C_n = (1-q^n)(1-bc q^{n-1})(1-bd q^{n-1})(1-cd q^{n-1})
//         / ((1-abcd q^{2n-2})(1-abcd q^{2n-1})),
//   B_n = a + 1/a - A_n/a - a C_n.
// The coefficients are symmetric in (a,b,c,d); a nonzero parameter is
// permuted into the leading slot so B_n is computable. All four zero gives
// the q-Hermite degeneration (diag 0, sub (1-q^n)/4).
inline JacobiMatrix<double> aw_jacobi(Cplx a, Cplx b, Cplx c, Cplx d, double q, int N) {
  JacobiMatrix<double> J;
  std::vector<Cplx> ps = {a, b, c, d};
  int lead = -1;
  for (int i = 0; i < 4; ++i)
    if (std::abs(ps[i]) > 1e-14) {
      lead = i;
      break;
    }
  if (lead < 0) {
    for (int n = 0; n < N; ++n) {
      J.diag.push_back(0.0);
      if (n >= 1) J.sub.push_back((1.0 - std::pow(q, n)) / 4.0);
    }
    return J;
  }
  std::swap(ps[0], ps[lead]);
  a = ps[0]; b = ps[1]; c = ps[2]; d = ps[3];
  Cplx abcd = a * b * c * d;
  auto A = [&](int n) -> Cplx {
    if (n < 0) return Cplx(1.0, 0.0);
    Cplx num = (1.0 - a * b * std::pow(q, n)) * (1.0 - a * c * std::pow(q, n)) *
               (1.0 - a * d * std::pow(q, n)) *
               (n == 0 ? Cplx(1.0) : (1.0 - abcd * std::pow(q, n - 1)));
    Cplx den = (n == 0 ? (1.0 - abcd) : (1.0 - abcd * std::pow(q, 2 * n - 1)) *
                                            (1.0 - abcd * std::pow(q, 2 * n)));
    return num / den;
  };
  auto C = [&](int n) -> Cplx {
    if (n <= 0) return Cplx(0.0, 0.0);
    Cplx num = (1.0 - std::pow(q, n)) * (1.0 - b * c * std::pow(q, n - 1)) *
               (1.0 - b * d * std::pow(q, n - 1)) * (1.0 - c * d * std::pow(q, n - 1));
    Cplx den = (1.0 - abcd * std::pow(q, 2 * n - 2)) * (1.0 - abcd * std::pow(q, 2 * n - 1));
    return num / den;
  };
  for (int n = 0; n < N; ++n) {
    Cplx Bn = a + 1.0 / a - A(n) / a - a * C(n);
    J.diag.push_back(Bn.real() / 2.0);
    if (n >= 1) J.sub.push_back((A(n - 1) * C(n)).real() / 4.0);
  }
  return J;
}

// diag[n] = 1 - (A_n + C_n), sub[n-1] = A_{n-1} C_n with
//   A_n = (1-a q^{n+1})(1-ab q^{n+1})(1-c q^{n+1})
//         / ((1-ab q^{2n+1})(1-ab q^{2n+2})),
//   C_n = -a c q^{n+1} (1-q^n)(1-ab c^{-1} q^n)(1-b q^n)
//         / ((1-ab q^{2n})(1-ab q^{2n+1})).
inline JacobiMatrix<double> big_q_jacobi_jacobi(double a, double b, double c, double q,
                                                int N) {
  auto A = [&](int n) {
    return (1.0 - a * std::pow(q, n + 1)) * (1.0 - a * b * std::pow(q, n + 1)) *
           (1.0 - c * std::pow(q, n + 1)) /
           ((1.0 - a * b * std::pow(q, 2 * n + 1)) * (1.0 - a * b * std::pow(q, 2 * n + 2)));
  };
  auto C = [&](int n) {
    if (n == 0) return 0.0;
    return -a * c * std::pow(q, n + 1) * (1.0 - std::pow(q, n)) *
           (1.0 - a * b / c * std::pow(q, n)) * (1.0 - b * std::pow(q, n)) /
           ((1.0 - a * b * std::pow(q, 2 * n)) * (1.0 - a * b * std::pow(q, 2 * n + 1)));
  };
  JacobiMatrix<double> J;
  for (int n = 0; n < N; ++n) {
    J.diag.push_back(1.0 - (A(n) + C(n)));
    if (n >= 1) J.sub.push_back(A(n - 1) * C(n));
  }
  return J;
}

// diag[n] = A_n + C_n, sub[n-1] = A_{n-1} C_n with
//   A_n = q^n (1-a q^{n+1})(1-ab q^{n+1}) / ((1-ab q^{2n+1})(1-ab q^{2n+2})),
//   C_n = a q^n (1-q^n)(1-b q^n) / ((1-ab q^{2n})(1-ab q^{2n+1})).
inline JacobiMatrix<double> little_q_jacobi_jacobi(double a, double b, double q, int N) {
  auto A = [&](int n) {
    return std::pow(q, n) * (1.0 - a * std::pow(q, n + 1)) * (1.0 - a * b * std::pow(q, n + 1)) /
           ((1.0 - a * b * std::pow(q, 2 * n + 1)) * (1.0 - a * b * std::pow(q, 2 * n + 2)));
  };
  auto C = [&](int n) {
    if (n == 0) return 0.0;
    return a * std::pow(q, n) * (1.0 - std::pow(q, n)) * (1.0 - b * std::pow(q, n)) /
           ((1.0 - a * b * std::pow(q, 2 * n)) * (1.0 - a * b * std::pow(q, 2 * n + 1)));
  };
  JacobiMatrix<double> J;
  for (int n = 0; n < N; ++n) {
    J.diag.push_back(A(n) + C(n));
    if (n >= 1) J.sub.push_back(A(n - 1) * C(n));
  }
  return J;
}

// diag[n] = (a+1) q^n, sub[n-1] = -a q^{n-1} (1-q^n).
template <class S>
JacobiMatrix<S> asc1_jacobi(const S& a, const S& q, int N) {
  JacobiMatrix<S> J;
  for (int n = 0; n < N; ++n) {
    J.diag.push_back((a + S(1)) * spow(q, n));
    if (n >= 1) J.sub.push_back((S(0) - a) * spow(q, n - 1) * (S(1) - spow(q, n)));
  }
  return J;
}

}  // namespace qh
