#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "weyl/controls.hpp"
#include "weyl/weyl_poly.hpp"

namespace weyl {

using CMatrix = Eigen::MatrixXcd;

// Matrix of p on |0>..|N-1>, built term by term from (a^dagger)^alpha a^beta.
inline CMatrix fock_matrix(const WeylPoly& p, int N) {
  if (N <= p.degree()) throw std::invalid_argument("fock_matrix: N = " + std::to_string(N) + " must exceed degree " + std::to_string(p.degree()));
  CMatrix m = CMatrix::Zero(N, N);
  for (const auto& [mi, c] : p.terms()) {
    const std::complex<double> z = c.to_complex();
    for (int n = mi.beta; n < N; ++n) {
      const int out = n - mi.beta + mi.alpha;
      if (out >= N) break;
      // a^beta |n> = sqrt(n!/(n-beta)!) |n-beta>, then (a^dagger)^alpha raises
      double amp = 1;
      for (int k = 0; k < mi.beta; ++k) amp *= std::sqrt(static_cast<double>(n - k));
      for (int k = 1; k <= mi.alpha; ++k) amp *= std::sqrt(static_cast<double>(n - mi.beta + k));
      m(out, n) += z * amp;
    }
  }
  return m;
}

inline CMatrix fock_matrix(const SkewPoly& s, int N) { return fock_matrix(to_weyl(s), N); }

// Max deviation of M([p,q]) from [M(p), M(q)] on the leak-free leading block.
inline double commutator_crosscheck(const WeylPoly& p, const WeylPoly& q, int N) {
  const int dp = std::max(p.degree(), 0), dq = std::max(q.degree(), 0);
  if (N < dp + dq + 2) throw std::invalid_argument("commutator_crosscheck: N too small for the truncation block");
  CMatrix a = fock_matrix(p, N), b = fock_matrix(q, N);
  CMatrix c = fock_matrix(commutator(p, q), N);
  CMatrix diff = c - (a * b - b * a);
  const int block = N - dp - dq;
  return diff.topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

inline double interior_unitarity_error(const CMatrix& u, int margin = 4) {
  const int n = static_cast<int>(u.rows()) - margin;
  if (n <= 0) return 0;
  CMatrix g = (u.adjoint() * u).topLeftCorner(n, n) - CMatrix::Identity(n, n);
  return g.cwiseAbs().maxCoeff();
}

struct PropagatorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fourth-order Magnus stepping with Gauss nodes for dU/dt = -(sum_j u_j M(g_j)) U,
// U(0) = I, up to grid index `upto`.
inline CMatrix direct_propagator(const ControlSpec& spec, int N, std::size_t upto) {
  spec.validate();
  if (N < 16) throw std::invalid_argument("direct_propagator needs N >= 16");
  if (upto > spec.n_steps) throw std::invalid_argument("direct_propagator: time index beyond the grid");
  const auto gens = dyn_generators(spec.algebra);
  std::vector<CMatrix> m;
  for (const auto& g : gens) m.push_back(fock_matrix(g, N));
  auto gen = [&](double t) {
    CMatrix a = CMatrix::Zero(N, N);
    for (std::size_t j = 0; j < m.size(); ++j) {
      double uj = spec.at(j, t);
      if (uj != 0) a -= uj * m[j];
    }
    return a;
  };
  CMatrix u = CMatrix::Identity(N, N);
  const double h = spec.h;
  const double c = std::sqrt(3.0) / 6;
  for (std::size_t k = 0; k < upto; ++k) {
    const double t = spec.time(k);
    CMatrix a1 = gen(t + (0.5 - c) * h), a2 = gen(t + (0.5 + c) * h);
    CMatrix omega = (h / 2) * (a1 + a2) + (std::sqrt(3.0) * h * h / 12) * (a2 * a1 - a1 * a2);
    u = omega.exp() * u;
  }
  const double drift = interior_unitarity_error(u);
  if (drift > 1e-6)
    throw PropagatorError("unitarity drift " + std::to_string(drift) + " on the interior block; use a smaller step or larger N");
  return u;
}

// |<U1 psi, U2 psi>|^2 for normalised psi; insensitive to a global phase.
inline double state_fidelity(const CMatrix& u1, const CMatrix& u2, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd a = u1 * psi, b = u2 * psi;
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace weyl
