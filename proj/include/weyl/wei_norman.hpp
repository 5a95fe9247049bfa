#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weyl/controls.hpp"
#include "weyl/fock.hpp"

namespace weyl {

enum class FactorMethod { ClosedFormQuadrature, RK4 };

inline const char* to_cstr(FactorMethod m) { return m == FactorMethod::RK4 ? "rk4" : "quadrature"; }

// U(t_k) = prod_j exp(-f_j(t_k) g_j) in generator order.
struct FactorSolution {
  DynAlgebra algebra = DynAlgebra::WH2;
  FactorMethod method = FactorMethod::ClosedFormQuadrature;
  double h = 0;
  std::vector<std::vector<double>> f;                    // f[j][k]
  std::optional<std::vector<std::vector<double>>> fdot;  // analytic derivatives when available
  double error_estimate = 0;                             // step-halving estimate (RK4 only)

  std::size_t n_points() const { return f.empty() ? 0 : f[0].size(); }
};

struct BlowUpError : std::runtime_error {
  std::size_t index;
  double time;
  BlowUpError(std::size_t k, double t)
      : std::runtime_error("factor functions left the representable range (non-finite or |4 f4| > 700) at step " +
                           std::to_string(k) + " (t = " + std::to_string(t) + "); the factorization does not extend this far"),
        index(k),
        time(t) {}
};

namespace detail {

// Cumulative integral of samples g on a uniform grid, fourth order where the
// grid has at least four points, trapezoid otherwise.
inline std::vector<double> cumulative_integral(const std::vector<double>& g, double h) {
  const std::size_t n = g.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double inc;
    if (n < 4) {
      inc = h / 2 * (g[k] + g[k + 1]);
    } else if (k == 0) {
      inc = h / 24 * (9 * g[0] + 19 * g[1] - 5 * g[2] + g[3]);
    } else if (k + 2 >= n) {
      inc = h / 24 * (9 * g[k + 1] + 19 * g[k] - 5 * g[k - 1] + g[k - 2]);
    } else {
      inc = h / 24 * (-g[k - 1] + 13 * g[k] + 13 * g[k + 1] - g[k + 2]);
    }
    out[k + 1] = out[k] + inc;
  }
  return out;
}

// Five-point finite-difference derivative with one-sided stencils at the ends.
inline std::vector<double> derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 5) {
    for (std::size_t k = 0; k < n; ++k) {
      if (n == 1) break;
      std::size_t a = k == 0 ? 0 : k - 1, b = std::min(k + 1, n - 1);
      d[k] = (f[b] - f[a]) / (static_cast<double>(b - a) * h);
    }
    return d;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= 2 && k + 2 < n) {
      d[k] = (f[k - 2] - 8 * f[k - 1] + 8 * f[k + 1] - f[k + 2]) / (12 * h);
    } else if (k < 2) {
      // forward stencil anchored at k
      const double* p = &f[0];
      if (k == 0)
        d[k] = (-25 * p[0] + 48 * p[1] - 36 * p[2] + 16 * p[3] - 3 * p[4]) / (12 * h);
      else
        d[k] = (-3 * p[0] - 10 * p[1] + 18 * p[2] - 6 * p[3] + p[4]) / (12 * h);
    } else {
      const double* p = &f[n - 5];
      if (k == n - 1)
        d[k] = (3 * p[0] - 16 * p[1] + 36 * p[2] - 48 * p[3] + 25 * p[4]) / (12 * h);
      else
        d[k] = (-p[0] + 6 * p[1] - 18 * p[2] + 10 * p[3] + 3 * p[4]) / (12 * h);
    }
  }
  return d;
}

using State5 = std::array<double, 5>;

// Inverted Schrodinger system: fdot from f and u.
inline State5 schrodinger_rhs(const State5& f, const State5& u) {
  const double c1 = std::cos(f[0]), s1 = std::sin(f[0]);
  const double c2 = std::cos(2 * f[0]), s2 = std::sin(2 * f[0]);
  const double ch = std::cosh(4 * f[3]), sh = std::sinh(4 * f[3]);
  const double ep = std::exp(4 * f[3]), em = std::exp(-4 * f[3]);
  State5 d;
  d[3] = u[3] * c2 + u[4] * s2;
  d[4] = (u[4] * c2 - u[3] * s2) / ch;
  d[0] = u[0] + 2 * sh * d[4];
  d[1] = u[1] * c1 + u[2] * s1 + 2 * d[3] * f[1] + 2 * d[4] * f[2] * ep;
  d[2] = u[2] * c1 - u[1] * s1 - 2 * d[3] * f[2] + 2 * d[4] * f[1] * em;
  return d;
}

// Forward Schrodinger system: u from f and fdot.
inline State5 schrodinger_forward(const State5& f, const State5& d) {
  const double c1 = std::cos(f[0]), s1 = std::sin(f[0]);
  const double c2 = std::cos(2 * f[0]), s2 = std::sin(2 * f[0]);
  const double ch = std::cosh(4 * f[3]), sh = std::sinh(4 * f[3]);
  const double ep = std::exp(4 * f[3]), em = std::exp(-4 * f[3]);
  State5 u;
  u[0] = d[0] - 2 * d[4] * sh;
  u[1] = d[1] * c1 - d[2] * s1 - 2 * d[3] * (f[1] * c1 + f[2] * s1) + 2 * d[4] * (f[1] * em * s1 - f[2] * ep * c1);
  u[2] = d[1] * s1 + d[2] * c1 + 2 * d[3] * (f[2] * c1 - f[1] * s1) - 2 * d[4] * (f[1] * em * c1 + f[2] * ep * s1);
  u[3] = d[3] * c2 - d[4] * ch * s2;
  u[4] = d[3] * s2 + d[4] * ch * c2;
  return u;
}

inline std::vector<State5> rk4_schrodinger(const ControlSpec& spec, std::size_t stride) {
  const double h = spec.h * static_cast<double>(stride);
  auto ufun = [&](double t) {
    State5 u;
    for (std::size_t j = 0; j < 5; ++j) u[j] = spec.at(j, t);
    return u;
  };
  auto add = [](const State5& a, double s, const State5& b) {
    State5 r;
    for (std::size_t j = 0; j < 5; ++j) r[j] = a[j] + s * b[j];
    return r;
  };
  std::vector<State5> out{State5{}};
  for (std::size_t k = 0; k + stride <= spec.n_steps; k += stride) {
    const double t = spec.time(k);
    const State5& y = out.back();
    State5 k1 = schrodinger_rhs(y, ufun(t));
    State5 k2 = schrodinger_rhs(add(y, h / 2, k1), ufun(t + h / 2));
    State5 k3 = schrodinger_rhs(add(y, h / 2, k2), ufun(t + h / 2));
    State5 k4 = schrodinger_rhs(add(y, h, k3), ufun(t + h));
    State5 next;
    for (std::size_t j = 0; j < 5; ++j) {
      next[j] = y[j] + h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
      if (!std::isfinite(next[j]) || std::abs(4 * next[3]) > 700) throw BlowUpError(k + stride, t + h);
    }
    out.push_back(next);
  }
  return out;
}

}  // namespace detail

// f1 = int u1, f2 = int(cos f1 u2 + sin f1 u3), f3 = int(cos f1 u3 - sin f1 u2),
// f4 = int(u4 + 2 f2 fdot3) (phase of the i factor).
inline FactorSolution wh2_factors(const ControlSpec& spec) {
  if (spec.algebra != DynAlgebra::WH2) throw std::invalid_argument("wh2_factors needs the wh2 algebra");
  spec.validate();
  const std::size_t n = spec.n_steps + 1;
  auto col = [&](std::size_t j) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = spec.sample(j, k);
    return v;
  };
  const auto u1 = col(0), u2 = col(1), u3 = col(2), u4 = col(3);
  FactorSolution s;
  s.algebra = DynAlgebra::WH2;
  s.method = FactorMethod::ClosedFormQuadrature;
  s.h = spec.h;
  std::vector<double> f1 = detail::cumulative_integral(u1, spec.h);
  std::vector<double> d2(n), d3(n);
  for (std::size_t k = 0; k < n; ++k) {
    d2[k] = std::cos(f1[k]) * u2[k] + std::sin(f1[k]) * u3[k];
    d3[k] = std::cos(f1[k]) * u3[k] - std::sin(f1[k]) * u2[k];
  }
  std::vector<double> f2 = detail::cumulative_integral(d2, spec.h);
  std::vector<double> f3 = detail::cumulative_integral(d3, spec.h);
  std::vector<double> d4(n);
  for (std::size_t k = 0; k < n; ++k) d4[k] = u4[k] + 2 * f2[k] * d3[k];
  std::vector<double> f4 = detail::cumulative_integral(d4, spec.h);
  s.f = {f1, f2, f3, f4};
  s.fdot = std::vector<std::vector<double>>{u1, d2, d3, d4};
  return s;
}

inline FactorSolution schrodinger_factors(const ControlSpec& spec) {
  if (spec.algebra != DynAlgebra::Schrodinger) throw std::invalid_argument("schrodinger_factors needs the schrodinger algebra");
  spec.validate();
  auto fine = detail::rk4_schrodinger(spec, 1);
  FactorSolution s;
  s.algebra = DynAlgebra::Schrodinger;
  s.method = FactorMethod::RK4;
  s.h = spec.h;
  s.f.assign(5, std::vector<double>(fine.size()));
  for (std::size_t k = 0; k < fine.size(); ++k)
    for (std::size_t j = 0; j < 5; ++j) s.f[j][k] = fine[k][j];
  if (spec.n_steps >= 2) {
    auto coarse = detail::rk4_schrodinger(spec, 2);
    double err = 0;
    for (std::size_t k = 0; k < coarse.size(); ++k)
      for (std::size_t j = 0; j < 5; ++j) err = std::max(err, std::abs(coarse[k][j] - fine[2 * k][j]));
    s.error_estimate = err / 15;
  }
  return s;
}

// Max over grid and components of |u reconstructed - u given|. Uses stored
// derivatives when present, five-point differences otherwise.
inline double residual_check(const ControlSpec& spec, const FactorSolution& sol) {
  const std::size_t n = spec.n_steps + 1;
  if (sol.n_points() != n || sol.algebra != spec.algebra || std::abs(sol.h - spec.h) > 1e-15 * spec.h)
    throw std::invalid_argument("residual_check: solution grid does not match the controls");
  std::vector<std::vector<double>> d;
  if (sol.fdot)
    d = *sol.fdot;
  else
    for (const auto& fj : sol.f) d.push_back(detail::derivative(fj, spec.h));
  double worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (spec.algebra == DynAlgebra::WH2) {
      const double f1 = sol.f[0][k], f2 = sol.f[1][k];
      const double c = std::cos(f1), s = std::sin(f1);
      const double u[4] = {d[0][k], d[1][k] * c - d[2][k] * s, d[1][k] * s + d[2][k] * c, d[3][k] - 2 * f2 * d[2][k]};
      for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(u[j] - spec.sample(j, k)));
    } else {
      detail::State5 f, fd;
      for (std::size_t j = 0; j < 5; ++j) {
        f[j] = sol.f[j][k];
        fd[j] = d[j][k];
      }
      auto u = detail::schrodinger_forward(f, fd);
      for (std::size_t j = 0; j < 5; ++j) worst = std::max(worst, std::abs(u[j] - spec.sample(j, k)));
    }
  }
  return worst;
}

inline CMatrix factored_propagator(const FactorSolution& sol, std::size_t t_index, int N) {
  if (N < 8) throw std::invalid_argument("factored_propagator needs N >= 8");
  if (t_index >= sol.n_points()) throw std::invalid_argument("factored_propagator: time index beyond the grid");
  const auto gens = dyn_generators(sol.algebra);
  CMatrix u = CMatrix::Identity(N, N);
  for (std::size_t j = 0; j < gens.size() && j < sol.f.size(); ++j) {
    const double fj = sol.f[j][t_index];
    if (fj == 0) continue;
    CMatrix e = (-fj * fock_matrix(gens[j], N)).exp();
    u = u * e;
  }
  return u;
}

}  // namespace weyl
