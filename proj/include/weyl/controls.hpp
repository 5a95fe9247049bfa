#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "weyl/skew_poly.hpp"

namespace weyl {

enum class DynAlgebra { Schrodinger, WH2 };

inline const char* to_cstr(DynAlgebra a) { return a == DynAlgebra::Schrodinger ? "schrodinger" : "wh2"; }

// Generators g_j with iH(t) = sum_j u_j(t) g_j, in the factor order of the ansatz.
//   Schrodinger: i a^dagger a, a - a^dagger, i(a + a^dagger), a^2 - a^dagger^2, i(a^2 + a^dagger^2)
//   WH2:         i a^dagger a, a - a^dagger, i(a + a^dagger), i
inline std::vector<SkewPoly> dyn_generators(DynAlgebra a) {
  if (a == DynAlgebra::Schrodinger) return {number_op(), gm(1), gp(1), gm(2), gp(2)};
  return {number_op(), gm(1), gp(1), unit_i()};
}

// Controls sampled on t_k = k h, k = 0..n_steps.
struct ControlSpec {
  DynAlgebra algebra = DynAlgebra::WH2;
  double h = 1e-3;
  std::size_t n_steps = 0;
  std::vector<std::vector<double>> u;  // u[j][k]; missing trailing controls are zero

  std::size_t n_controls() const { return dyn_generators(algebra).size(); }
  double time(std::size_t k) const { return static_cast<double>(k) * h; }

  void validate() const {
    if (!(h > 0) || !std::isfinite(h)) throw std::invalid_argument("control grid step must be positive");
    if (u.size() > n_controls())
      throw std::invalid_argument("too many control arrays for " + std::string(to_cstr(algebra)));
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (u[j].size() != n_steps + 1)
        throw std::invalid_argument("control u" + std::to_string(j + 1) + " has " + std::to_string(u[j].size()) +
                                    " samples, expected " + std::to_string(n_steps + 1));
      for (double x : u[j])
        if (!std::isfinite(x)) throw std::invalid_argument("control u" + std::to_string(j + 1) + " is not finite");
    }
  }

  double sample(std::size_t j, std::size_t k) const { return j < u.size() ? u[j][k] : 0.0; }

  // Cubic Lagrange interpolation through the four nearest samples.
  double at(std::size_t j, double t) const {
    if (j >= u.size()) return 0.0;
    const auto& v = u[j];
    if (n_steps == 0) return v[0];
    double x = t / h;
    if (n_steps < 3) {
      std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, std::floor(x))), n_steps - 1);
      double w = x - static_cast<double>(k);
      return (1 - w) * v[k] + w * v[k + 1];
    }
    long k0 = static_cast<long>(std::floor(x)) - 1;
    k0 = std::max(0L, std::min(k0, static_cast<long>(n_steps) - 3));
    double out = 0;
    for (int a = 0; a < 4; ++a) {
      double l = 1;
      for (int b = 0; b < 4; ++b)
        if (b != a) l *= (x - static_cast<double>(k0 + b)) / static_cast<double>(a - b);
      out += l * v[static_cast<std::size_t>(k0 + a)];
    }
    return out;
  }

  template <class F>
  static ControlSpec from_functions(DynAlgebra a, double h, std::size_t n_steps, const std::vector<F>& fs) {
    ControlSpec s;
    s.algebra = a;
    s.h = h;
    s.n_steps = n_steps;
    for (const auto& f : fs) {
      std::vector<double> v(n_steps + 1);
      for (std::size_t k = 0; k <= n_steps; ++k) v[k] = f(static_cast<double>(k) * h);
      s.u.push_back(std::move(v));
    }
    s.validate();
    return s;
  }
};

}  // namespace weyl
