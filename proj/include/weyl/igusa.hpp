#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "weyl/skew_poly.hpp"

namespace weyl {

using cplx = std::complex<double>;
using CWeylPoly = std::map<MultiIndex, cplx>;

inline CWeylPoly to_complex(const WeylPoly& p) {
  CWeylPoly out;
  for (const auto& [m, c] : p.terms()) out[m] = c.to_complex();
  return out;
}

inline int degree(const CWeylPoly& p) {
  int d = kDegreeNegInf;
  for (const auto& [m, c] : p)
    if (c != 0.0) d = std::max(d, m.norm());
  return d;
}

inline CWeylPoly weyl_product(const CWeylPoly& p, const CWeylPoly& q) {
  CWeylPoly out;
  for (const auto& [m1, c1] : p)
    for (const auto& [m2, c2] : q) {
      int r = m1.beta, s = m2.alpha;
      for (int j = 0; j <= std::min(r, s); ++j) {
        double k = Integer(detail::factorial(j) * detail::binomial(r, j) * detail::binomial(s, j)).get_d();
        out[{m1.alpha + s - j, r - j + m2.beta}] += c1 * c2 * k;
      }
    }
  return out;
}

// Leading data of a degree-d polynomial: a0 multiplies a^d, a1 multiplies a^dagger a^(d-1).
template <class P, class C>
struct LeadingData {
  int d;
  C a0;
  C a1;
};

inline LeadingData<WeylPoly, Gaussian> leading_data(const WeylPoly& x) {
  if (x.is_zero()) throw std::invalid_argument("delta: zero polynomial has no leading coefficients");
  int d = x.degree();
  return {d, x.coeff({0, d}), d >= 1 ? x.coeff({1, d - 1}) : Gaussian()};
}

inline LeadingData<CWeylPoly, cplx> leading_data(const CWeylPoly& x) {
  int d = degree(x);
  if (d == kDegreeNegInf) throw std::invalid_argument("delta: zero polynomial has no leading coefficients");
  auto get = [&](MultiIndex m) {
    auto it = x.find(m);
    return it == x.end() ? cplx{} : it->second;
  };
  return {d, get({0, d}), d >= 1 ? get({1, d - 1}) : cplx{}};
}

// delta(x,y) = d_y a1 b0 - d_x a0 b1
inline Gaussian delta(const WeylPoly& x, const WeylPoly& y) {
  auto a = leading_data(x);
  auto b = leading_data(y);
  return a.a1 * b.a0 * Rational(b.d) - a.a0 * b.a1 * Rational(a.d);
}

inline cplx delta(const CWeylPoly& x, const CWeylPoly& y) {
  auto a = leading_data(x);
  auto b = leading_data(y);
  return double(b.d) * a.a1 * b.a0 - double(a.d) * a.a0 * b.a1;
}

// c_k: coefficient of g_+^{(d-k,k)}, chat_k: of g_-^{(d-k,k)}; f_k = i c_k + chat_k
// is then the coefficient of a^dagger^k a^(d-k).
struct TopCoefficients {
  int d = 0;
  Rational c0, chat0, c1, chat1;
  Gaussian f0() const { return {chat0, c0}; }
  Gaussian f1() const { return {chat1, c1}; }
};

inline TopCoefficients top_coefficients(const SkewPoly& e) {
  TopCoefficients t;
  t.d = e.degree();
  t.c0 = e.coeff({Sign::Plus, {t.d, 0}});
  t.chat0 = e.coeff({Sign::Minus, {t.d, 0}});
  t.c1 = e.coeff({Sign::Plus, {t.d - 1, 1}});
  t.chat1 = e.coeff({Sign::Minus, {t.d - 1, 1}});
  return t;
}

enum class IgusaVerdict { Infinite, Inconclusive };

inline const char* to_cstr(IgusaVerdict v) { return v == IgusaVerdict::Infinite ? "infinite" : "inconclusive"; }

struct IdentityCheck {
  IgusaVerdict verdict = IgusaVerdict::Inconclusive;
  std::array<bool, 4> conditions{};
};

inline IdentityCheck identity_check(const SkewPoly& e1, const SkewPoly& e2) {
  if (e1.degree() <= 2 || e2.degree() <= 2)
    throw std::invalid_argument("igusa identity check needs both degrees > 2 (got " + std::to_string(e1.degree()) +
                                ", " + std::to_string(e2.degree()) + ")");
  auto x = top_coefficients(e1);
  auto y = top_coefficients(e2);
  const Rational d1 = x.d, d2 = y.d;
  IdentityCheck r;
  r.conditions[0] = x.chat0 * y.chat0 != x.c0 * y.c0;
  r.conditions[1] = y.chat0 * x.c0 != -x.chat0 * y.c0;
  r.conditions[2] = d1 * (x.chat0 * y.chat1 - x.c0 * y.c1) != d2 * (x.chat1 * y.chat0 - x.c1 * y.c0);
  r.conditions[3] = d1 * (x.c0 * y.chat1 + x.chat0 * y.c1) != d2 * (x.c1 * y.chat0 + x.chat1 * y.c0);
  bool all = r.conditions[0] && r.conditions[1] && r.conditions[2] && r.conditions[3];
  r.verdict = all ? IgusaVerdict::Infinite : IgusaVerdict::Inconclusive;
  return r;
}

// 2x2 matrix acting as Phi(a^dagger) = m11 a^dagger + m12 a, Phi(a) = m21 a^dagger + m22 a.
// Brackets are preserved when m11 m22 - m12 m21 = 1.
template <class C>
struct Sigma {
  C m11, m12, m21, m22;
  C det() const { return m11 * m22 - m12 * m21; }
};

struct SymplecticParams {
  double s = 0, phi = 0, theta = 0;

  // Skew-hermiticity preserving family; Phi(a) is the dagger of Phi(a^dagger).
  Sigma<cplx> matrix() const {
    const cplx I(0, 1);
    return {std::exp(I * phi) * std::cosh(s), std::exp(-I * theta) * std::sinh(s), std::exp(I * theta) * std::sinh(s),
            std::exp(-I * phi) * std::cosh(s)};
  }
};

inline WeylPoly apply_symplectic(const WeylPoly& p, const Sigma<Gaussian>& m) {
  WeylPoly ad = WeylPoly::term({1, 0}, m.m11) + WeylPoly::term({0, 1}, m.m12);
  WeylPoly an = WeylPoly::term({1, 0}, m.m21) + WeylPoly::term({0, 1}, m.m22);
  std::vector<WeylPoly> pad{WeylPoly::scalar(Rational(1))}, pan{WeylPoly::scalar(Rational(1))};
  WeylPoly out;
  for (const auto& [mi, c] : p.terms()) {
    while (static_cast<int>(pad.size()) <= mi.alpha) pad.push_back(pad.back() * ad);
    while (static_cast<int>(pan.size()) <= mi.beta) pan.push_back(pan.back() * an);
    out += (pad[mi.alpha] * pan[mi.beta]) * c;
  }
  return out;
}

inline CWeylPoly apply_symplectic(const WeylPoly& p, const Sigma<cplx>& m) {
  CWeylPoly ad{{{1, 0}, m.m11}, {{0, 1}, m.m12}};
  CWeylPoly an{{{1, 0}, m.m21}, {{0, 1}, m.m22}};
  std::vector<CWeylPoly> pad{{{{0, 0}, 1.0}}}, pan{{{{0, 0}, 1.0}}};
  CWeylPoly out;
  for (const auto& [mi, c] : p.terms()) {
    while (static_cast<int>(pad.size()) <= mi.alpha) pad.push_back(weyl_product(pad.back(), ad));
    while (static_cast<int>(pan.size()) <= mi.beta) pan.push_back(weyl_product(pan.back(), an));
    for (const auto& [k, v] : weyl_product(pad[mi.alpha], pan[mi.beta])) out[k] += v * c.to_complex();
  }
  return out;
}

struct IgusaCertificate {
  bool identity = true;
  SymplecticParams params;
  cplx a0b0;
  cplx delta;
  IgusaVerdict verdict = IgusaVerdict::Inconclusive;
};

constexpr double kIgusaTolerance = 1e-9;

namespace detail {

inline CWeylPoly unit_scaled(CWeylPoly p) {
  double mx = 0;
  for (const auto& [m, c] : p) mx = std::max(mx, std::abs(c));
  if (mx > 0)
    for (auto& [m, c] : p) c /= mx;
  return p;
}

inline IgusaCertificate evaluate_sampled(const SkewPoly& e1, const SkewPoly& e2, const SymplecticParams& sp) {
  auto m = sp.matrix();
  CWeylPoly x = unit_scaled(apply_symplectic(to_weyl(e1), m));
  CWeylPoly y = unit_scaled(apply_symplectic(to_weyl(e2), m));
  IgusaCertificate c;
  c.identity = false;
  c.params = sp;
  auto lx = leading_data(x);
  auto ly = leading_data(y);
  c.a0b0 = lx.a0 * ly.a0;
  c.delta = delta(x, y);
  bool ok = std::abs(c.a0b0) > kIgusaTolerance && std::abs(c.delta) > kIgusaTolerance;
  c.verdict = ok ? IgusaVerdict::Infinite : IgusaVerdict::Inconclusive;
  return c;
}

}  // namespace detail

inline IgusaCertificate evaluate_identity(const SkewPoly& e1, const SkewPoly& e2) {
  WeylPoly x = to_weyl(e1), y = to_weyl(e2);
  auto lx = leading_data(x);
  auto ly = leading_data(y);
  Gaussian ab = lx.a0 * ly.a0;
  Gaussian dl = delta(x, y);
  IgusaCertificate c;
  c.identity = true;
  c.a0b0 = ab.to_complex();
  c.delta = dl.to_complex();
  c.verdict = !ab.is_zero() && !dl.is_zero() ? IgusaVerdict::Infinite : IgusaVerdict::Inconclusive;
  return c;
}

// Identity first, then the fixed grid, then seeded random draws.
inline std::optional<IgusaCertificate> symplectic_search(const SkewPoly& e1, const SkewPoly& e2, int samples,
                                                         std::uint64_t seed) {
  if (e1.degree() <= 2 || e2.degree() <= 2)
    throw std::invalid_argument("igusa search needs both degrees > 2");
  auto id = evaluate_identity(e1, e2);
  if (id.verdict == IgusaVerdict::Infinite) return id;
  if (samples <= 0) return std::nullopt;
  const double half_pi = std::numbers::pi / 2;
  for (double s : {0.5, -0.5, 1.0, -1.0})
    for (double phi : {0.0, half_pi})
      for (double theta : {0.0, half_pi}) {
        auto c = detail::evaluate_sampled(e1, e2, {s, phi, theta});
        if (c.verdict == IgusaVerdict::Infinite) return c;
      }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ds(-1.5, 1.5), da(0.0, 2 * std::numbers::pi);
  for (int k = 0; k < samples; ++k) {
    SymplecticParams sp;
    sp.s = ds(rng);
    sp.phi = da(rng);
    sp.theta = da(rng);
    auto c = detail::evaluate_sampled(e1, e2, sp);
    if (c.verdict == IgusaVerdict::Infinite) return c;
  }
  return std::nullopt;
}

// Recomputes the certificate quantities from its parameters.
inline bool recheck(const IgusaCertificate& cert, const SkewPoly& e1, const SkewPoly& e2) {
  IgusaCertificate again = cert.identity ? evaluate_identity(e1, e2) : detail::evaluate_sampled(e1, e2, cert.params);
  return again.verdict == cert.verdict && std::abs(again.a0b0 - cert.a0b0) <= 1e-12 * (1 + std::abs(cert.a0b0)) &&
         std::abs(again.delta - cert.delta) <= 1e-12 * (1 + std::abs(cert.delta));
}

}  // namespace weyl
