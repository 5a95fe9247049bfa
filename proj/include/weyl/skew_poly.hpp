#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "weyl/weyl_poly.hpp"

namespace weyl {

// Key of a skew-hermitian monomial g_sigma^gamma, gamma well-ordered.
// Ordered by degree, then gamma, then sign (+ before -).
struct SkewKey {
  Sign sigma = Sign::Plus;
  MultiIndex gamma;

  int degree() const { return gamma.norm(); }

  friend bool operator==(const SkewKey&, const SkewKey&) = default;
  friend bool operator<(const SkewKey& x, const SkewKey& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    if (x.gamma != y.gamma) return x.gamma < y.gamma;
    return to_int(x.sigma) > to_int(y.sigma);
  }
};

inline std::string to_string(const SkewKey& k) {
  return std::string("g") + to_cstr(k.sigma) + to_string(k.gamma);
}

enum class Subspace { A0, A1, A2, Aeq, Aperp };

inline const char* to_cstr(Subspace s) {
  switch (s) {
    case Subspace::A0: return "A0";
    case Subspace::A1: return "A1";
    case Subspace::A2: return "A2";
    case Subspace::Aeq: return "Aeq";
    case Subspace::Aperp: return "Aperp";
  }
  return "?";
}

inline Subspace subspace_of(const SkewKey& k) {
  const auto [al, be] = k.gamma;
  if (al == be) return al <= 1 ? Subspace::A0 : Subspace::Aeq;
  if (al + be == 1) return Subspace::A1;
  if (al == 2 && be == 0) return Subspace::A2;
  return Subspace::Aperp;
}

// Real-rational combination of monomials g_sigma^gamma.
class SkewPoly {
 public:
  using Terms = std::map<SkewKey, Rational>;

  SkewPoly() = default;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const SkewKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // g_-^{(k,k)} vanishes identically and is silently dropped.
  void add(const SkewKey& k, const Rational& c) {
    if (!k.gamma.well_ordered())
      throw std::invalid_argument("monomial multi-index " + to_string(k.gamma) + " is not well-ordered (need alpha >= beta)");
    if (c == 0 || (k.sigma == Sign::Minus && k.gamma.alpha == k.gamma.beta)) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int degree() const { return terms_.empty() ? kDegreeNegInf : terms_.rbegin()->first.degree(); }

  // Leading key in the (degree, gamma, sign) order.
  const SkewKey& lead() const { return terms_.rbegin()->first; }

  SkewPoly& operator+=(const SkewPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  SkewPoly& operator-=(const SkewPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  SkewPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend SkewPoly operator+(SkewPoly a, const SkewPoly& b) { return a += b; }
  friend SkewPoly operator-(SkewPoly a, const SkewPoly& b) { return a -= b; }
  friend SkewPoly operator*(SkewPoly a, const Rational& s) { return a *= s; }
  friend SkewPoly operator*(const Rational& s, SkewPoly a) { return a *= s; }
  SkewPoly operator-() const { return *this * Rational(-1); }
  friend bool operator==(const SkewPoly& a, const SkewPoly& b) { return a.terms_ == b.terms_; }

  bool is_single_monomial() const { return terms_.size() == 1; }

 private:
  Terms terms_;
};

inline SkewPoly monomial(Sign sigma, MultiIndex gamma, const Rational& c = 1) {
  SkewPoly p;
  p.add({sigma, gamma}, c);
  return p;
}

inline int degree(const SkewPoly& s) { return s.degree(); }

// Common elements.
inline SkewPoly unit_i() { return monomial(Sign::Plus, {0, 0}, Rational(1, 2)); }
inline SkewPoly number_op() { return monomial(Sign::Plus, tau, Rational(1, 2)); }  // i a^dagger a
inline SkewPoly gp(int al, int be = 0, const Rational& c = 1) { return monomial(Sign::Plus, {al, be}, c); }
inline SkewPoly gm(int al, int be = 0, const Rational& c = 1) { return monomial(Sign::Minus, {al, be}, c); }

inline WeylPoly to_weyl(const SkewPoly& s) {
  WeylPoly out;
  for (const auto& [k, c] : s.terms()) {
    const MultiIndex g = k.gamma;
    if (k.sigma == Sign::Plus) {
      // i((a^dagger)^beta a^alpha + (a^dagger)^alpha a^beta)
      out.add(g.dagger(), Gaussian(0, c));
      out.add(g, Gaussian(0, c));
    } else {
      out.add(g.dagger(), Gaussian(c));
      out.add(g, Gaussian(-c));
    }
  }
  return out;
}

inline SkewPoly from_weyl(const WeylPoly& p) {
  for (const auto& [m, c] : p.terms()) {
    Gaussian partner = p.coeff(m.dagger());
    if (c != -partner.conj())
      throw std::domain_error("not skew-hermitian: coefficient of (a^dagger)^" + std::to_string(m.alpha) + " a^" +
                              std::to_string(m.beta) + " is " + to_string(c) + " but its dagger partner is " +
                              to_string(partner));
  }
  SkewPoly s;
  for (const auto& [m, c] : p.terms()) {
    if (m.alpha < m.beta) continue;
    if (m.alpha == m.beta) {
      s.add({Sign::Plus, m}, c.im / 2);
    } else {
      // coefficient of (a^dagger)^alpha a^beta is i c_+ - c_-
      s.add({Sign::Plus, m}, c.im);
      s.add({Sign::Minus, m}, -c.re);
    }
  }
  return s;
}

inline SkewPoly project(const SkewPoly& s, Subspace k) {
  SkewPoly out;
  for (const auto& [key, c] : s.terms())
    if (subspace_of(key) == k) out.add(key, c);
  return out;
}

inline bool has_support(const SkewPoly& s, Subspace k) {
  for (const auto& [key, c] : s.terms())
    if (subspace_of(key) == k) return true;
  return false;
}

inline std::string to_string(const SkewPoly& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")" + to_string(k);
  }
  return out;
}

}  // namespace weyl
