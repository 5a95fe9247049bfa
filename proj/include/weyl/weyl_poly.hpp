#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <vector>

#include "weyl/gaussian.hpp"
#include "weyl/multi_index.hpp"

namespace weyl {

constexpr int kDegreeNegInf = INT_MIN;

namespace detail {

inline const Integer& binomial(int n, int k) {
  static std::vector<std::vector<Integer>> rows{{Integer(1)}};
  while (static_cast<int>(rows.size()) <= n) {
    const auto& prev = rows.back();
    std::vector<Integer> row(prev.size() + 1);
    row.front() = row.back() = 1;
    for (std::size_t j = 1; j + 1 < row.size(); ++j) row[j] = prev[j - 1] + prev[j];
    rows.push_back(std::move(row));
  }
  return rows[n][k];
}

inline const Integer& factorial(int n) {
  static std::vector<Integer> f{Integer(1)};
  while (static_cast<int>(f.size()) <= n) f.push_back(f.back() * static_cast<unsigned long>(f.size()));
  return f[n];
}

}  // namespace detail

// Normal-ordered polynomial in a^dagger, a with Gaussian-rational coefficients.
class WeylPoly {
 public:
  using Terms = std::map<MultiIndex, Gaussian>;

  WeylPoly() = default;
  explicit WeylPoly(Terms t) : terms_(std::move(t)) { prune(); }

  static WeylPoly scalar(const Gaussian& c) { return term({0, 0}, c); }
  static WeylPoly term(MultiIndex m, const Gaussian& c) {
    WeylPoly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }
  static WeylPoly a() { return term({0, 1}, Rational(1)); }
  static WeylPoly adag() { return term({1, 0}, Rational(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Gaussian coeff(MultiIndex m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Gaussian() : it->second;
  }

  void add(MultiIndex m, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int degree() const {
    int d = kDegreeNegInf;
    for (const auto& [m, c] : terms_) d = std::max(d, m.norm());
    return d;
  }

  WeylPoly& operator+=(const WeylPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  WeylPoly& operator-=(const WeylPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  WeylPoly& operator*=(const Gaussian& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend WeylPoly operator+(WeylPoly a, const WeylPoly& b) { return a += b; }
  friend WeylPoly operator-(WeylPoly a, const WeylPoly& b) { return a -= b; }
  friend WeylPoly operator*(WeylPoly a, const Gaussian& s) { return a *= s; }
  friend WeylPoly operator*(const Gaussian& s, WeylPoly a) { return a *= s; }
  WeylPoly operator-() const { return *this * Gaussian(-1); }

  friend bool operator==(const WeylPoly& a, const WeylPoly& b) { return a.terms_ == b.terms_; }

  // Homogeneous top-degree component.
  WeylPoly top() const {
    WeylPoly r;
    int d = degree();
    for (const auto& [m, c] : terms_)
      if (m.norm() == d) r.terms_.emplace(m, c);
    return r;
  }

 private:
  void prune() {
    std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
  }
  Terms terms_;
};

// a^r (a^dagger)^s = sum_j j! C(r,j) C(s,j) (a^dagger)^(s-j) a^(r-j)
inline WeylPoly weyl_product(const WeylPoly& p, const WeylPoly& q) {
  WeylPoly out;
  for (const auto& [m1, c1] : p.terms()) {
    for (const auto& [m2, c2] : q.terms()) {
      Gaussian c = c1 * c2;
      int r = m1.beta, s = m2.alpha;
      for (int j = 0; j <= std::min(r, s); ++j) {
        Integer k = detail::factorial(j) * detail::binomial(r, j) * detail::binomial(s, j);
        out.add({m1.alpha + s - j, r - j + m2.beta}, c * Rational(k));
      }
    }
  }
  return out;
}

inline WeylPoly operator*(const WeylPoly& p, const WeylPoly& q) { return weyl_product(p, q); }

inline WeylPoly commutator(const WeylPoly& p, const WeylPoly& q) { return weyl_product(p, q) - weyl_product(q, p); }

// Antilinear anti-automorphism: (c (a^dagger)^al a^be)^dagger = conj(c) (a^dagger)^be a^al.
inline WeylPoly dagger(const WeylPoly& p) {
  WeylPoly out;
  for (const auto& [m, c] : p.terms()) out.add(m.dagger(), c.conj());
  return out;
}

inline int degree(const WeylPoly& p) { return p.degree(); }

}  // namespace weyl
