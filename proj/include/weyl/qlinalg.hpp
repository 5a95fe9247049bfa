#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "weyl/rational.hpp"

namespace weyl {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  // row-major

inline bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline QVec axpy(const QVec& x, const Rational& s, const QVec& y) {
  QVec out = x;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += s * y[i];
  return out;
}

inline QVec unit_vector(std::size_t n, std::size_t k) {
  QVec v(n);
  v[k] = 1;
  return v;
}

inline QMat identity_matrix(std::size_t n) {
  QMat m(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline QMat matmul(const QMat& a, const QMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat out(n, QVec(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

inline QVec matvec(const QMat& a, const QVec& x) {
  QVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
  return out;
}

inline QMat transpose(const QMat& a) {
  if (a.empty()) return {};
  QMat t(a[0].size(), QVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Rational trace(const QMat& a) {
  Rational t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

inline std::size_t rank(QMat m) { return rref(m).size(); }

// Basis of {x : m x = 0}; cols is needed when m has no rows.
inline std::vector<QVec> nullspace(QMat m, std::size_t cols) {
  auto piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<QVec> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    QVec v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

// Subspace of Q^n with coordinates relative to the inserted vectors.
class QSubspace {
 public:
  explicit QSubspace(std::size_t n = 0) : n_(n) {}
  QSubspace(std::size_t n, const std::vector<QVec>& vs) : n_(n) {
    for (const auto& v : vs) insert(v);
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<QVec>& basis() const { return basis_; }

  bool insert(const QVec& v) {
    QVec combo(basis_.size() + 1);
    QVec r = reduce(v, &combo);
    auto lead = first_nonzero(r);
    if (!lead) return false;
    combo.back() = 1;
    basis_.push_back(v);
    for (auto& row : rows_) row.combo.emplace_back(0);
    Rational inv = 1 / r[*lead];
    for (auto& x : r) x *= inv;
    for (auto& x : combo) x *= inv;
    for (auto& row : rows_) {
      Rational c = row.v[*lead];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) row.v[j] -= c * r[j];
      for (std::size_t j = 0; j < combo.size(); ++j) row.combo[j] -= c * combo[j];
    }
    rows_.push_back({*lead, std::move(r), std::move(combo)});
    return true;
  }

  bool contains(const QVec& v) const { return !first_nonzero(reduce(v, nullptr)); }

  std::optional<QVec> coordinates(const QVec& v) const {
    QVec combo(basis_.size());
    if (first_nonzero(reduce(v, &combo))) return std::nullopt;
    for (auto& c : combo) c = -c;
    return combo;
  }

  bool contains_all(const QSubspace& o) const {
    for (const auto& b : o.basis_)
      if (!contains(b)) return false;
    return true;
  }

  bool same(const QSubspace& o) const { return dim() == o.dim() && contains_all(o); }

 private:
  struct Row {
    std::size_t pivot;
    QVec v;
    QVec combo;
  };

  static std::optional<std::size_t> first_nonzero(const QVec& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return i;
    return std::nullopt;
  }

  QVec reduce(const QVec& v, QVec* combo) const {
    QVec r = v;
    for (const auto& row : rows_) {
      Rational c = r[row.pivot];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r[j] -= c * row.v[j];
      if (combo)
        for (std::size_t j = 0; j < row.combo.size(); ++j) (*combo)[j] -= c * row.combo[j];
    }
    return r;
  }

  std::size_t n_;
  std::vector<QVec> basis_;
  std::vector<Row> rows_;
};

// Signature (n_plus, n_minus, n_zero) of a symmetric matrix by congruence.
inline std::tuple<int, int, int> signature(QMat a) {
  const std::size_t n = a.size();
  int plus = 0, minus = 0;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < n && !piv; ++i)
      if (!done[i] && a[i][i] != 0) piv = i;
    if (!piv) {
      // all remaining diagonal entries vanish; mix in an off-diagonal partner
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i = 0; i < n && !off; ++i)
        for (std::size_t j = i + 1; j < n && !off; ++j)
          if (!done[i] && !done[j] && a[i][j] != 0) off = std::make_pair(i, j);
      if (!off) break;
      auto [i, j] = *off;
      // e_i <- e_i + e_j gives a_ii' = 2 a_ij != 0
      for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
      piv = i;
    }
    const std::size_t p = *piv;
    const Rational d = a[p][p];
    (d > 0 ? plus : minus)++;
    done[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][p] == 0) continue;
      Rational f = a[i][p] / d;
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[p][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][p];
    }
  }
  return {plus, minus, static_cast<int>(n) - plus - minus};
}

// Characteristic polynomial det(tI - a), coefficients low to high (Faddeev-LeVerrier).
inline QVec charpoly(const QMat& a) {
  const std::size_t n = a.size();
  QVec c(n + 1);
  c[n] = 1;
  QMat m(n, QVec(n));
  for (std::size_t k = 1; k <= n; ++k) {
    QMat am = matmul(a, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;
    c[n - k] = -trace(matmul(a, m)) / Rational(static_cast<long>(k));
  }
  return c;
}

inline Rational poly_eval(const QVec& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::vector<Integer> divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> out;
  if (v == 0) return out;
  for (Integer d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  return out;
}

// Distinct rational roots, with multiplicity counted against the polynomial.
inline std::vector<std::pair<Rational, int>> rational_roots(QVec p) {
  std::vector<std::pair<Rational, int>> out;
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (p.size() <= 1) return out;
  int zero_mult = 0;
  while (p.size() > 1 && p.front() == 0) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult) out.emplace_back(Rational(0), zero_mult);
  Integer l = 1;
  for (const auto& c : p) {
    Integer den = c.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<Integer> ip;
  for (const auto& c : p) ip.emplace_back(Integer(c * Rational(l)));
  for (const auto& num : divisors(ip.front()))
    for (const auto& den : divisors(ip.back()))
      for (int s : {1, -1}) {
        Rational r(num * s, den);
        r.canonicalize();
        if (std::any_of(out.begin(), out.end(), [&](const auto& e) { return e.first == r; })) continue;
        if (poly_eval(p, r) != 0) continue;
        int mult = 0;
        QVec q = p;
        while (q.size() > 1 && poly_eval(q, r) == 0) {
          // synthetic division by (t - r)
          QVec d(q.size() - 1);
          Rational carry = 0;
          for (std::size_t i = q.size() - 1; i >= 1; --i) {
            carry = q[i] + carry * r;
            d[i - 1] = carry;
          }
          q = d;
          ++mult;
        }
        out.emplace_back(r, mult);
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace weyl
