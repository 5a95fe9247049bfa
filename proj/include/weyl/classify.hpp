#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "weyl/closure.hpp"
#include "weyl/qlinalg.hpp"

namespace weyl {

// Finite-dimensional real Lie algebra given by exact structure constants.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t n) : n_(n), table_(n * n, QVec(n)) {}

  // Sets [e_i, e_j] = v and [e_j, e_i] = -v.
  LieAlgebra& set(std::size_t i, std::size_t j, QVec v) {
    QVec neg = v;
    for (auto& x : neg) x = -x;
    table_[i * n_ + j] = std::move(v);
    table_[j * n_ + i] = std::move(neg);
    return *this;
  }
  LieAlgebra& set(std::size_t i, std::size_t j, std::size_t k, const Rational& c) {
    QVec v(n_);
    v[k] = c;
    return set(i, j, std::move(v));
  }

  static LieAlgebra from_span(const LieSpan& b) {
    LieAlgebra g(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = i + 1; j < b.dim(); ++j) {
        auto c = b.coordinates(bracket(b.basis()[i], b.basis()[j]));
        if (!c) throw std::domain_error("span is not closed under the bracket");
        g.set(i, j, std::move(*c));
      }
    return g;
  }

  std::size_t dim() const { return n_; }
  const QVec& structure(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

  QVec bracket_of(const QVec& x, const QVec& y) const {
    QVec out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (y[j] == 0) continue;
        const Rational f = x[i] * y[j];
        const QVec& c = table_[i * n_ + j];
        for (std::size_t k = 0; k < n_; ++k)
          if (c[k] != 0) out[k] += f * c[k];
      }
    }
    return out;
  }

  // Column j holds [x, e_j].
  QMat ad(const QVec& x) const {
    QMat m(n_, QVec(n_));
    for (std::size_t j = 0; j < n_; ++j) {
      QVec c = bracket_of(x, unit_vector(n_, j));
      for (std::size_t i = 0; i < n_; ++i) m[i][j] = c[i];
    }
    return m;
  }

  bool satisfies_jacobi() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) {
          QVec a = unit_vector(n_, i), b = unit_vector(n_, j), c = unit_vector(n_, k);
          QVec s = bracket_of(a, bracket_of(b, c));
          s = axpy(s, 1, bracket_of(b, bracket_of(c, a)));
          s = axpy(s, 1, bracket_of(c, bracket_of(a, b)));
          if (!is_zero(s)) return false;
        }
    return true;
  }

  // Structure constants of a bracket-closed subspace in the subspace's own basis.
  LieAlgebra restrict_to(const QSubspace& s) const {
    LieAlgebra h(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = i + 1; j < s.dim(); ++j) {
        auto c = s.coordinates(bracket_of(s.basis()[i], s.basis()[j]));
        if (!c) throw std::domain_error("subspace is not a subalgebra");
        h.set(i, j, std::move(*c));
      }
    return h;
  }

  QSubspace whole() const {
    QSubspace s(n_);
    for (std::size_t i = 0; i < n_; ++i) s.insert(unit_vector(n_, i));
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<QVec> table_;
};

inline QSubspace bracket_space(const LieAlgebra& g, const QSubspace& a, const QSubspace& b) {
  QSubspace out(g.dim());
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) out.insert(g.bracket_of(x, y));
  return out;
}

// D^0 = g, D^{l+1} = [D^l, D^l]; stops at 0 or at the first repeat.
inline std::vector<QSubspace> derived_series(const LieAlgebra& g) {
  std::vector<QSubspace> s{g.whole()};
  while (s.back().dim() > 0) {
    QSubspace next = bracket_space(g, s.back(), s.back());
    bool stable = next.dim() == s.back().dim();
    s.push_back(std::move(next));
    if (stable) break;
  }
  return s;
}

// g^0 = g, g^{l+1} = [g, g^l].
inline std::vector<QSubspace> lower_central_series(const LieAlgebra& g) {
  std::vector<QSubspace> s{g.whole()};
  while (s.back().dim() > 0) {
    QSubspace next = bracket_space(g, s[0], s.back());
    bool stable = next.dim() == s.back().dim();
    s.push_back(std::move(next));
    if (stable) break;
  }
  return s;
}

// Elements of g commuting with every element of `with`.
inline QSubspace centralizer(const LieAlgebra& g, const QSubspace& with) {
  const std::size_t n = g.dim();
  QMat rows;
  for (const auto& w : with.basis()) {
    QMat m = g.ad(w);  // [w, x] = m x
    for (auto& r : m) rows.push_back(std::move(r));
  }
  return QSubspace(n, nullspace(rows, n));
}

inline QSubspace center(const LieAlgebra& g) { return centralizer(g, g.whole()); }

inline QMat killing_gram(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  std::vector<QMat> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad(unit_vector(n, i)));
  QMat k(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) k[i][j] = k[j][i] = trace(matmul(ads[i], ads[j]));
  return k;
}

struct KillingForm {
  QMat gram;
  int rank = 0;
  std::tuple<int, int, int> signature;
};

inline KillingForm killing_form(const LieAlgebra& g) {
  KillingForm k;
  k.gram = killing_gram(g);
  k.signature = signature(k.gram);
  k.rank = std::get<0>(k.signature) + std::get<1>(k.signature);
  return k;
}

struct Fingerprint {
  int dim = 0;
  std::vector<int> derived_dims;
  std::vector<int> lcs_dims;
  int center_dim = 0;
  bool solvable = false;
  bool nilpotent = false;
  int killing_rank = 0;
  std::tuple<int, int, int> killing_signature{0, 0, 0};

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline std::vector<int> dims_of(const std::vector<QSubspace>& s) {
  std::vector<int> d;
  for (const auto& x : s) d.push_back(static_cast<int>(x.dim()));
  return d;
}

inline Fingerprint fingerprint(const LieAlgebra& g) {
  Fingerprint f;
  f.dim = static_cast<int>(g.dim());
  f.derived_dims = dims_of(derived_series(g));
  f.lcs_dims = dims_of(lower_central_series(g));
  f.center_dim = static_cast<int>(center(g).dim());
  f.solvable = f.derived_dims.back() == 0;
  f.nilpotent = f.lcs_dims.back() == 0;
  auto k = killing_form(g);
  f.killing_rank = k.rank;
  f.killing_signature = k.signature;
  return f;
}

// ---------------------------------------------------------------------------
// nilpotent basis {y_0..y_{m-2}, x}: [y_j, y_k] = 0, [x, y_j] = y_{j-1}, [x, y_0] = 0

struct NilpotentBasis {
  QVec x;
  std::vector<QVec> y;  // y[0] .. y[m-2]
};

inline bool check_nilpotent_basis(const LieAlgebra& g, const NilpotentBasis& b) {
  const std::size_t n = g.dim();
  if (b.y.size() + 1 != n) return false;
  QSubspace s(n);
  for (const auto& v : b.y)
    if (!s.insert(v)) return false;
  if (!s.insert(b.x)) return false;
  for (std::size_t j = 0; j < b.y.size(); ++j) {
    QVec expect = j == 0 ? QVec(n) : b.y[j - 1];
    if (g.bracket_of(b.x, b.y[j]) != expect) return false;
    for (std::size_t k = j + 1; k < b.y.size(); ++k)
      if (!is_zero(g.bracket_of(b.y[j], b.y[k]))) return false;
  }
  return true;
}

// Follows the constructive argument: x outside the centralizer of the derived
// algebra, y_{m-2} with ad_x^{m-2} y != 0, then y_{j-1} = [x, y_j].
inline std::optional<NilpotentBasis> nilpotent_basis(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  if (n < 3) return std::nullopt;
  auto der = derived_series(g);
  if (der.size() < 2 || der[1].dim() == 0) return std::nullopt;
  QSubspace r = centralizer(g, der[1]);
  std::vector<QVec> xs, ys;
  for (std::size_t i = 0; i < n; ++i)
    if (!r.contains(unit_vector(n, i))) xs.push_back(unit_vector(n, i));
  for (std::size_t i = 0; i < n; ++i) xs.push_back(unit_vector(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) xs.push_back(axpy(unit_vector(n, i), 1, unit_vector(n, j)));
  ys = r.basis();
  for (std::size_t i = 0; i < n; ++i) ys.push_back(unit_vector(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ys.push_back(axpy(unit_vector(n, i), 1, unit_vector(n, j)));
  for (const auto& x : xs)
    for (const auto& y0 : ys) {
      NilpotentBasis b;
      b.x = x;
      b.y.assign(n - 1, QVec());
      b.y[n - 2] = y0;
      for (std::size_t j = n - 2; j >= 1; --j) b.y[j - 1] = g.bracket_of(x, b.y[j]);
      if (is_zero(b.y[0])) continue;
      if (check_nilpotent_basis(g, b)) return b;
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// catalog

inline LieAlgebra direct_sum_R(const LieAlgebra& g) {
  LieAlgebra h(g.dim() + 1);
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      QVec v = g.structure(i, j);
      v.emplace_back(0);
      h.set(i, j, std::move(v));
    }
  return h;
}

inline LieAlgebra abelian_algebra(std::size_t n) { return LieAlgebra(n); }

inline LieAlgebra aff1_algebra() { return LieAlgebra(2).set(0, 1, 1, 1); }

inline LieAlgebra h1_algebra() { return LieAlgebra(3).set(0, 1, 2, 1); }

// h, e, f
inline LieAlgebra sl2_algebra() {
  LieAlgebra g(3);
  g.set(0, 1, 1, 2).set(0, 2, 2, -2).set(1, 2, 0, 1);
  return g;
}

// h, q, p, z with real eigenvalues of ad_h
inline LieAlgebra wh1_algebra() {
  LieAlgebra g(4);
  g.set(0, 1, 1, 1).set(0, 2, 2, -1).set(1, 2, 3, 1);
  return g;
}

// h, q, p, z with ad_h a rotation
inline LieAlgebra wh2_algebra() {
  LieAlgebra g(4);
  g.set(0, 1, 2, 1).set(0, 2, 1, -1).set(1, 2, 3, 1);
  return g;
}

// h, e, f, q, p, z
inline LieAlgebra schrodinger_algebra() {
  LieAlgebra g(6);
  g.set(0, 1, 1, 2).set(0, 2, 2, -2).set(1, 2, 0, 1);
  g.set(0, 3, 3, 1).set(0, 4, 4, -1).set(1, 4, 3, 1).set(2, 3, 4, 1).set(3, 4, 5, 1);
  return g;
}

// e_1..e_{n+1} with [e_1, e_j] = e_{j+1}
inline LieAlgebra L_algebra(std::size_t n) {
  LieAlgebra g(n + 1);
  for (std::size_t j = 1; j < n; ++j) g.set(0, j, j + 1, 1);
  return g;
}

// e_0..e_{n+1}: [e0,e1] = e1, [e0,ej] = -(n+1-j) e_j, [e1,ej] = e_{j+1}
inline LieAlgebra Ltilde_algebra(std::size_t n) {
  LieAlgebra g(n + 2);
  g.set(0, 1, 1, 1);
  for (std::size_t j = 2; j <= n + 1; ++j) {
    const long c = -static_cast<long>(n + 1 - j);
    if (c != 0) g.set(0, j, j, Rational(c));
  }
  for (std::size_t j = 2; j <= n; ++j) g.set(1, j, j + 1, 1);
  return g;
}

// e_0..e_n with [e_0, e_k] = j_k e_k
inline LieAlgebra r_algebra(const std::vector<long>& js) {
  LieAlgebra g(js.size() + 1);
  for (std::size_t k = 0; k < js.size(); ++k)
    if (js[k] != 0) g.set(0, k + 1, k + 1, Rational(js[k]));
  return g;
}

struct CatalogEntry {
  std::string name;
  LieAlgebra algebra;
};

inline const std::vector<CatalogEntry>& concrete_catalog() {
  static const std::vector<CatalogEntry> c{
      {"aff(1)", aff1_algebra()},        {"aff(1)+R", direct_sum_R(aff1_algebra())},
      {"h1", h1_algebra()},              {"sl2", sl2_algebra()},
      {"sl2+R", direct_sum_R(sl2_algebra())}, {"wh1", wh1_algebra()},
      {"wh2", wh2_algebra()},            {"Schrodinger", schrodinger_algebra()},
  };
  return c;
}

struct Identification {
  bool recognized = false;
  std::string name;                 // catalog name, e.g. "wh1", "L_n", "R^n"
  std::string label;                // name with parameters filled in
  std::vector<Rational> params;
  std::string method;               // how the match was established
  Fingerprint fp;
};

namespace detail {

inline bool is_L_pattern(const Fingerprint& f) {
  if (!f.nilpotent || f.dim < 3) return false;
  const int n = f.dim - 1;
  std::vector<int> want{n + 1};
  for (int k = n - 1; k >= 0; --k) want.push_back(k);
  return f.lcs_dims == want;
}

// Rational eigenvalues of ad_x on an invariant subspace, if it diagonalizes over Q.
inline std::optional<std::vector<Rational>> rational_spectrum(const LieAlgebra& g, const QVec& x, const QSubspace& d) {
  const std::size_t m = d.dim();
  QMat a(m, QVec(m));
  for (std::size_t j = 0; j < m; ++j) {
    auto c = d.coordinates(g.bracket_of(x, d.basis()[j]));
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i < m; ++i) a[i][j] = (*c)[i];
  }
  auto roots = rational_roots(charpoly(a));
  std::vector<Rational> eig;
  std::size_t total = 0;
  for (const auto& [lam, mult] : roots) {
    QMat shifted = a;
    for (std::size_t i = 0; i < m; ++i) shifted[i][i] -= lam;
    std::size_t geo = m - rank(shifted);
    if (geo != static_cast<std::size_t>(mult)) return std::nullopt;
    total += geo;
    for (int k = 0; k < mult; ++k) eig.push_back(lam);
  }
  if (total != m) return std::nullopt;
  return eig;
}

inline std::optional<std::vector<Rational>> normalised_r_params(std::vector<Rational> eig) {
  Integer l = 1;
  for (const auto& e : eig) {
    Integer den = e.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  Integer g = 0;
  for (auto& e : eig) {
    e *= Rational(l);
    Integer num = e.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return std::nullopt;
  bool any_pos = false, any_neg = false;
  for (auto& e : eig) {
    e /= Rational(g);
    any_pos |= e > 0;
    any_neg |= e < 0;
  }
  if (any_pos && any_neg) return std::nullopt;
  if (any_neg)
    for (auto& e : eig) e = -e;
  std::sort(eig.begin(), eig.end());
  for (std::size_t i = 1; i < eig.size(); ++i)
    if (eig[i] == eig[i - 1]) return std::nullopt;
  return eig;
}

inline std::string label_with(const std::string& base, const std::vector<Rational>& p) {
  std::string s = base + "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s + ")";
}

}  // namespace detail

inline Identification identify(const LieAlgebra& g) {
  Identification id;
  id.fp = fingerprint(g);
  const std::size_t n = g.dim();
  auto done = [&](std::string name, std::string label, std::vector<Rational> params, std::string method) {
    id.recognized = true;
    id.name = std::move(name);
    id.label = std::move(label);
    id.params = std::move(params);
    id.method = std::move(method);
    return id;
  };
  if (id.fp.derived_dims.size() >= 2 && id.fp.derived_dims[1] == 0)
    return done("R^n", n == 1 ? "R" : "R^" + std::to_string(n), {Rational(static_cast<long>(n))}, "abelian");
  for (const auto& e : concrete_catalog())
    if (e.algebra.dim() == n && fingerprint(e.algebra) == id.fp) return done(e.name, e.name, {}, "fingerprint");
  if (detail::is_L_pattern(id.fp) && nilpotent_basis(g)) {
    const long ln = static_cast<long>(n) - 1;
    return done("L_n", "L_" + std::to_string(ln), {Rational(ln)}, "lcs pattern + explicit basis");
  }
  if (!id.fp.solvable || id.fp.nilpotent) return id;
  const auto der = derived_series(g);
  const QSubspace& d = der[1];
  LieAlgebra dalg = g.restrict_to(d);
  Fingerprint dfp = fingerprint(dalg);
  // candidates x outside the derived algebra
  std::vector<QVec> outside;
  for (std::size_t i = 0; i < n; ++i)
    if (!d.contains(unit_vector(n, i))) outside.push_back(unit_vector(n, i));
  if (d.dim() + 1 == n && detail::is_L_pattern(dfp) && nilpotent_basis(dalg)) {
    for (const auto& x : outside)
      if (detail::rational_spectrum(g, x, d)) {
        const long ln = static_cast<long>(n) - 2;
        return done("Ltilde_n", "Ltilde_" + std::to_string(ln), {Rational(ln)},
                    "derived algebra of L_n type + diagonalizable complement");
      }
  }
  if (dfp.derived_dims.size() >= 2 && dfp.derived_dims[1] == 0) {
    const std::size_t codim = n - d.dim();
    if (codim == 1 || codim == 2) {
      QSubspace z = center(g);
      for (const auto& x : outside) {
        QSubspace span(n, d.basis());
        span.insert(x);
        bool has_zero = false;
        if (codim == 2) {
          // need a central element completing x + D to g
          bool found = false;
          for (const auto& c : z.basis()) {
            QSubspace t = span;
            if (t.insert(c)) {
              found = true;
              break;
            }
          }
          if (!found) continue;
          has_zero = true;
        }
        auto eig = detail::rational_spectrum(g, x, d);
        if (!eig) continue;
        if (std::any_of(eig->begin(), eig->end(), [](const Rational& e) { return e == 0; })) continue;
        auto js = detail::normalised_r_params(*eig);
        if (!js) continue;
        if (has_zero) js->insert(js->begin(), Rational(0));
        return done("r", detail::label_with("r", *js), *js, "abelian derived algebra + rational diagonal action");
      }
    }
  }
  return id;
}

// ---------------------------------------------------------------------------
// LieSpan front ends

inline LieSpan to_lie_span(const LieSpan& b, const QSubspace& s) {
  LieSpan out;
  for (const auto& v : s.basis()) {
    SkewPoly p;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) p += b.basis()[j] * v[j];
    out.insert(p);
  }
  return out;
}

inline std::vector<LieSpan> derived_series(const LieSpan& b) {
  std::vector<LieSpan> out;
  for (const auto& s : derived_series(LieAlgebra::from_span(b))) out.push_back(to_lie_span(b, s));
  return out;
}

inline std::vector<LieSpan> lower_central_series(const LieSpan& b) {
  std::vector<LieSpan> out;
  for (const auto& s : lower_central_series(LieAlgebra::from_span(b))) out.push_back(to_lie_span(b, s));
  return out;
}

inline KillingForm killing_form(const LieSpan& b) { return killing_form(LieAlgebra::from_span(b)); }
inline Fingerprint fingerprint(const LieSpan& b) { return fingerprint(LieAlgebra::from_span(b)); }
inline Identification identify(const LieSpan& b) { return identify(LieAlgebra::from_span(b)); }

// True iff the pair generates all of b.
inline bool nullity_witness(const LieSpan& b, const SkewPoly& x, const SkewPoly& y) {
  if (!b.contains(x) || !b.contains(y)) throw std::invalid_argument("nullity_witness: pair is not inside the algebra");
  auto c = close_within_budget({x, y}, {static_cast<int>(b.dim()) + 1, std::max(1, b.max_degree())});
  return c.verdict == Verdict::Finite && c.span.dim() == b.dim() && c.span.contains_span(b);
}

}  // namespace weyl
