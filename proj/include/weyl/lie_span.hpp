#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "weyl/skew_poly.hpp"

namespace weyl {

inline SkewPoly bracket(const SkewPoly& x, const SkewPoly& y) {
  return from_weyl(commutator(to_weyl(x), to_weyl(y)));
}

// Exact subspace of the skew-hermitian algebra: the inserted basis plus a
// reduced row-echelon form over the monomial coordinates.
class LieSpan {
 public:
  LieSpan() = default;
  explicit LieSpan(const std::vector<SkewPoly>& vs) {
    for (const auto& v : vs) insert(v);
  }

  const std::vector<SkewPoly>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  bool empty() const { return basis_.empty(); }

  std::vector<SkewPoly> echelon() const {
    std::vector<SkewPoly> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.v);
    return out;
  }

  SkewPoly reduce(const SkewPoly& v) const { return reduce_tracked(v, nullptr); }
  bool contains(const SkewPoly& v) const { return reduce(v).is_zero(); }

  // Coordinates of v in the inserted basis, or nullopt if v is outside.
  std::optional<std::vector<Rational>> coordinates(const SkewPoly& v) const {
    std::vector<Rational> combo(basis_.size());
    SkewPoly r = reduce_tracked(v, &combo);
    if (!r.is_zero()) return std::nullopt;
    for (auto& c : combo) c = -c;
    return combo;
  }

  bool insert(const SkewPoly& v) {
    std::vector<Rational> combo(basis_.size() + 1);
    SkewPoly r = reduce_tracked(v, &combo);
    if (r.is_zero()) return false;
    combo.back() = 1;
    basis_.push_back(v);
    for (auto& row : rows_) row.combo.emplace_back(0);
    Rational inv = 1 / r.terms().rbegin()->second;
    r *= inv;
    for (auto& c : combo) c *= inv;
    const SkewKey piv = r.lead();
    for (auto& row : rows_) {
      Rational c = row.v.coeff(piv);
      if (c == 0) continue;
      row.v -= r * c;
      for (std::size_t j = 0; j < combo.size(); ++j) row.combo[j] -= c * combo[j];
    }
    Row fresh{std::move(r), std::move(combo)};
    auto pos = std::find_if(rows_.begin(), rows_.end(), [&](const Row& x) { return x.v.lead() < piv; });
    rows_.insert(pos, std::move(fresh));
    return true;
  }

  bool same_subspace(const LieSpan& o) const {
    if (rows_.size() != o.rows_.size()) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!(rows_[i].v == o.rows_[i].v)) return false;
    return true;
  }

  bool contains_span(const LieSpan& o) const {
    for (const auto& b : o.basis_)
      if (!contains(b)) return false;
    return true;
  }

  // Canonical text of the reduced echelon form; equal iff same subspace.
  std::string canonical_key() const {
    std::string k;
    for (const auto& r : rows_) k += to_string(r.v) + ";";
    return k;
  }

  int max_degree() const {
    int d = kDegreeNegInf;
    for (const auto& b : basis_) d = std::max(d, b.degree());
    return d;
  }

  bool is_closed() const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = i + 1; j < basis_.size(); ++j)
        if (!contains(bracket(basis_[i], basis_[j]))) return false;
    return true;
  }

 private:
  struct Row {
    SkewPoly v;                  // lead coefficient 1
    std::vector<Rational> combo; // v = sum combo[j] basis_[j]
  };

  // Returns residual; combo accumulates -(coefficients of rows subtracted).
  SkewPoly reduce_tracked(const SkewPoly& v, std::vector<Rational>* combo) const {
    SkewPoly r = v;
    for (const auto& row : rows_) {
      Rational c = r.coeff(row.v.lead());
      if (c == 0) continue;
      r -= row.v * c;
      if (combo)
        for (std::size_t j = 0; j < row.combo.size(); ++j) (*combo)[j] -= c * row.combo[j];
    }
    return r;
  }

  std::vector<SkewPoly> basis_;
  std::vector<Row> rows_;  // sorted by pivot, descending
};

}  // namespace weyl
