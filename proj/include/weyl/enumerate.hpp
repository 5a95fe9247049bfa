#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "weyl/classify.hpp"
#include "weyl/closure.hpp"

namespace weyl {

struct RealizationRecord {
  std::vector<std::size_t> generating_subset;  // 0-based indices into the input basis
  LieSpan span;
  Identification catalog;
};

namespace detail {

inline bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Concurrent-safe set of spans keyed by their reduced echelon form.
class SpanRegistry {
 public:
  // Returns true if the span was not present before.
  bool insert(const LieSpan& s, const std::vector<std::size_t>& gens) {
    std::string key = s.canonical_key();
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) {
      map_.emplace(std::move(key), Entry{s, gens});
      return true;
    }
    if (lex_less(gens, it->second.gens)) it->second.gens = gens;
    return false;
  }

  std::vector<RealizationRecord> records() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<RealizationRecord> out;
    for (const auto& [k, e] : map_) out.push_back({e.gens, e.span, {}});
    return out;
  }

 private:
  struct Entry {
    LieSpan span;
    std::vector<std::size_t> gens;
  };
  mutable std::mutex mu_;
  std::map<std::string, Entry> map_;
};

inline std::size_t thread_cap() {
  if (const char* env = std::getenv("WEYL_LIE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

// Smallest (by size, then lexicographically) subset of the basis generating
// `span`. Keeps reports independent of thread scheduling.
inline std::vector<std::size_t> canonical_subset(const LieSpan& span, const std::vector<SkewPoly>& basis,
                                                 const std::vector<std::size_t>& fallback) {
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (span.contains(basis[i])) inside.push_back(i);
  const std::size_t m = inside.size();
  for (std::size_t k = 1; k <= std::min(m, fallback.size()); ++k) {
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      std::vector<SkewPoly> gens;
      std::vector<std::size_t> idx;
      for (std::size_t j = 0; j < m; ++j)
        if (pick[j]) {
          gens.push_back(basis[inside[j]]);
          idx.push_back(inside[j]);
        }
      if (LieSpan(gens).dim() <= span.dim()) {
        auto c = close_within_budget(gens, {static_cast<int>(span.dim()) + 1, std::max(1, span.max_degree())});
        if (c.verdict == Verdict::Finite && c.span.dim() == span.dim()) return idx;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return fallback;
}

inline void finish(std::vector<RealizationRecord>& recs, const std::vector<SkewPoly>& basis) {
  for (auto& r : recs) {
    std::sort(r.generating_subset.begin(), r.generating_subset.end());
    r.generating_subset = canonical_subset(r.span, basis, r.generating_subset);
    r.catalog = identify(r.span);
  }
  std::sort(recs.begin(), recs.end(), [](const RealizationRecord& a, const RealizationRecord& b) {
    if (a.span.dim() != b.span.dim()) return a.span.dim() < b.span.dim();
    if (a.generating_subset != b.generating_subset) return lex_less(a.generating_subset, b.generating_subset);
    return a.span.canonical_key() < b.span.canonical_key();
  });
}

inline LieSpan checked_ambient(const std::vector<SkewPoly>& basis) {
  LieSpan b;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].is_zero() || !b.insert(basis[i]))
      throw std::invalid_argument("basis element " + std::to_string(i) + " is zero or linearly dependent");
  auto g = close_within_budget(basis);
  if (g.verdict != Verdict::Finite) throw std::domain_error("the basis does not close within budget; nothing to enumerate");
  return g.span;
}

}  // namespace detail

// Subset-generated subalgebras via the recursive S/A/T scheme with span dedup.
class SubalgebraEnumerator {
 public:
  explicit SubalgebraEnumerator(std::vector<SkewPoly> basis) : b_(std::move(basis)), g_(detail::checked_ambient(b_)) {}

  std::vector<RealizationRecord> run() {
    const std::size_t n = b_.size();
    for (std::size_t i = 0; i < n; ++i) reg_.insert(LieSpan({b_[i]}), {i});
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    reg_.insert(g_, all);
    const std::size_t threads = std::min(detail::thread_cap(), n > 1 ? n - 1 : 1);
    auto work = [&](std::size_t j) { proc({b_[j]}, {j}, j + 1); };
    if (threads <= 1) {
      for (std::size_t j = 0; j + 1 < n; ++j) work(j);
    } else {
      std::vector<std::thread> pool;
      std::mutex mu;
      std::size_t next = 0;
      for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
          for (;;) {
            std::size_t j;
            {
              std::lock_guard<std::mutex> lock(mu);
              if (next + 1 >= n) return;
              j = next++;
            }
            work(j);
          }
        });
      for (auto& th : pool) th.join();
    }
    auto recs = reg_.records();
    detail::finish(recs, b_);
    return recs;
  }

 private:
  bool spans_all(const std::vector<SkewPoly>& s) const { return LieSpan(s).dim() == g_.dim(); }

  // Basis of the closure of S u A, S being closed.
  std::vector<SkewPoly> fct1(std::vector<SkewPoly> s, std::vector<SkewPoly> a) const {
    for (;;) {
      std::vector<SkewPoly> sa = s;
      sa.insert(sa.end(), a.begin(), a.end());
      LieSpan span(sa);
      if (span.dim() == g_.dim()) return g_.basis();
      LieSpan h;
      for (const auto& x : s)
        for (const auto& y : a) {
          SkewPoly c = bracket(x, y);
          if (!span.contains(c)) h.insert(c);
        }
      for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t k = j + 1; k < a.size(); ++k) {
          SkewPoly c = bracket(a[j], a[k]);
          if (!span.contains(c)) h.insert(c);
        }
      if (h.empty()) return sa;
      s = std::move(sa);
      a = h.basis();
    }
  }

  void proc(const std::vector<SkewPoly>& s, const std::vector<std::size_t>& used, std::size_t k) {
    const std::size_t n = b_.size();
    if (k >= n) return;
    std::vector<SkewPoly> sk = s;
    sk.push_back(b_[k]);
    if (spans_all(sk)) return;
    if (LieSpan(s).contains(b_[k])) {
      proc(s, used, k + 1);
      return;
    }
    for (std::size_t l = k; l < n; ++l) {
      std::vector<SkewPoly> t = fct1(s, {b_[l]});
      std::vector<std::size_t> u = used;
      u.push_back(l);
      if (reg_.insert(LieSpan(t), u)) proc(t, u, l + 1);
    }
  }

  std::vector<SkewPoly> b_;
  LieSpan g_;
  detail::SpanRegistry reg_;
};

inline std::vector<RealizationRecord> enumerate_subalgebras(const std::vector<SkewPoly>& basis) {
  return SubalgebraEnumerator(basis).run();
}

// Closure of every non-empty subset.
inline std::vector<RealizationRecord> brute_force_subalgebras(const std::vector<SkewPoly>& basis) {
  detail::checked_ambient(basis);
  const std::size_t n = basis.size();
  if (n > 20) throw std::invalid_argument("brute force limited to 20 elements");
  detail::SpanRegistry reg;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    std::vector<SkewPoly> gens;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) {
        gens.push_back(basis[i]);
        idx.push_back(i);
      }
    auto c = close_within_budget(gens);
    if (c.verdict != Verdict::Finite) throw std::domain_error("subset closure did not finish");
    reg.insert(c.span, idx);
  }
  auto recs = reg.records();
  detail::finish(recs, basis);
  return recs;
}

// Equality as sets of subspaces.
inline bool same_span_sets(const std::vector<RealizationRecord>& a, const std::vector<RealizationRecord>& b) {
  std::vector<std::string> ka, kb;
  for (const auto& r : a) ka.push_back(r.span.canonical_key());
  for (const auto& r : b) kb.push_back(r.span.canonical_key());
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

// i, i a^dagger a, g+^{i1}, g-^{i1}, g+^{2 i1}, g-^{2 i1}
inline std::vector<SkewPoly> schrodinger_basis() {
  return {unit_i(), number_op(), gp(1), gm(1), gp(2), gm(2)};
}

struct GlossaryRow {
  std::string label;
  int dim = 0;
  std::vector<std::vector<std::size_t>> subsets;
};

struct GlossaryReport {
  std::vector<RealizationRecord> records;
  std::vector<GlossaryRow> rows;  // sorted by dimension then label
  std::map<int, int> dims;        // dimension -> span count
};

inline GlossaryReport glossary_report() {
  GlossaryReport rep;
  rep.records = enumerate_subalgebras(schrodinger_basis());
  std::map<std::pair<int, std::string>, GlossaryRow> rows;
  for (const auto& r : rep.records) {
    const int d = static_cast<int>(r.span.dim());
    rep.dims[d]++;
    const std::string label = r.catalog.recognized ? r.catalog.label : "unrecognized";
    auto& row = rows[{d, label}];
    row.label = label;
    row.dim = d;
    row.subsets.push_back(r.generating_subset);
  }
  for (auto& [k, row] : rows) rep.rows.push_back(std::move(row));
  return rep;
}

}  // namespace weyl
