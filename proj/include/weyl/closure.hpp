#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "weyl/igusa.hpp"
#include "weyl/lie_span.hpp"
#include "weyl/qlinalg.hpp"

namespace weyl {

struct Budget {
  int max_dim = 64;
  int max_degree = 24;
};

enum class Verdict { Finite, Infinite, Inconclusive };

inline const char* to_cstr(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "finite";
    case Verdict::Infinite: return "infinite";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

enum class Rule { PerpWithFreeHam, MixedEqAndQuad, MonomialGlossaryViolation, IgusaCertificate, ChainDegreeGrowth };

inline const char* to_cstr(Rule r) {
  switch (r) {
    case Rule::PerpWithFreeHam: return "PerpWithFreeHam";
    case Rule::MixedEqAndQuad: return "MixedEqAndQuad";
    case Rule::MonomialGlossaryViolation: return "MonomialGlossaryViolation";
    case Rule::IgusaCertificate: return "IgusaCertificate";
    case Rule::ChainDegreeGrowth: return "ChainDegreeGrowth";
  }
  return "?";
}

// u[l+1] = [u[l], s[l]]
struct Chain {
  std::vector<SkewPoly> u;
  std::vector<SkewPoly> s;

  std::size_t steps() const { return s.size(); }
  std::vector<int> degrees() const {
    std::vector<int> d;
    for (const auto& x : u) d.push_back(x.degree());
    return d;
  }
};

struct InfinitenessWitness {
  Rule rule = Rule::ChainDegreeGrowth;
  std::string note;
  std::vector<std::size_t> generators;  // indices into the input list
  std::optional<Chain> chain;
  std::optional<IgusaCertificate> igusa;
};

struct ClosureOutcome {
  Verdict verdict = Verdict::Inconclusive;
  LieSpan span;  // closed basis when Finite, partial span when Inconclusive
  std::optional<InfinitenessWitness> witness;
  std::string decided_by;  // "closure", "monomial-glossary", "core-result", ...
  int dim_reached = 0;
  int degree_reached = kDegreeNegInf;
};

// ---------------------------------------------------------------------------
// commutator chains

class AuxPolicy {
 public:
  static AuxPolicy fixed(SkewPoly s) { return AuxPolicy({std::move(s)}, false); }
  // Picks the first pool element that raises the degree, else the first one.
  static AuxPolicy alternate(std::vector<SkewPoly> pool) { return AuxPolicy(std::move(pool), true); }

  std::pair<SkewPoly, SkewPoly> step(const SkewPoly& u) const {
    if (!alternate_ || pool_.size() == 1) return {pool_.front(), bracket(u, pool_.front())};
    for (const auto& s : pool_) {
      SkewPoly v = bracket(u, s);
      if (v.degree() > u.degree()) return {s, v};
    }
    return {pool_.front(), bracket(u, pool_.front())};
  }

 private:
  AuxPolicy(std::vector<SkewPoly> pool, bool alt) : pool_(std::move(pool)), alternate_(alt) {
    if (pool_.empty()) throw std::invalid_argument("auxiliary pool is empty");
  }
  std::vector<SkewPoly> pool_;
  bool alternate_;
};

// Runs up to `steps` brackets, stopping at the first step that fails to raise
// the degree; succeeds when at least `min_steps` increases were recorded.
inline std::optional<Chain> chain_witness(const SkewPoly& seed, const AuxPolicy& policy, int steps, int min_steps = -1) {
  if (steps < 2) throw std::invalid_argument("chain_witness needs at least 2 steps");
  if (min_steps < 0) min_steps = steps;
  if (seed.is_zero()) return std::nullopt;
  Chain c;
  c.u.push_back(seed);
  for (int l = 0; l < steps; ++l) {
    auto [s, v] = policy.step(c.u.back());
    if (v.is_zero() || v.degree() <= c.u.back().degree()) break;
    c.s.push_back(std::move(s));
    c.u.push_back(std::move(v));
  }
  if (static_cast<int>(c.steps()) < min_steps) return std::nullopt;
  return c;
}

// Exact re-verification of bracket relations and strict degree growth.
inline bool verify_chain(const Chain& c, int min_increases) {
  if (c.u.size() != c.s.size() + 1 || static_cast<int>(c.steps()) < min_increases) return false;
  for (std::size_t l = 0; l < c.steps(); ++l) {
    if (!(bracket(c.u[l], c.s[l]) == c.u[l + 1])) return false;
    if (c.u[l + 1].degree() <= c.u[l].degree()) return false;
  }
  return true;
}

// Chain elements are brackets of algebra elements, so seeds and auxiliaries
// may be taken from generators and their first two bracket levels.
inline std::vector<SkewPoly> chain_pool(const std::vector<SkewPoly>& gens, std::size_t cap = 24) {
  LieSpan span;
  std::vector<SkewPoly> pool;
  auto push = [&](const SkewPoly& p) {
    if (pool.size() < cap && !p.is_zero() && span.insert(p)) pool.push_back(p);
  };
  for (const auto& g : gens) push(g);
  const std::size_t n0 = pool.size();
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = i + 1; j < n0; ++j) push(bracket(pool[i], pool[j]));
  const std::size_t n1 = pool.size();
  for (std::size_t i = n0; i < n1; ++i)
    for (std::size_t j = 0; j < n0; ++j) push(bracket(pool[i], pool[j]));
  return pool;
}

inline std::optional<Chain> find_chain(const std::vector<SkewPoly>& gens, int steps = 8, int min_steps = 3) {
  auto pool = chain_pool(gens);
  if (pool.empty()) return std::nullopt;
  auto alt = AuxPolicy::alternate(pool);
  for (const auto& seed : pool) {
    if (auto c = chain_witness(seed, alt, steps, min_steps)) return c;
    for (const auto& s : pool)
      if (auto c = chain_witness(seed, AuxPolicy::fixed(s), steps, min_steps)) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// closure

inline ClosureOutcome close_within_budget(const std::vector<SkewPoly>& gens, const Budget& budget = {}) {
  if (budget.max_dim <= 0 || budget.max_degree <= 0) throw std::invalid_argument("budget must be positive");
  ClosureOutcome out;
  out.decided_by = "closure";
  LieSpan& span = out.span;
  auto track = [&](const SkewPoly& p) { out.degree_reached = std::max(out.degree_reached, p.degree()); };
  auto over = [&](const SkewPoly& p) {
    return static_cast<int>(span.dim()) > budget.max_dim || p.degree() > budget.max_degree;
  };
  for (const auto& g : gens)
    if (!g.is_zero() && span.insert(g)) {
      track(g);
      if (over(g)) {
        out.dim_reached = static_cast<int>(span.dim());
        return out;
      }
    }
  std::size_t lo = 0;
  while (lo < span.dim()) {
    const std::size_t hi = span.dim();
    std::vector<SkewPoly> fresh;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        SkewPoly c = bracket(span.basis()[j], span.basis()[i]);
        if (!span.contains(c)) fresh.push_back(std::move(c));
      }
    std::stable_sort(fresh.begin(), fresh.end(),
                     [](const SkewPoly& a, const SkewPoly& b) { return a.lead() < b.lead(); });
    for (const auto& f : fresh)
      if (span.insert(f)) {
        track(f);
        if (over(f)) {
          out.dim_reached = static_cast<int>(span.dim());
          return out;
        }
      }
    lo = hi;
  }
  out.verdict = Verdict::Finite;
  out.dim_reached = static_cast<int>(span.dim());
  return out;
}

// Kernel of ad(x) restricted to the ambient span.
inline LieSpan centralizer_in(const SkewPoly& x, const LieSpan& ambient) {
  const auto& b = ambient.basis();
  std::vector<SkewPoly> images;
  std::set<SkewKey> keys;
  for (const auto& e : b) {
    images.push_back(bracket(x, e));
    for (const auto& [k, c] : images.back().terms()) keys.insert(k);
  }
  QMat m;
  for (const auto& k : keys) {
    QVec row;
    for (const auto& im : images) row.push_back(im.coeff(k));
    m.push_back(std::move(row));
  }
  LieSpan out;
  for (const auto& v : nullspace(m, b.size())) {
    SkewPoly p;
    for (std::size_t j = 0; j < v.size(); ++j) p += b[j] * v[j];
    out.insert(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// decision rules

inline bool is_single_monomial_multiple(const SkewPoly& p) { return p.size() <= 1; }

inline bool is_free_hamiltonian(const SkewPoly& p) {
  const SkewKey unit{Sign::Plus, {0, 0}}, number{Sign::Plus, tau};
  for (const auto& [k, c] : p.terms())
    if (!(k == unit) && !(k == number)) return false;
  return p.coeff(number) != 0;
}

inline SkewPoly diagonal_part(const SkewPoly& s) { return project(s, Subspace::A0) + project(s, Subspace::Aeq); }
inline SkewPoly off_diagonal_part(const SkewPoly& s) { return s - diagonal_part(s); }

inline SkewPoly top_part(const SkewPoly& s) {
  SkewPoly out;
  const int d = s.degree();
  for (const auto& [k, c] : s.terms())
    if (k.degree() == d) out.add(k, c);
  return out;
}

// Sufficient condition for a pair whose first element is topped by a single
// Kerr-type monomial of degree >= 4 and whose second element has support off the
// diagonal. The non-degeneracy clause is tested by exact cancellation of the
// leading terms of the cross brackets.
inline bool mixed_eq_quad_applies(const SkewPoly& e1, const SkewPoly& e2) {
  if (e1.is_zero() || e2.is_zero()) return false;
  const SkewKey top = e1.lead();
  const int dg = top.degree();
  if (top.sigma != Sign::Plus || top.gamma.alpha != top.gamma.beta || dg < 4) return false;
  if (top_part(e1).size() != 1) return false;
  const Rational c1 = e1.coeff(top);
  const SkewPoly e1ne = off_diagonal_part(e1);
  const SkewPoly e2ne = off_diagonal_part(e2);
  if (e2ne.is_zero()) return false;
  const SkewPoly d2 = diagonal_part(e2);
  if (d2.is_zero()) return true;
  const SkewKey lam = d2.lead();
  const Rational chat1 = d2.coeff(lam);
  const bool c3a = chat1 != 0;
  const bool c3b = !e1ne.is_zero() && lam.degree() + e2ne.degree() == dg + e1ne.degree();
  bool c3c = false;
  if (c3a && c3b) {
    SkewPoly x = bracket(monomial(Sign::Plus, top.gamma, c1), top_part(e2ne)) +
                 bracket(top_part(e1ne), monomial(Sign::Plus, lam.gamma, chat1));
    const int d = dg + e2ne.degree() - 2;
    c3c = x.is_zero() || x.degree() < d;
  }
  return !(c3a && c3b && c3c);
}

inline ClosureOutcome infinite_outcome(Rule rule, std::string decided_by, std::string note,
                                       std::vector<std::size_t> gens_idx, const std::vector<SkewPoly>& gens) {
  ClosureOutcome out;
  out.verdict = Verdict::Infinite;
  out.decided_by = std::move(decided_by);
  InfinitenessWitness w;
  w.rule = rule;
  w.note = std::move(note);
  w.generators = std::move(gens_idx);
  w.chain = find_chain(gens);
  out.witness = std::move(w);
  for (const auto& g : gens)
    if (!g.is_zero()) out.span.insert(g);
  out.dim_reached = static_cast<int>(out.span.dim());
  out.degree_reached = out.span.max_degree();
  return out;
}

inline ClosureOutcome finite_by_closure(const std::vector<SkewPoly>& gens, std::string decided_by) {
  ClosureOutcome out = close_within_budget(gens);
  if (out.verdict != Verdict::Finite)
    throw std::logic_error("closure did not stabilise for a set decided finite (" + decided_by + ")");
  out.decided_by = std::move(decided_by);
  return out;
}

// Exact decision for generator sets made of single monomials.
inline ClosureOutcome decide_monomial_set(const std::vector<SkewPoly>& gens) {
  std::set<SkewKey> keys;
  for (const auto& g : gens) {
    if (!is_single_monomial_multiple(g))
      throw std::invalid_argument("decide_monomial_set: generator " + to_string(g) + " is not a single monomial");
    if (!g.is_zero()) keys.insert(g.lead());
  }
  const SkewKey unit{Sign::Plus, {0, 0}};
  bool diag_only = true, schrodinger = true;
  int perp = 0, non_unit_other = 0;
  for (const auto& k : keys) {
    const Subspace s = subspace_of(k);
    if (s != Subspace::A0 && s != Subspace::Aeq) diag_only = false;
    if (s == Subspace::Aeq || s == Subspace::Aperp) schrodinger = false;
    if (s == Subspace::Aperp)
      ++perp;
    else if (!(k == unit))
      ++non_unit_other;
  }
  if (diag_only) return finite_by_closure(gens, "monomial-glossary");
  if (perp == 1 && non_unit_other == 0) return finite_by_closure(gens, "monomial-glossary");
  if (schrodinger) return finite_by_closure(gens, "monomial-glossary");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].is_zero()) idx.push_back(i);
  // the number operator next to a non-linear monomial is the divergence theorem's case
  if (perp > 0 && keys.count({Sign::Plus, tau}))
    return infinite_outcome(Rule::PerpWithFreeHam, "monomial-glossary", "number operator together with an Aperp monomial",
                            idx, gens);
  return infinite_outcome(Rule::MonomialGlossaryViolation, "monomial-glossary",
                          "not abelian diagonal, not a lone non-linear monomial with i, not within the six low-degree monomials",
                          idx, gens);
}

inline std::optional<std::size_t> free_hamiltonian_index(const std::vector<SkewPoly>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (is_free_hamiltonian(gens[i])) return i;
  return std::nullopt;
}

// Decision for sets containing i(omega a^dagger a + c).
inline ClosureOutcome decide_with_free_hamiltonian(const std::vector<SkewPoly>& gens) {
  auto h = free_hamiltonian_index(gens);
  if (!h)
    throw std::invalid_argument("decide_with_free_hamiltonian: no generator of the form i(omega a^dagger a + c); use lie_closure");
  std::vector<std::size_t> perp, eq, quad;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (has_support(gens[i], Subspace::Aperp)) perp.push_back(i);
    if (has_support(gens[i], Subspace::Aeq)) eq.push_back(i);
    if (has_support(gens[i], Subspace::A1) || has_support(gens[i], Subspace::A2)) quad.push_back(i);
  }
  if (!perp.empty()) {
    perp.insert(perp.begin(), *h);
    return infinite_outcome(Rule::PerpWithFreeHam, "core-result", "a generator has support in Aperp", perp, gens);
  }
  if (!eq.empty() && !quad.empty()) {
    std::vector<std::size_t> idx{*h, eq.front(), quad.front()};
    return infinite_outcome(Rule::MixedEqAndQuad, "core-result", "support in Aeq together with support in A1+A2", idx,
                            gens);
  }
  return finite_by_closure(gens, "core-result");
}

// Full pipeline: decisions first, then sufficient conditions, then closure.
inline ClosureOutcome lie_closure(const std::vector<SkewPoly>& gens_in, const Budget& budget = {}) {
  if (budget.max_dim <= 0 || budget.max_degree <= 0) throw std::invalid_argument("budget must be positive");
  std::vector<SkewPoly> gens;
  for (const auto& g : gens_in)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) {
    ClosureOutcome out;
    out.verdict = Verdict::Finite;
    out.decided_by = "closure";
    return out;
  }
  if (std::all_of(gens.begin(), gens.end(), is_single_monomial_multiple)) return decide_monomial_set(gens);
  if (free_hamiltonian_index(gens)) return decide_with_free_hamiltonian(gens);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (i != j && mixed_eq_quad_applies(gens[i], gens[j]))
        return infinite_outcome(Rule::MixedEqAndQuad, "mixed-eq-quad",
                                "Kerr-topped generator paired with an off-diagonal generator", {i, j}, gens);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[i].degree() <= 2 || gens[j].degree() <= 2) continue;
      if (identity_check(gens[i], gens[j]).verdict == IgusaVerdict::Infinite) {
        auto out = infinite_outcome(Rule::IgusaCertificate, "igusa", "identity frame satisfies all four inequalities",
                                    {i, j}, gens);
        out.witness->igusa = evaluate_identity(gens[i], gens[j]);
        return out;
      }
    }
  if (auto c = find_chain(gens)) {
    ClosureOutcome out;
    out.verdict = Verdict::Infinite;
    out.decided_by = "chain";
    InfinitenessWitness w;
    w.rule = Rule::ChainDegreeGrowth;
    w.note = "strictly increasing degrees along a commutator chain";
    w.chain = std::move(c);
    out.witness = std::move(w);
    for (const auto& g : gens) out.span.insert(g);
    out.dim_reached = static_cast<int>(out.span.dim());
    out.degree_reached = out.span.max_degree();
    return out;
  }
  return close_within_budget(gens, budget);
}

}  // namespace weyl
