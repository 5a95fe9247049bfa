#include <gtest/gtest.h>

#include <cstdlib>

#include "weyl/enumerate.hpp"

using namespace weyl;

namespace {

std::map<std::size_t, int> dim_counts(const std::vector<RealizationRecord>& recs) {
  std::map<std::size_t, int> m;
  for (const auto& r : recs) m[r.span.dim()]++;
  return m;
}

}  // namespace

TEST(Enumerate, SchrodingerBasis) {
  const auto recs = enumerate_subalgebras(schrodinger_basis());
  EXPECT_EQ(recs.size(), 22u);
  EXPECT_EQ(dim_counts(recs), (std::map<std::size_t, int>{{1, 6}, {2, 7}, {3, 4}, {4, 4}, {6, 1}}));
}

TEST(Enumerate, SingleUnit) {
  const auto recs = enumerate_subalgebras({unit_i()});
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].catalog.label, "R");
}

TEST(Enumerate, AffinePair) {
  const auto recs = enumerate_subalgebras({gp(1), gm(2)});
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(dim_counts(recs), (std::map<std::size_t, int>{{1, 2}, {2, 1}}));
  EXPECT_EQ(recs.back().catalog.name, "aff(1)");
}

TEST(Enumerate, RecordsAreClosedAndRegenerated) {
  const auto basis = schrodinger_basis();
  for (const auto& r : enumerate_subalgebras(basis)) {
    EXPECT_TRUE(r.span.is_closed());
    std::vector<SkewPoly> g;
    for (auto i : r.generating_subset) g.push_back(basis[i]);
    auto c = close_within_budget(g);
    ASSERT_EQ(c.verdict, Verdict::Finite);
    EXPECT_TRUE(c.span.same_subspace(r.span));
  }
}

TEST(Enumerate, MatchesBruteForceOnAllSubsets) {
  const auto basis = schrodinger_basis();
  for (unsigned mask = 1; mask < 64; ++mask) {
    std::vector<SkewPoly> b;
    for (unsigned k = 0; k < 6; ++k)
      if (mask & (1u << k)) b.push_back(basis[k]);
    EXPECT_TRUE(same_span_sets(enumerate_subalgebras(b), brute_force_subalgebras(b))) << "mask " << mask;
  }
}

TEST(Enumerate, ThreadCountDoesNotChangeOutput) {
  const auto basis = schrodinger_basis();
  ::setenv("WEYL_LIE_THREADS", "1", 1);
  const auto a = enumerate_subalgebras(basis);
  ::setenv("WEYL_LIE_THREADS", "4", 1);
  const auto b = enumerate_subalgebras(basis);
  ::unsetenv("WEYL_LIE_THREADS");
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].generating_subset, b[k].generating_subset);
    EXPECT_EQ(a[k].span.canonical_key(), b[k].span.canonical_key());
  }
}

TEST(Enumerate, RejectsBadBases) {
  EXPECT_THROW(enumerate_subalgebras({gp(1), gp(1) * Rational(2)}), std::invalid_argument);
  EXPECT_THROW(enumerate_subalgebras({number_op(), gp(3)}), std::domain_error);
}

TEST(Glossary, Report) {
  const auto g = glossary_report();
  std::map<std::string, std::size_t> count;
  for (const auto& row : g.rows) count[row.label] = row.subsets.size();
  EXPECT_EQ(count["wh1"], 2u);
  EXPECT_EQ(count["Schrodinger"], 1u);
  for (const char* name : {"aff(1)", "aff(1)+R", "h1", "sl2", "sl2+R", "wh1", "wh2", "Schrodinger"})
    EXPECT_GT(count[name], 0u) << name;
  EXPECT_EQ(g.dims.at(6), 1);
}
