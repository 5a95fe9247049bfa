#include <map>
#include <string>

#include "weyl/cli.hpp"
#include "weyl/enumerate.hpp"
#include "weyl/lie_span.hpp"

namespace weyl::cli {

namespace {

struct Entry {
  const char* row;
  const char* col;
  SkewPoly x, y, expected;
};

std::vector<Entry> table1() {
  const SkewPoly i = unit_i(), n = number_op();
  const SkewPoly zero;
  return {
      {"i", "ia'a", i, n, zero},
      {"i", "g+1", i, gp(1), zero},
      {"i", "g-1", i, gm(1), zero},
      {"i", "g+2", i, gp(2), zero},
      {"i", "g-2", i, gm(2), zero},
      {"ia'a", "g+1", n, gp(1), gm(1)},
      {"ia'a", "g-1", n, gm(1), gp(1, 0, -1)},
      {"ia'a", "g+2", n, gp(2), gm(2, 0, 2)},
      {"ia'a", "g-2", n, gm(2), gp(2, 0, -2)},
      {"g+1", "g-1", gp(1), gm(1), i * Rational(-2)},
      {"g+1", "g+2", gp(1), gp(2), gm(1, 0, 2)},
      {"g+1", "g-2", gp(1), gm(2), gp(1, 0, -2)},
      {"g-1", "g+2", gm(1), gp(2), gp(1, 0, 2)},
      {"g-1", "g-2", gm(1), gm(2), gm(1, 0, 2)},
      {"g+2", "g-2", gp(2), gm(2), n * Rational(-8) + i * Rational(-4)},
  };
}

}  // namespace

SelftestResult selftest() {
  SelftestResult r;
  nlohmann::json mismatches = nlohmann::json::array();
  for (const auto& e : table1()) {
    ++r.table1_total;
    const SkewPoly got = bracket(e.x, e.y);
    if (got == e.expected && bracket(e.y, e.x) == e.expected * Rational(-1))
      ++r.table1_passed;
    else
      mismatches.push_back({{"row", e.row}, {"col", e.col}, {"got", to_string(got)}, {"expected", to_string(e.expected)}});
  }
  r.lines.push_back("table1: " + std::to_string(r.table1_passed) + "/" + std::to_string(r.table1_total));

  const GlossaryReport g = glossary_report();
  const std::map<int, int> want_dims{{1, 6}, {2, 7}, {3, 4}, {4, 4}, {6, 1}};
  const std::map<std::string, int> want_labels{{"aff(1)", 2}, {"aff(1)+R", 2}, {"h1", 1},  {"sl2", 1},
                                               {"wh1", 2},    {"wh2", 1},      {"sl2+R", 1}, {"Schrodinger", 1}};
  std::map<std::string, int> labels;
  for (const auto& rec : g.records)
    if (rec.catalog.recognized && rec.catalog.name != "R^n") labels[rec.catalog.label]++;
  r.glossary_ok = g.records.size() == 22 && g.dims == want_dims && labels == want_labels;
  r.lines.push_back("glossary: " + std::to_string(g.records.size()) + " spans, non-abelian classes " +
                    (labels == want_labels ? "match" : "differ") + (r.glossary_ok ? " (ok)" : " (MISMATCH)"));

  nlohmann::json dims, labs;
  for (const auto& [d, c] : g.dims) dims[std::to_string(d)] = c;
  for (const auto& [l, c] : labels) labs[l] = c;
  r.report = {{"report", r.lines},
              {"table1", {{"passed", r.table1_passed}, {"total", r.table1_total}, {"mismatches", mismatches}}},
              {"glossary", {{"spans", g.records.size()}, {"dims", dims}, {"non_abelian", labs}, {"ok", r.glossary_ok}}},
              {"ok", r.ok()}};
  return r;
}

}  // namespace weyl::cli
