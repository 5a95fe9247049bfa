#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace weyl::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

struct SelftestResult {
  int table1_passed = 0;
  int table1_total = 0;
  bool glossary_ok = false;
  std::vector<std::string> lines;
  nlohmann::json report;

  bool ok() const { return table1_passed == table1_total && glossary_ok; }
};

SelftestResult selftest();

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weyl::cli
