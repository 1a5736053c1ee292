#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace coolctl {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;  // expected-vs-actual on failure, summary on success
};

struct ReproductionReport {
  std::vector<Check> checks;
  bool all_passed() const;
  /// One "PASS name" / "FAIL name: detail" line per check.
  void print(std::ostream& out) const;
};

/// Rebuilds the memory from <data_dir>/table1.csv and re-derives every
/// published number: transcript vectors, anchor rows, net inputs, decisions,
/// the runtime-training update from <data_dir>/table2.csv, and the Table 1
/// recall count. Throws io::FileError / io::ParseError when a data file is
/// missing or malformed.
ReproductionReport run_reproduction(const std::filesystem::path& data_dir);

}  // namespace coolctl
