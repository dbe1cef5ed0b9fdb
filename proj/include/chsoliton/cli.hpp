#pragma once

#include "chsoliton/families.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chs {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitInvalid = 2 };

/// One line of the regenerated classification tables.
struct TableRow {
  int table = 1;  ///< 1: Einstein and "isometric to" columns; 2: Kähler signatures
  Item item = Item::I;
  std::string instance;  ///< parameters of the sampled instance, empty for infeasible rows
  std::string expected;
  std::string computed;
  bool feasible = true;
  bool ok = true;
};

struct Reproduction {
  int n = 2;
  std::vector<TableRow> rows;
  bool ok() const;
};

/// Regenerates both tables in CH^n from `instances` sampled family members per item.
Reproduction reproduce_tables(int n, int instances = 4, std::uint64_t seed = 0);
std::string reproduction_markdown(const Reproduction& r);

/// Entry point of the command-line tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chs
