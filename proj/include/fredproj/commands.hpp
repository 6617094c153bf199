#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fredproj {

// Subcommand drivers, separated from argv parsing so they are directly
// testable. Exit codes: 0 solved/ok, 2 residual-nonzero, 3 norm-ge-one,
// 4 search-failed, 1 config or I/O error.

struct SolveArgs {
  std::string corpus_name;   // exactly one of corpus_name/config_path
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
};

struct LemmasArgs {
  std::uint64_t seed = 42;
  int trials = 1;
  std::vector<std::string> which;  // empty = every check
};

struct RegionArgs {
  std::string corpus_name;
  std::string config_path;
  std::string k_csv;  // coefficients (dim - m) x m; falls back to k_init / zeros
  std::vector<std::string> overrides;
  int probe = 0;
  std::uint64_t seed = 0;
  std::string out_dir;  // optional; report always goes to stdout
};

struct CorpusArgs {
  std::string action;  // "list" or "dump"
  std::string name;
  std::string out_dir = ".";
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_lemmas(const LemmasArgs& args, std::ostream& out, std::ostream& err);
int cmd_region(const RegionArgs& args, std::ostream& out, std::ostream& err);
int cmd_corpus(const CorpusArgs& args, std::ostream& out, std::ostream& err);

}  // namespace fredproj
