#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "vintagecheck/sheet.hpp"

namespace vintagecheck::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

struct CliOptions {
  std::filesystem::path legacy;
  std::filesystem::path target;
  std::optional<std::filesystem::path> hier_pairs;
  std::optional<std::filesystem::path> hier_rank;
  std::optional<std::filesystem::path> thresholds;
  std::string key_col;
  std::string hier_col;  // empty: synthetic flat level
  std::optional<std::filesystem::path> out_json;
  std::optional<std::filesystem::path> out_dir;
  Toggles toggles;
  bool fixed_clock = false;
  unsigned jobs = 1;
};

// Loads inputs, runs the battery, writes the requested outputs and prints a
// per-sheet summary to `out`. Returns 0 (PASS), 1 (FAIL) or 2 (input or
// configuration error, one-line diagnostic on `err`).
int run(const CliOptions& options, std::ostream& out, std::ostream& err);

// Parses argv and calls run(). Usage errors also return 2.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace vintagecheck::cli
