#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vintagecheck/model.hpp"
#include "vintagecheck/sheet.hpp"

namespace vintagecheck {

// Timestamp emitted in fixed-clock mode.
inline constexpr std::string_view kFixedTimestamp = "1970-01-01T00:00:00Z";

struct Warning {
  std::string source;  // sheet or stage that raised it
  std::string variable;
  std::string level;
  std::string message;

  friend bool operator==(const Warning&, const Warning&) = default;
};

struct ReportMetadata {
  std::string tool_version;
  std::string generated_at;
  std::string hierarchy_mode;  // "hierarchical" or "flat"
  std::vector<std::pair<std::string, std::string>> input_digests;
  Thresholds thresholds;
  Toggles toggles;

  friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct TestReport {
  ReportMetadata metadata;
  std::vector<TestSheet> sheets;  // enabled sheets, fixed order
  std::vector<Warning> warnings;
  Verdict overall_verdict = Verdict::kPass;  // kPass or kFail only

  const TestSheet* find(SheetId id) const;

  friend bool operator==(const TestReport&, const TestReport&) = default;
};

// Orders sheets by SheetId, sorts rows by (variable, level rank) or, for the
// ranking sheet, by descending total, recomputes summaries and derives the
// overall verdict (FAIL iff any row is FAIL). `hierarchy` may be null.
TestReport assemble(std::vector<TestSheet> sheets, ReportMetadata metadata,
                    std::vector<Warning> warnings,
                    const HierarchySpec* hierarchy);

// Deterministic JSON document; see docs/report-format.md for the layout.
std::string to_json(const TestReport& report);
// Inverse of to_json. Throws ParseError on malformed input.
TestReport from_json(std::string_view text);

// Throws Error when the file cannot be written.
void write_json(const TestReport& report, const std::filesystem::path& path);

// One CSV per sheet named NN_<sheet>.csv plus warnings.csv. Creates `dir`
// if needed.
void write_csv_sheets(const TestReport& report,
                      const std::filesystem::path& dir);
std::string csv_file_name(SheetId id);
std::string sheet_to_csv(const TestSheet& sheet);

// Decimal rendering used in CSV sheets: 6 significant digits.
std::string format_csv_number(double v);
// Shortest decimal that parses back to exactly `v`.
std::string format_shortest(double v);

}  // namespace vintagecheck
