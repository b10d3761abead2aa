#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vintagecheck/model.hpp"
#include "vintagecheck/stats.hpp"

namespace vintagecheck {

using stats::MetricValue;

enum class Verdict { kPass, kFail, kUndefinedWarn };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

enum class MetricKind {
  kNaCount,
  kMagnitudeMin,
  kMagnitudeMax,
  kMagnitudeSum,
  kMagnitudeMean,
  kMagnitudeMedian,
  kMre,
  kPearson,
  kSpearman,
  kKsPValue,
  kSpearmanDiff,
};

std::string_view to_string(MetricKind k);
bool is_magnitude(MetricKind k);

// The pass/fail rule for one metric value. UNDEFINED always warns.
Verdict judge(MetricKind kind, const MetricValue& value, const Thresholds& t);

/// One computed metric for a (variable, level) cell.
struct MetricRecord {
  std::string variable;
  std::string level;
  MetricKind kind = MetricKind::kMre;
  MetricValue value;
  Verdict verdict = Verdict::kUndefinedWarn;
  std::size_t dropped_positions = 0;  // positions missing on either side
  std::size_t sample_size = 0;        // positions backing the value

  // Kind-specific context. Magnitude: the old/new statistic. Spearman
  // difference: rho of the parent/child level, `child_level` names the child.
  MetricValue old_value;
  MetricValue new_value;
  std::string child_level;
  MetricValue ks_statistic;      // D, distribution records only
  std::size_t zero_skipped = 0;  // MRE positions with a zero old value

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

// Report sheets in their fixed output order.
enum class SheetId {
  kCharacteristics,
  kNaOld,
  kNaNew,
  kDiscard,
  kMagnitude,
  kMre,
  kPearson,
  kSpearman,
  kDistribution,
  kSpearmanDiff,
  kHybrid,
  kRanking,
};

inline constexpr std::array kAllSheets = {
    SheetId::kCharacteristics, SheetId::kNaOld,        SheetId::kNaNew,
    SheetId::kDiscard,         SheetId::kMagnitude,    SheetId::kMre,
    SheetId::kPearson,         SheetId::kSpearman,     SheetId::kDistribution,
    SheetId::kSpearmanDiff,    SheetId::kHybrid,       SheetId::kRanking,
};

std::string_view sheet_name(SheetId id);
std::optional<SheetId> parse_sheet_name(std::string_view name);
// Ordinal of the test group a sheet belongs to; used as the CSV file prefix.
int sheet_group(SheetId id);

enum class ColumnType { kText, kCount, kMetric };

std::string_view to_string(ColumnType t);

struct Column {
  std::string name;
  ColumnType type = ColumnType::kText;

  friend bool operator==(const Column&, const Column&) = default;
};

using SheetCell = std::variant<std::string, std::int64_t, MetricValue>;

struct SheetRow {
  std::vector<SheetCell> cells;
  Verdict verdict = Verdict::kPass;

  friend bool operator==(const SheetRow&, const SheetRow&) = default;
};

struct SheetSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t undefined = 0;

  friend bool operator==(const SheetSummary&, const SheetSummary&) = default;
};

struct TestSheet {
  SheetId id = SheetId::kCharacteristics;
  std::vector<Column> columns;
  std::vector<SheetRow> rows;
  SheetSummary summary;

  std::optional<std::size_t> column_index(std::string_view name) const;
  // Recomputes `summary` from the row verdicts.
  void summarize();

  friend bool operator==(const TestSheet&, const TestSheet&) = default;
};

// Which sheets end up in the report. The NA toggle covers both vintages.
struct Toggles {
  bool characteristics = true;
  bool na = true;
  bool discard = true;
  bool magnitude = true;
  bool mre = true;
  bool pearson = true;
  bool spearman = true;
  bool distribution = true;
  bool spearman_diff = true;
  bool hybrid = true;
  bool ranking = true;

  bool enabled(SheetId id) const;
  static Toggles none();

  friend bool operator==(const Toggles&, const Toggles&) = default;
};

// (name, member) table shared by the CLI flags and the JSON metadata.
struct ToggleField {
  std::string_view name;
  bool Toggles::*member;
};
inline constexpr std::array<ToggleField, 11> kToggleFields = {{
    {"characteristics", &Toggles::characteristics},
    {"na", &Toggles::na},
    {"discard", &Toggles::discard},
    {"magnitude", &Toggles::magnitude},
    {"mre", &Toggles::mre},
    {"pearson", &Toggles::pearson},
    {"spearman", &Toggles::spearman},
    {"distribution", &Toggles::distribution},
    {"spearman-diff", &Toggles::spearman_diff},
    {"hybrid", &Toggles::hybrid},
    {"ranking", &Toggles::ranking},
}};

}  // namespace vintagecheck
