#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "vintagecheck/model.hpp"

namespace vintagecheck {

// Either a CSV file on disk or an already-parsed in-memory table.
using TableSource = std::variant<std::filesystem::path, RawTable>;

// Reads a vintage. An empty `hier_col` selects flat mode (every row gets
// kFlatLevel). Throws ParseError on unreadable files, ragged rows and
// corrupt (inf/nan) cells, ConfigError when key_col/hier_col are missing,
// IntegrityError on duplicate (key, level).
Vintage read_vintage(const TableSource& source, std::string_view key_col,
                     std::string_view hier_col);

// Pairs: header + (parent, child) rows. Ranking: header + (rank, level) rows.
HierarchySpec read_hierarchy(const TableSource& pairs,
                             const TableSource& ranking);

// Header + (name, value) rows. Names: significance, mre_max,
// correlation_min, spearman_diff_max, magnitude_low, magnitude_high.
// Unlisted names keep their defaults; std::nullopt yields all defaults.
Thresholds read_thresholds(const std::optional<TableSource>& source);

struct IngestionConfig {
  TableSource legacy_source;
  TableSource target_source;
  std::optional<TableSource> hier_pairs_source;
  std::optional<TableSource> hier_ranking_source;
  std::optional<TableSource> thresholds_source;
  std::string key_col;
  std::string hier_col;  // empty: flat mode
};

struct LoadedInputs {
  Vintage legacy;
  Vintage target;
  std::optional<HierarchySpec> hierarchy;  // empty in flat mode
  Thresholds thresholds;
};

// Throws ConfigError when exactly one of the hierarchy sources is set.
LoadedInputs load_inputs(const IngestionConfig& config);

// Writes `v` as a vintage CSV: key, level, then variables; missing cells as
// NA and numbers in shortest round-trip form. Flat vintages still get the
// level column.
void write_vintage_csv(const Vintage& v, std::ostream& out,
                       std::string_view key_col = "Key",
                       std::string_view hier_col = "Level");

}  // namespace vintagecheck
