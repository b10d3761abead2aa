#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vintagecheck {

// Level assigned to every row when a dataset has no hierarchy column.
inline constexpr std::string_view kFlatLevel = "__flat__";

// Cells are stored as doubles; a quiet NaN marks a missing observation.
// Ingestion rejects NaN/inf literals, so NaN never carries a data value.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) noexcept { return std::isnan(v); }

// Header plus string cells, the in-memory counterpart of a CSV file.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// One version of a dataset: rows identified by (key, level), each carrying
/// one numeric-or-missing cell per variable. Storage is column-major.
///
/// A Vintage is immutable once built and may be shared freely between
/// threads.
class Vintage {
 public:
  Vintage() = default;

  // Builds from column-major storage. `columns[v][r]` is the cell of
  // variable v in row r, kMissing for a missing cell. Throws IntegrityError
  // on duplicate (key, level), ValidationError on shape or name problems or
  // infinite cells.
  Vintage(std::vector<std::string> variables, std::vector<std::string> keys,
          std::vector<std::string> levels,
          std::vector<std::vector<double>> columns,
          std::vector<std::string> excluded_columns = {});

  std::size_t n_variables() const noexcept { return variables_.size(); }
  std::size_t n_observations() const noexcept { return keys_.size(); }

  const std::vector<std::string>& variables() const noexcept {
    return variables_;
  }
  const std::vector<std::string>& keys() const noexcept { return keys_; }
  const std::vector<std::string>& levels() const noexcept { return levels_; }

  // Non-numeric columns dropped during validation, in header order.
  const std::vector<std::string>& excluded_columns() const noexcept {
    return excluded_;
  }

  std::span<const double> column(std::size_t var) const {
    return columns_.at(var);
  }
  std::optional<std::size_t> variable_index(std::string_view name) const;

  std::optional<double> cell(std::size_t row, std::size_t var) const {
    const double v = columns_.at(var).at(row);
    if (is_missing(v)) return std::nullopt;
    return v;
  }

  // Missing-aware equality: two missing cells compare equal.
  friend bool operator==(const Vintage& a, const Vintage& b);

 private:
  std::vector<std::string> variables_;
  std::vector<std::string> keys_;
  std::vector<std::string> levels_;
  std::vector<std::vector<double>> columns_;
  std::vector<std::string> excluded_;
};

// Row-wise convenience builder, mainly for in-memory construction and tests.
class VintageBuilder {
 public:
  explicit VintageBuilder(std::vector<std::string> variables);

  VintageBuilder& add_row(std::string key, std::string level,
                          std::span<const std::optional<double>> values);
  VintageBuilder& add_row(std::string key, std::string level,
                          std::initializer_list<std::optional<double>> values) {
    return add_row(std::move(key), std::move(level),
                   std::span<const std::optional<double>>(values.begin(),
                                                          values.size()));
  }

  Vintage build() &&;

 private:
  std::vector<std::string> variables_;
  std::vector<std::string> keys_;
  std::vector<std::string> levels_;
  std::vector<std::vector<double>> columns_;
};

/// Parent->child level edges plus the ranking used to sort report rows.
/// The ranking only orders output; the edges alone define the hierarchy.
class HierarchySpec {
 public:
  using Edge = std::pair<std::string, std::string>;
  using RankEntry = std::pair<int, std::string>;

  HierarchySpec() = default;
  // Throws ValidationError when ranks are not 1..J, a level is ranked twice,
  // an edge names an unranked level, or the edges contain a cycle.
  HierarchySpec(std::vector<Edge> pairs, std::vector<RankEntry> ranking);

  const std::vector<Edge>& pairs() const noexcept { return pairs_; }
  // Sorted by rank.
  const std::vector<RankEntry>& ranking() const noexcept { return ranking_; }
  std::optional<int> rank_of(std::string_view level) const;
  std::size_t n_levels() const noexcept { return ranking_.size(); }

  friend bool operator==(const HierarchySpec&, const HierarchySpec&) = default;

 private:
  std::vector<Edge> pairs_;
  std::vector<RankEntry> ranking_;
};

// Orders level names by hierarchy rank; unranked levels (or every level,
// without a hierarchy) follow in byte-wise order.
class LevelOrder {
 public:
  LevelOrder() = default;
  explicit LevelOrder(const HierarchySpec* spec) : spec_(spec) {}
  bool operator()(std::string_view a, std::string_view b) const;

 private:
  const HierarchySpec* spec_ = nullptr;
};

struct Thresholds {
  double significance = 0.05;
  double mre_max = 0.2;
  double correlation_min = 0.8;
  double spearman_diff_max = 0.1;
  double magnitude_low = 0.1;
  double magnitude_high = 10.0;

  // Throws ValidationError naming the first violated bound.
  void validate() const;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct JoinSummary {
  std::size_t c_old = 0;
  std::size_t c_new = 0;
  std::size_t c_joined = 0;
  std::size_t discarded_old = 0;  // c_old - c_joined
  std::size_t discarded_new = 0;  // c_new - c_joined

  friend bool operator==(const JoinSummary&, const JoinSummary&) = default;
};

// Row indices of the inner join on (key, level), grouped by level. Within a
// level the pairs follow ascending byte-wise key order.
struct JoinPlan {
  struct RowPair {
    std::size_t old_row;
    std::size_t new_row;
  };
  std::map<std::string, std::vector<RowPair>> by_level;
  JoinSummary summary;
};

// Position-aligned old/new observations of one (variable, level) cell.
// Missing cells survive pairing as kMissing.
struct PairedVariable {
  std::string variable;
  std::string level;
  std::vector<double> x_old;
  std::vector<double> x_new;
};

// The same vectors with every position missing on either side removed.
struct CleanPair {
  std::vector<double> x_old;
  std::vector<double> x_new;
  std::size_t dropped = 0;
};

CleanPair drop_missing(std::span<const double> x_old,
                       std::span<const double> x_new);

using PairKey = std::pair<std::string, std::string>;  // (variable, level)

struct PairingResult {
  std::map<PairKey, PairedVariable> paired;
  JoinSummary summary;
};

// Builds a Vintage from a raw table, stripping the key and level columns.
// Cells "" and "NA" are missing; a column with any other non-numeric cell is
// excluded and listed in excluded_columns(). An empty `hier_col` assigns
// kFlatLevel to every row.
Vintage validate_vintage(const RawTable& raw, std::string_view key_col,
                         std::string_view hier_col);

// Levels present in either vintage, unordered.
std::vector<std::string> union_levels(const Vintage& old_v,
                                      const Vintage& new_v);

JoinPlan plan_join(const Vintage& old_v, const Vintage& new_v);

// Variables present in both vintages, byte-wise ascending, as
// (name, old index, new index).
struct SharedVariable {
  std::string name;
  std::size_t old_index;
  std::size_t new_index;
};
std::vector<SharedVariable> shared_variables(const Vintage& old_v,
                                             const Vintage& new_v);

PairedVariable materialize(const Vintage& old_v, const Vintage& new_v,
                           const SharedVariable& var, std::string_view level,
                           std::span<const JoinPlan::RowPair> rows);

// Inner join on exact (key, level). Every level seen in either vintage gets
// a PairedVariable for each shared variable, empty when nothing joined.
PairingResult pair_vintages(const Vintage& old_v, const Vintage& new_v);

}  // namespace vintagecheck
