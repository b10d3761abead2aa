#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vintagecheck/model.hpp"

namespace vintagecheck::detail {

enum class CellKind { kNumber, kMissing, kCorrupt, kText };

struct ParsedCell {
  CellKind kind;
  double value = 0.0;
};

// Classifies one variable cell: "" and "NA" are missing, finite decimals
// (integer, fixed or scientific, optional sign, surrounding blanks) are
// numbers, inf/nan/overflowing literals are corrupt, anything else is text.
ParsedCell parse_cell(std::string_view text);

// Accumulates rows of string cells into the column-major Vintage layout.
class VintageAssembler {
 public:
  // Throws ConfigError if key_col or a non-empty hier_col is not in header.
  VintageAssembler(std::span<const std::string> header,
                   std::string_view key_col, std::string_view hier_col);

  // `line` is only used in diagnostics. Throws ParseError on ragged rows.
  void add_row(std::span<const std::string_view> fields, std::size_t line);

  // Throws ParseError for a corrupt cell in a column that stayed numeric,
  // IntegrityError on duplicate (key, level).
  Vintage finish() &&;

 private:
  struct ColumnState {
    std::string name;
    std::size_t field_index;
    std::vector<double> values;
    bool excluded = false;
    std::optional<std::string> first_corrupt;  // diagnostic
  };

  std::size_t width_;
  std::size_t key_index_;
  std::optional<std::size_t> level_index_;
  std::vector<ColumnState> columns_;
  std::vector<std::string> keys_;
  std::vector<std::string> levels_;
};

}  // namespace vintagecheck::detail
