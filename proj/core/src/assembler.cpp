#include "assembler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>

#include "vintagecheck/error.hpp"

namespace vintagecheck::detail {
namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

ParsedCell parse_cell(std::string_view text) {
  if (text.empty() || text == "NA") return {CellKind::kMissing};
  std::string_view s = trim(text);
  if (s.empty()) return {CellKind::kText};

  std::string_view body = s;
  if (body.front() == '+') body.remove_prefix(1);
  if (body.empty()) return {CellKind::kText};

  double value = 0.0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ptr != last) return {CellKind::kText};
  if (ec == std::errc::result_out_of_range) {
    // from_chars reports both overflow and underflow here; only overflow is
    // corrupt, underflow is a legitimate (tiny) number.
    std::string copy(body);
    const double v = std::strtod(copy.c_str(), nullptr);
    if (std::isinf(v)) return {CellKind::kCorrupt};
    return {CellKind::kNumber, v};
  }
  if (ec != std::errc{}) return {CellKind::kText};
  if (!std::isfinite(value)) return {CellKind::kCorrupt};
  return {CellKind::kNumber, value};
}

VintageAssembler::VintageAssembler(std::span<const std::string> header,
                                   std::string_view key_col,
                                   std::string_view hier_col)
    : width_(header.size()) {
  if (key_col.empty()) throw ConfigError("key column name is empty");
  const auto find = [&](std::string_view name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  auto key = find(key_col);
  if (!key) {
    throw ConfigError("key column '" + std::string(key_col) +
                      "' not found in header");
  }
  key_index_ = *key;
  if (!hier_col.empty()) {
    level_index_ = find(hier_col);
    if (!level_index_) {
      throw ConfigError("hierarchy column '" + std::string(hier_col) +
                        "' not found in header");
    }
    if (*level_index_ == key_index_) {
      throw ConfigError("key and hierarchy column must differ");
    }
  }

  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i == key_index_ || (level_index_ && i == *level_index_)) continue;
    if (header[i].empty()) {
      throw ValidationError("empty variable name in header column " +
                            std::to_string(i + 1));
    }
    if (!seen.insert(header[i]).second) {
      throw ValidationError("duplicate variable name '" + header[i] + "'");
    }
    columns_.push_back(ColumnState{header[i], i, {}, false, std::nullopt});
  }
}

void VintageAssembler::add_row(std::span<const std::string_view> fields,
                               std::size_t line) {
  if (fields.size() != width_) {
    throw ParseError("line " + std::to_string(line) + ": expected " +
                     std::to_string(width_) + " fields, got " +
                     std::to_string(fields.size()));
  }
  keys_.emplace_back(fields[key_index_]);
  if (level_index_) {
    levels_.emplace_back(fields[*level_index_]);
  } else {
    levels_.emplace_back(kFlatLevel);
  }
  for (auto& col : columns_) {
    if (col.excluded) continue;
    const ParsedCell cell = parse_cell(fields[col.field_index]);
    switch (cell.kind) {
      case CellKind::kNumber:
        col.values.push_back(cell.value);
        break;
      case CellKind::kMissing:
        col.values.push_back(kMissing);
        break;
      case CellKind::kCorrupt:
        if (!col.first_corrupt) {
          col.first_corrupt = "line " + std::to_string(line) + ": corrupt value '" +
                              std::string(fields[col.field_index]) +
                              "' in column '" + col.name + "'";
        }
        col.values.push_back(kMissing);
        break;
      case CellKind::kText:
        col.excluded = true;
        col.values = {};
        break;
    }
  }
}

Vintage VintageAssembler::finish() && {
  std::vector<std::string> variables;
  std::vector<std::vector<double>> columns;
  std::vector<std::string> excluded;
  for (auto& col : columns_) {
    if (col.excluded) {
      excluded.push_back(std::move(col.name));
      continue;
    }
    if (col.first_corrupt) throw ParseError(*col.first_corrupt);
    variables.push_back(std::move(col.name));
    columns.push_back(std::move(col.values));
  }
  return Vintage(std::move(variables), std::move(keys_), std::move(levels_),
                 std::move(columns), std::move(excluded));
}

}  // namespace vintagecheck::detail
