#include "vintagecheck/ingestion.hpp"

#include <charconv>
#include <set>

#include "assembler.hpp"
#include "vintagecheck/csv.hpp"
#include "vintagecheck/error.hpp"
#include "vintagecheck/report.hpp"

namespace vintagecheck {
namespace {

RawTable load_table(const TableSource& source) {
  if (const auto* table = std::get_if<RawTable>(&source)) return *table;
  const auto& path = std::get<std::filesystem::path>(source);
  return csv::parse_table(csv::read_file(path));
}

std::string describe(const TableSource& source) {
  if (const auto* path = std::get_if<std::filesystem::path>(&source)) {
    return path->string();
  }
  return "<in-memory table>";
}

void require_width(const RawTable& t, std::size_t width,
                   const std::string& what) {
  if (t.header.size() != width) {
    throw ParseError(what + ": expected " + std::to_string(width) +
                     " columns, header has " + std::to_string(t.header.size()));
  }
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r].size() != width) {
      throw ParseError(what + ": row " + std::to_string(r + 2) + " has " +
                       std::to_string(t.rows[r].size()) + " fields, expected " +
                       std::to_string(width));
    }
  }
}

}  // namespace

Vintage read_vintage(const TableSource& source, std::string_view key_col,
                     std::string_view hier_col) {
  if (const auto* table = std::get_if<RawTable>(&source)) {
    return validate_vintage(*table, key_col, hier_col);
  }
  // Stream records straight into columns; no intermediate string table.
  const auto& path = std::get<std::filesystem::path>(source);
  const std::string text = csv::read_file(path);
  std::optional<detail::VintageAssembler> assembler;
  csv::parse(text, [&](std::span<const std::string_view> fields,
                       std::size_t line) {
    if (!assembler) {
      const std::vector<std::string> header(fields.begin(), fields.end());
      assembler.emplace(header, key_col, hier_col);
      return;
    }
    assembler->add_row(fields, line);
  });
  if (!assembler) throw ConfigError(path.string() + ": file has no header");
  return std::move(*assembler).finish();
}

HierarchySpec read_hierarchy(const TableSource& pairs,
                             const TableSource& ranking) {
  const RawTable p = load_table(pairs);
  const RawTable r = load_table(ranking);
  require_width(p, 2, "hierarchy pairs " + describe(pairs));
  require_width(r, 2, "hierarchy ranking " + describe(ranking));

  std::vector<HierarchySpec::Edge> edges;
  edges.reserve(p.rows.size());
  for (const auto& row : p.rows) edges.emplace_back(row[0], row[1]);

  std::vector<HierarchySpec::RankEntry> ranks;
  ranks.reserve(r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& cell = r.rows[i][0];
    int rank = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), rank);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || rank < 1) {
      throw ParseError("hierarchy ranking row " + std::to_string(i + 2) +
                       ": rank '" + cell + "' is not a positive integer");
    }
    ranks.emplace_back(rank, r.rows[i][1]);
  }
  return HierarchySpec(std::move(edges), std::move(ranks));
}

Thresholds read_thresholds(const std::optional<TableSource>& source) {
  Thresholds t;
  if (!source) return t;
  const RawTable table = load_table(*source);
  require_width(table, 2, "thresholds " + describe(*source));

  const std::pair<std::string_view, double Thresholds::*> fields[] = {
      {"significance", &Thresholds::significance},
      {"mre_max", &Thresholds::mre_max},
      {"correlation_min", &Thresholds::correlation_min},
      {"spearman_diff_max", &Thresholds::spearman_diff_max},
      {"magnitude_low", &Thresholds::magnitude_low},
      {"magnitude_high", &Thresholds::magnitude_high},
  };
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    const auto& name = row[0];
    double Thresholds::*member = nullptr;
    for (const auto& [n, m] : fields) {
      if (n == name) member = m;
    }
    if (member == nullptr) throw ConfigError("unknown threshold '" + name + "'");
    if (!seen.insert(name).second) {
      throw ConfigError("threshold '" + name + "' given twice");
    }
    const auto cell = detail::parse_cell(row[1]);
    if (cell.kind != detail::CellKind::kNumber) {
      throw ParseError("threshold '" + name + "': '" + row[1] +
                       "' is not a finite number");
    }
    t.*member = cell.value;
  }
  t.validate();
  return t;
}

LoadedInputs load_inputs(const IngestionConfig& config) {
  if (config.hier_pairs_source.has_value() !=
      config.hier_ranking_source.has_value()) {
    throw ConfigError(
        "hierarchy pairs and ranking must be given together (or neither for a "
        "flat hierarchy)");
  }
  LoadedInputs in{
      read_vintage(config.legacy_source, config.key_col, config.hier_col),
      read_vintage(config.target_source, config.key_col, config.hier_col),
      std::nullopt, read_thresholds(config.thresholds_source)};
  if (config.hier_pairs_source) {
    in.hierarchy =
        read_hierarchy(*config.hier_pairs_source, *config.hier_ranking_source);
  }
  return in;
}

void write_vintage_csv(const Vintage& v, std::ostream& out,
                       std::string_view key_col, std::string_view hier_col) {
  out << csv::quote(key_col) << ',' << csv::quote(hier_col);
  for (const auto& name : v.variables()) out << ',' << csv::quote(name);
  out << '\n';
  std::string line;
  for (std::size_t r = 0; r < v.n_observations(); ++r) {
    line = csv::quote(v.keys()[r]);
    line += ',';
    line += csv::quote(v.levels()[r]);
    for (std::size_t c = 0; c < v.n_variables(); ++c) {
      line += ',';
      const double x = v.column(c)[r];
      line += is_missing(x) ? std::string("NA") : format_shortest(x);
    }
    line += '\n';
    out << line;
  }
}

}  // namespace vintagecheck
