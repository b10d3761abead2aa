#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <sstream>

#include "vintagecheck/battery.hpp"
#include "vintagecheck/error.hpp"
#include "vintagecheck/ingestion.hpp"
#include "vintagecheck/report.hpp"
#include "vintagecheck/version.hpp"

namespace vintagecheck::cli {
namespace {

void check_options(const CliOptions& o) {
  if (o.legacy.empty()) throw ConfigError("--legacy is required");
  if (o.target.empty()) throw ConfigError("--target is required");
  if (o.key_col.empty()) throw ConfigError("--key-col is required");
  if (!o.out_json && !o.out_dir) {
    throw ConfigError("at least one of --out-json and --out-dir is required");
  }
  if (o.hier_pairs.has_value() != o.hier_rank.has_value()) {
    throw ConfigError(
        "--hier-pairs and --hier-rank must be given together (omit both for "
        "a flat hierarchy)");
  }
  if (o.jobs == 0) throw ConfigError("--jobs must be at least 1");
}

void print_summary(const TestReport& report, std::ostream& out) {
  char line[128];
  out << "vintagecheck " << report.metadata.tool_version << " ("
      << report.metadata.hierarchy_mode << ")\n";
  std::snprintf(line, sizeof line, "%-18s %8s %8s %10s\n", "sheet", "pass",
                "fail", "undefined");
  out << line;
  for (const auto& sheet : report.sheets) {
    std::snprintf(line, sizeof line, "%-18s %8zu %8zu %10zu\n",
                  std::string(sheet_name(sheet.id)).c_str(), sheet.summary.pass,
                  sheet.summary.fail, sheet.summary.undefined);
    out << line;
  }
  out << "warnings: " << report.warnings.size() << '\n';
  out << "overall: " << to_string(report.overall_verdict) << '\n';
}

}  // namespace

int run(const CliOptions& options, std::ostream& out, std::ostream& err) {
  try {
    check_options(options);
    IngestionConfig config{options.legacy, options.target,
                           std::nullopt,   std::nullopt,
                           std::nullopt,   options.key_col,
                           options.hier_col};
    if (options.hier_pairs) config.hier_pairs_source = *options.hier_pairs;
    if (options.hier_rank) config.hier_ranking_source = *options.hier_rank;
    if (options.thresholds) config.thresholds_source = *options.thresholds;

    const LoadedInputs in = load_inputs(config);
    RunOptions run_options;
    run_options.jobs = options.jobs;
    run_options.fixed_clock = options.fixed_clock;
    const TestReport report =
        run_battery(in.legacy, in.target,
                    in.hierarchy ? &*in.hierarchy : nullptr, in.thresholds,
                    options.toggles, run_options);

    if (options.out_json) write_json(report, *options.out_json);
    if (options.out_dir) write_csv_sheets(report, *options.out_dir);
    print_summary(report, out);
    return report.overall_verdict == Verdict::kPass ? kExitPass : kExitFail;
  } catch (const Error& e) {
    err << "vintagecheck: error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "vintagecheck: internal error: " << e.what() << '\n';
  }
  return kExitError;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CliOptions o;
  CLI::App app{"Regression-test a new vintage of a tabular dataset against "
               "the previous one.",
               "vintagecheck"};
  app.set_version_flag("--version", std::string(kVersion));

  std::string legacy, target, hier_pairs, hier_rank, thresholds, out_json,
      out_dir;
  app.add_option("--legacy", legacy, "Old vintage CSV")->required();
  app.add_option("--target", target, "New vintage CSV")->required();
  app.add_option("--hier-pairs", hier_pairs,
                 "CSV of (parent level, child level) pairs");
  app.add_option("--hier-rank", hier_rank, "CSV of (rank, level) rows");
  app.add_option("--thresholds", thresholds, "CSV of (name, value) rows");
  app.add_option("--key-col", o.key_col, "Name of the key column")->required();
  app.add_option("--hier-col", o.hier_col,
                 "Name of the hierarchy-level column (omit for flat data)");
  app.add_option("--out-json", out_json, "Write the JSON report here");
  app.add_option("--out-dir", out_dir, "Write one CSV per sheet here");
  app.add_flag("--fixed-clock", o.fixed_clock,
               "Zero the report timestamp for reproducible output");
  app.add_option("--jobs", o.jobs, "Worker threads for the paired tests")
      ->check(CLI::PositiveNumber);

  std::vector<std::unique_ptr<bool>> flags;
  for (const auto& f : kToggleFields) {
    flags.push_back(std::make_unique<bool>(false));
    app.add_flag("--no-" + std::string(f.name), *flags.back(),
                 "Omit the " + std::string(f.name) + " sheet(s)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  for (std::size_t i = 0; i < kToggleFields.size(); ++i) {
    if (*flags[i]) o.toggles.*(kToggleFields[i].member) = false;
  }
  o.legacy = legacy;
  o.target = target;
  if (!hier_pairs.empty()) o.hier_pairs = hier_pairs;
  if (!hier_rank.empty()) o.hier_rank = hier_rank;
  if (!thresholds.empty()) o.thresholds = thresholds;
  if (!out_json.empty()) o.out_json = out_json;
  if (!out_dir.empty()) o.out_dir = out_dir;
  return run(o, out, err);
}

}  // namespace vintagecheck::cli
