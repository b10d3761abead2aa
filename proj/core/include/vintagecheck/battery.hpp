#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vintagecheck/model.hpp"
#include "vintagecheck/report.hpp"
#include "vintagecheck/sheet.hpp"

namespace vintagecheck {

// --- metadata tests --------------------------------------------------------

TestSheet characteristics_test(const Vintage& old_v, const Vintage& new_v);

// `id` selects the old or new NA sheet. Only cells with missing values get a
// row.
TestSheet na_test(const Vintage& v, SheetId id = SheetId::kNaOld);

TestSheet discard_test(const JoinSummary& js);

// --- paired tests ----------------------------------------------------------
// Each overload taking a PairedVariable drops positions missing on either
// side and records how many were dropped.

std::vector<MetricRecord> magnitude_test(const PairedVariable& paired,
                                         const Thresholds& t);
MetricRecord mre_test(const PairedVariable& paired, const Thresholds& t);

struct CorrelationOutcome {
  MetricRecord pearson;
  MetricRecord spearman;
  Verdict pair_verdict = Verdict::kFail;  // PASS iff both pass
};
CorrelationOutcome correlation_test(const PairedVariable& paired,
                                    const Thresholds& t);

MetricRecord distribution_test(const PairedVariable& paired,
                               const Thresholds& t);

// Variants over already-cleaned vectors.
std::vector<MetricRecord> magnitude_test(const std::string& variable,
                                         const std::string& level,
                                         const CleanPair& clean,
                                         const Thresholds& t);
MetricRecord mre_test(const std::string& variable, const std::string& level,
                      const CleanPair& clean, const Thresholds& t);
CorrelationOutcome correlation_test(const std::string& variable,
                                    const std::string& level,
                                    const CleanPair& clean,
                                    const Thresholds& t);
MetricRecord distribution_test(const std::string& variable,
                               const std::string& level,
                               const CleanPair& clean, const Thresholds& t);

// --- higher-order tests ----------------------------------------------------

// One record per hierarchy edge, C = (rho_parent - rho_child) / rho_parent.
// Levels absent from `rho_by_level` count as UNDEFINED.
std::vector<MetricRecord> spearman_diff_test(
    const std::string& variable,
    const std::map<std::string, MetricValue>& rho_by_level,
    const HierarchySpec& h, const Thresholds& t);

// Rows for (variable, level) cells failing MRE, Pearson, Spearman and KS at
// once, with the four values (Table-2 layout).
TestSheet hybrid_test(const std::vector<MetricRecord>& records,
                      const Thresholds& t);

// Per-variable FAIL counts by kind, descending total; zero-failure variables
// are omitted. Magnitude counts once per (variable, level).
TestSheet ranking_test(const std::vector<MetricRecord>& records);

// Converts metric records into the matching report sheet.
TestSheet records_sheet(SheetId id, const std::vector<MetricRecord>& records);

// --- full run --------------------------------------------------------------

struct RunOptions {
  unsigned jobs = 1;
  bool fixed_clock = false;
  // Overrides the content digests placed in the report metadata.
  std::vector<std::pair<std::string, std::string>> input_digests;
};

// Every per-cell metric of a run, in (variable, level rank, kind) order.
struct MetricSet {
  std::vector<MetricRecord> magnitude;
  std::vector<MetricRecord> mre;
  std::vector<MetricRecord> pearson;
  std::vector<MetricRecord> spearman;
  std::vector<MetricRecord> distribution;
  std::vector<MetricRecord> spearman_diff;

  std::vector<MetricRecord> all() const;
};

// Computes the paired metrics of every shared variable at every level, in
// parallel across `jobs` workers. Spearman differences are computed only
// when `hierarchy` is non-null.
MetricSet compute_metrics(const Vintage& old_v, const Vintage& new_v,
                          const JoinPlan& plan, const HierarchySpec* hierarchy,
                          const Thresholds& t, unsigned jobs);

// Runs every enabled test. A null `hierarchy` is flat mode: the
// Spearman-difference sheet is skipped. Metrics feeding an enabled
// higher-order test are computed even if their own sheets are disabled.
TestReport run_battery(const Vintage& old_v, const Vintage& new_v,
                       const HierarchySpec* hierarchy, const Thresholds& t,
                       const Toggles& toggles, const RunOptions& options = {});

// FNV-1a 64 digest over a vintage's names, keys, levels and cell bits.
std::string vintage_digest(const Vintage& v);

}  // namespace vintagecheck
