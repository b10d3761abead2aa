#include "vintagecheck/battery.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "vintagecheck/error.hpp"
#include "vintagecheck/version.hpp"

namespace vintagecheck {
namespace {

using stats::MetricValue;

Column text(std::string name) { return {std::move(name), ColumnType::kText}; }
Column count(std::string name) { return {std::move(name), ColumnType::kCount}; }
Column metric(std::string name) {
  return {std::move(name), ColumnType::kMetric};
}

SheetCell cnt(std::size_t n) { return static_cast<std::int64_t>(n); }

MetricRecord base_record(const std::string& variable, const std::string& level,
                         MetricKind kind, const CleanPair& clean) {
  MetricRecord r;
  r.variable = variable;
  r.level = level;
  r.kind = kind;
  r.dropped_positions = clean.dropped;
  r.sample_size = clean.x_old.size();
  return r;
}

std::string render(const MetricValue& v) {
  return v ? format_shortest(*v) : std::string("undefined");
}

// Warning text for an UNDEFINED_WARN record.
Warning warning_for(SheetId sheet, const MetricRecord& r) {
  Warning w{std::string(sheet_name(sheet)), r.variable, r.level, {}};
  if (r.sample_size == 0 && r.kind != MetricKind::kSpearmanDiff) {
    w.message = "no paired observations";
    return w;
  }
  switch (r.kind) {
    case MetricKind::kMagnitudeMin:
    case MetricKind::kMagnitudeMax:
    case MetricKind::kMagnitudeSum:
    case MetricKind::kMagnitudeMean:
    case MetricKind::kMagnitudeMedian:
      w.message = std::string(to_string(r.kind)) + " ratio undefined (old=" +
                  render(r.old_value) + ", new=" + render(r.new_value) +
                  "); assess the magnitude difference manually";
      break;
    case MetricKind::kMre:
      w.message = "every old value is zero; mean relative error undefined";
      break;
    case MetricKind::kPearson:
    case MetricKind::kSpearman:
      w.message = std::string(to_string(r.kind)) +
                  " correlation undefined (constant input or fewer than 2 "
                  "observations)";
      break;
    case MetricKind::kKsPValue:
      w.message = "distribution test undefined";
      break;
    case MetricKind::kSpearmanDiff:
      w.message = "spearman difference undefined for edge " + r.level + " -> " +
                  r.child_level + " (rho_parent=" + render(r.old_value) +
                  ", rho_child=" + render(r.new_value) + ")";
      break;
    case MetricKind::kNaCount:
      break;
  }
  return w;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CellMetrics {
  std::vector<MetricRecord> magnitude;
  MetricRecord mre;
  CorrelationOutcome correlation;
  MetricRecord distribution;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Rethrows the first
// exception raised by any worker.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, jobs), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(n);
            return;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

TestSheet characteristics_test(const Vintage& old_v, const Vintage& new_v) {
  TestSheet sheet;
  sheet.id = SheetId::kCharacteristics;
  sheet.columns = {text("check"), text("old_value"), text("new_value"),
                   text("detail")};
  const auto compare = [&](std::string check, std::size_t a, std::size_t b) {
    SheetRow row;
    row.cells = {std::move(check), std::to_string(a), std::to_string(b),
                 std::string(a == b ? "" : "mismatch")};
    row.verdict = a == b ? Verdict::kPass : Verdict::kFail;
    sheet.rows.push_back(std::move(row));
  };
  compare("variable_count", old_v.n_variables(), new_v.n_variables());
  compare("observation_count", old_v.n_observations(), new_v.n_observations());

  const std::set<std::string> old_names(old_v.variables().begin(),
                                        old_v.variables().end());
  const std::set<std::string> new_names(new_v.variables().begin(),
                                        new_v.variables().end());
  bool any = false;
  for (const auto& name : old_names) {
    if (new_names.contains(name)) continue;
    sheet.rows.push_back({{std::string("variable_names"), name, std::string(),
                           name + " missing from new vintage"},
                          Verdict::kFail});
    any = true;
  }
  for (const auto& name : new_names) {
    if (old_names.contains(name)) continue;
    sheet.rows.push_back({{std::string("variable_names"), std::string(), name,
                           name + " missing from old vintage"},
                          Verdict::kFail});
    any = true;
  }
  if (!any) {
    sheet.rows.push_back({{std::string("variable_names"), std::string(),
                           std::string(), std::string()},
                          Verdict::kPass});
  }
  sheet.summarize();
  return sheet;
}

TestSheet na_test(const Vintage& v, SheetId id) {
  TestSheet sheet;
  sheet.id = id;
  sheet.columns = {text("variable"), text("level"), count("na_count")};
  std::vector<std::size_t> order(v.n_variables());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return v.variables()[a] < v.variables()[b];
  });
  for (std::size_t var : order) {
    std::map<std::string, std::size_t> missing;
    const auto col = v.column(var);
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (is_missing(col[r])) ++missing[v.levels()[r]];
    }
    for (const auto& [level, n] : missing) {
      sheet.rows.push_back(
          {{v.variables()[var], level, cnt(n)}, Verdict::kFail});
    }
  }
  sheet.summarize();
  return sheet;
}

TestSheet discard_test(const JoinSummary& js) {
  TestSheet sheet;
  sheet.id = SheetId::kDiscard;
  sheet.columns = {count("c_old"), count("c_new"), count("c_joined"),
                   count("discarded_old"), count("discarded_new")};
  const bool pass = js.discarded_old == 0 && js.discarded_new == 0;
  sheet.rows.push_back({{cnt(js.c_old), cnt(js.c_new), cnt(js.c_joined),
                         cnt(js.discarded_old), cnt(js.discarded_new)},
                        pass ? Verdict::kPass : Verdict::kFail});
  sheet.summarize();
  return sheet;
}

std::vector<MetricRecord> magnitude_test(const std::string& variable,
                                         const std::string& level,
                                         const CleanPair& clean,
                                         const Thresholds& t) {
  static constexpr std::array kKinds = {
      MetricKind::kMagnitudeMin, MetricKind::kMagnitudeMax,
      MetricKind::kMagnitudeSum, MetricKind::kMagnitudeMean,
      MetricKind::kMagnitudeMedian};
  const auto s_old = stats::summary_stats(clean.x_old);
  const auto s_new = stats::summary_stats(clean.x_new);
  std::vector<MetricRecord> out;
  out.reserve(kKinds.size());
  for (auto kind : kKinds) {
    MetricRecord r = base_record(variable, level, kind, clean);
    if (s_old && s_new) {
      const auto pick = [kind](const stats::SummaryStats& s) {
        switch (kind) {
          case MetricKind::kMagnitudeMin:
            return s.min;
          case MetricKind::kMagnitudeMax:
            return s.max;
          case MetricKind::kMagnitudeSum:
            return s.sum;
          case MetricKind::kMagnitudeMean:
            return s.mean;
          default:
            return s.median;
        }
      };
      r.old_value = pick(*s_old);
      r.new_value = pick(*s_new);
      r.value = stats::magnitude_ratio(*r.old_value, *r.new_value);
    }
    r.verdict = judge(kind, r.value, t);
    out.push_back(std::move(r));
  }
  return out;
}

MetricRecord mre_test(const std::string& variable, const std::string& level,
                      const CleanPair& clean, const Thresholds& t) {
  MetricRecord r = base_record(variable, level, MetricKind::kMre, clean);
  const auto mre = stats::mean_relative_error(clean.x_old, clean.x_new);
  r.value = mre.value;
  r.zero_skipped = mre.zero_skipped;
  r.verdict = judge(r.kind, r.value, t);
  return r;
}

CorrelationOutcome correlation_test(const std::string& variable,
                                    const std::string& level,
                                    const CleanPair& clean,
                                    const Thresholds& t) {
  CorrelationOutcome out;
  out.pearson = base_record(variable, level, MetricKind::kPearson, clean);
  out.pearson.value = stats::pearson(clean.x_old, clean.x_new).value;
  out.pearson.verdict = judge(MetricKind::kPearson, out.pearson.value, t);
  out.spearman = base_record(variable, level, MetricKind::kSpearman, clean);
  out.spearman.value = stats::spearman(clean.x_old, clean.x_new).value;
  out.spearman.verdict = judge(MetricKind::kSpearman, out.spearman.value, t);
  out.pair_verdict = out.pearson.verdict == Verdict::kPass &&
                             out.spearman.verdict == Verdict::kPass
                         ? Verdict::kPass
                         : Verdict::kFail;
  return out;
}

MetricRecord distribution_test(const std::string& variable,
                               const std::string& level,
                               const CleanPair& clean, const Thresholds& t) {
  MetricRecord r = base_record(variable, level, MetricKind::kKsPValue, clean);
  if (auto ks = stats::ks_two_sample(clean.x_old, clean.x_new)) {
    r.value = ks->p_value;
    r.ks_statistic = ks->statistic;
  }
  r.verdict = judge(r.kind, r.value, t);
  return r;
}

std::vector<MetricRecord> magnitude_test(const PairedVariable& paired,
                                         const Thresholds& t) {
  return magnitude_test(paired.variable, paired.level,
                        drop_missing(paired.x_old, paired.x_new), t);
}

MetricRecord mre_test(const PairedVariable& paired, const Thresholds& t) {
  return mre_test(paired.variable, paired.level,
                  drop_missing(paired.x_old, paired.x_new), t);
}

CorrelationOutcome correlation_test(const PairedVariable& paired,
                                    const Thresholds& t) {
  return correlation_test(paired.variable, paired.level,
                          drop_missing(paired.x_old, paired.x_new), t);
}

MetricRecord distribution_test(const PairedVariable& paired,
                               const Thresholds& t) {
  return distribution_test(paired.variable, paired.level,
                           drop_missing(paired.x_old, paired.x_new), t);
}

std::vector<MetricRecord> spearman_diff_test(
    const std::string& variable,
    const std::map<std::string, MetricValue>& rho_by_level,
    const HierarchySpec& h, const Thresholds& t) {
  const auto lookup = [&](const std::string& level) -> MetricValue {
    auto it = rho_by_level.find(level);
    return it == rho_by_level.end() ? std::nullopt : it->second;
  };
  std::vector<MetricRecord> out;
  out.reserve(h.pairs().size());
  for (const auto& [parent, child] : h.pairs()) {
    MetricRecord r;
    r.variable = variable;
    r.level = parent;
    r.child_level = child;
    r.kind = MetricKind::kSpearmanDiff;
    r.old_value = lookup(parent);
    r.new_value = lookup(child);
    if (r.old_value && r.new_value && *r.old_value != 0.0) {
      r.value = (*r.old_value - *r.new_value) / *r.old_value;
    }
    r.verdict = judge(r.kind, r.value, t);
    out.push_back(std::move(r));
  }
  return out;
}

TestSheet hybrid_test(const std::vector<MetricRecord>& records,
                      const Thresholds& t) {
  struct Four {
    MetricValue e, r, rho, s;
  };
  std::map<PairKey, Four> cells;
  for (const auto& rec : records) {
    MetricValue* slot = nullptr;
    auto& f = cells[{rec.variable, rec.level}];
    switch (rec.kind) {
      case MetricKind::kMre:
        slot = &f.e;
        break;
      case MetricKind::kPearson:
        slot = &f.r;
        break;
      case MetricKind::kSpearman:
        slot = &f.rho;
        break;
      case MetricKind::kKsPValue:
        slot = &f.s;
        break;
      default:
        break;
    }
    if (slot != nullptr) *slot = rec.value;
  }

  TestSheet sheet;
  sheet.id = SheetId::kHybrid;
  sheet.columns = {text("variable"), text("level"), metric("E"), metric("r"),
                   metric("rho"), metric("S")};
  for (const auto& [key, f] : cells) {
    // An UNDEFINED metric never satisfies its criterion.
    const bool flagged = f.e && f.r && f.rho && f.s && *f.e >= t.mre_max &&
                         *f.r < t.correlation_min &&
                         *f.rho < t.correlation_min && *f.s < t.significance;
    if (!flagged) continue;
    sheet.rows.push_back(
        {{key.first, key.second, f.e, f.r, f.rho, f.s}, Verdict::kFail});
  }
  sheet.summarize();
  return sheet;
}

TestSheet ranking_test(const std::vector<MetricRecord>& records) {
  struct Counts {
    std::size_t mre = 0, pearson = 0, spearman = 0, ks = 0, spearman_diff = 0;
    std::set<std::string> magnitude_levels;
    std::size_t total() const {
      return mre + pearson + spearman + ks + spearman_diff +
             magnitude_levels.size();
    }
  };
  std::map<std::string, Counts> by_var;
  for (const auto& rec : records) {
    if (rec.verdict != Verdict::kFail) continue;
    auto& c = by_var[rec.variable];
    switch (rec.kind) {
      case MetricKind::kMre:
        ++c.mre;
        break;
      case MetricKind::kPearson:
        ++c.pearson;
        break;
      case MetricKind::kSpearman:
        ++c.spearman;
        break;
      case MetricKind::kKsPValue:
        ++c.ks;
        break;
      case MetricKind::kSpearmanDiff:
        ++c.spearman_diff;
        break;
      case MetricKind::kNaCount:
        break;
      default:
        c.magnitude_levels.insert(rec.level);
        break;
    }
  }

  std::vector<std::pair<std::string, Counts>> ranked;
  for (auto& [name, c] : by_var) {
    if (c.total() > 0) ranked.emplace_back(name, std::move(c));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second.total() > b.second.total();
                   });

  TestSheet sheet;
  sheet.id = SheetId::kRanking;
  sheet.columns = {text("variable"), count("E"),         count("r"),
                   count("rho"),     count("S"),         count("magnitude"),
                   count("spearman_diff"), count("total")};
  for (const auto& [name, c] : ranked) {
    sheet.rows.push_back({{name, cnt(c.mre), cnt(c.pearson), cnt(c.spearman),
                           cnt(c.ks), cnt(c.magnitude_levels.size()),
                           cnt(c.spearman_diff), cnt(c.total())},
                          Verdict::kFail});
  }
  sheet.summarize();
  return sheet;
}

TestSheet records_sheet(SheetId id, const std::vector<MetricRecord>& records) {
  TestSheet sheet;
  sheet.id = id;
  switch (id) {
    case SheetId::kMagnitude:
      sheet.columns = {text("variable"), text("level"),   text("statistic"),
                       metric("old"),    metric("new"),   metric("R"),
                       count("n"),       count("dropped")};
      for (const auto& r : records) {
        sheet.rows.push_back({{r.variable, r.level,
                               std::string(to_string(r.kind)), r.old_value,
                               r.new_value, r.value, cnt(r.sample_size),
                               cnt(r.dropped_positions)},
                              r.verdict});
      }
      break;
    case SheetId::kMre:
      sheet.columns = {text("variable"), text("level"), metric("E"),
                       count("n"), count("zero_skipped"), count("dropped")};
      for (const auto& r : records) {
        sheet.rows.push_back({{r.variable, r.level, r.value, cnt(r.sample_size),
                               cnt(r.zero_skipped), cnt(r.dropped_positions)},
                              r.verdict});
      }
      break;
    case SheetId::kPearson:
    case SheetId::kSpearman:
      sheet.columns = {text("variable"), text("level"),
                       metric(id == SheetId::kPearson ? "r" : "rho"),
                       count("n"), count("dropped")};
      for (const auto& r : records) {
        sheet.rows.push_back({{r.variable, r.level, r.value, cnt(r.sample_size),
                               cnt(r.dropped_positions)},
                              r.verdict});
      }
      break;
    case SheetId::kDistribution:
      sheet.columns = {text("variable"), text("level"), metric("D"),
                       metric("S"),      count("n"),    count("dropped")};
      for (const auto& r : records) {
        sheet.rows.push_back({{r.variable, r.level, r.ks_statistic, r.value,
                               cnt(r.sample_size), cnt(r.dropped_positions)},
                              r.verdict});
      }
      break;
    case SheetId::kSpearmanDiff:
      sheet.columns = {text("variable"),     text("parent_level"),
                       text("child_level"),  metric("rho_parent"),
                       metric("rho_child"),  metric("C")};
      for (const auto& r : records) {
        sheet.rows.push_back({{r.variable, r.level, r.child_level, r.old_value,
                               r.new_value, r.value},
                              r.verdict});
      }
      break;
    default:
      throw std::invalid_argument("records_sheet: sheet " +
                                  std::string(sheet_name(id)) +
                                  " is not built from metric records");
  }
  sheet.summarize();
  return sheet;
}

std::vector<MetricRecord> MetricSet::all() const {
  std::vector<MetricRecord> out;
  out.reserve(magnitude.size() + mre.size() + pearson.size() + spearman.size() +
              distribution.size() + spearman_diff.size());
  for (const auto* part :
       {&magnitude, &mre, &pearson, &spearman, &distribution, &spearman_diff}) {
    out.insert(out.end(), part->begin(), part->end());
  }
  return out;
}

MetricSet compute_metrics(const Vintage& old_v, const Vintage& new_v,
                          const JoinPlan& plan, const HierarchySpec* hierarchy,
                          const Thresholds& t, unsigned jobs) {
  const auto vars = shared_variables(old_v, new_v);
  auto levels = union_levels(old_v, new_v);
  std::stable_sort(levels.begin(), levels.end(), LevelOrder(hierarchy));

  const std::size_t n_items = vars.size() * levels.size();
  std::vector<CellMetrics> cells(n_items);
  const std::vector<JoinPlan::RowPair> none;

  parallel_for(n_items, jobs, [&](std::size_t i) {
    const auto& var = vars[i / levels.size()];
    const auto& level = levels[i % levels.size()];
    auto it = plan.by_level.find(level);
    const std::span<const JoinPlan::RowPair> rows =
        it == plan.by_level.end() ? std::span<const JoinPlan::RowPair>(none)
                                  : std::span<const JoinPlan::RowPair>(it->second);
    const PairedVariable paired = materialize(old_v, new_v, var, level, rows);
    const CleanPair clean = drop_missing(paired.x_old, paired.x_new);
    CellMetrics& cell = cells[i];
    cell.magnitude = magnitude_test(var.name, level, clean, t);
    cell.mre = mre_test(var.name, level, clean, t);
    cell.correlation = correlation_test(var.name, level, clean, t);
    cell.distribution = distribution_test(var.name, level, clean, t);
  });

  MetricSet out;
  out.magnitude.reserve(n_items * 5);
  out.mre.reserve(n_items);
  out.pearson.reserve(n_items);
  out.spearman.reserve(n_items);
  out.distribution.reserve(n_items);
  for (auto& cell : cells) {
    for (auto& r : cell.magnitude) out.magnitude.push_back(std::move(r));
    out.mre.push_back(std::move(cell.mre));
    out.pearson.push_back(std::move(cell.correlation.pearson));
    out.spearman.push_back(std::move(cell.correlation.spearman));
    out.distribution.push_back(std::move(cell.distribution));
  }

  if (hierarchy != nullptr) {
    for (std::size_t v = 0; v < vars.size(); ++v) {
      std::map<std::string, MetricValue> rho;
      for (std::size_t l = 0; l < levels.size(); ++l) {
        rho[levels[l]] = out.spearman[v * levels.size() + l].value;
      }
      auto recs = spearman_diff_test(vars[v].name, rho, *hierarchy, t);
      for (auto& r : recs) out.spearman_diff.push_back(std::move(r));
    }
  }
  return out;
}

TestReport run_battery(const Vintage& old_v, const Vintage& new_v,
                       const HierarchySpec* hierarchy, const Thresholds& t,
                       const Toggles& toggles, const RunOptions& options) {
  t.validate();

  std::vector<TestSheet> sheets;
  std::vector<Warning> warnings;

  for (const auto* v : {&old_v, &new_v}) {
    const char* which = v == &old_v ? "old" : "new";
    for (const auto& col : v->excluded_columns()) {
      warnings.push_back({"ingestion", col, "",
                          std::string("non-numeric column excluded from ") +
                              which + " vintage"});
    }
  }

  if (toggles.characteristics) {
    sheets.push_back(characteristics_test(old_v, new_v));
  }
  if (toggles.na) {
    sheets.push_back(na_test(old_v, SheetId::kNaOld));
    sheets.push_back(na_test(new_v, SheetId::kNaNew));
  }

  const JoinPlan plan = plan_join(old_v, new_v);
  if (toggles.discard) sheets.push_back(discard_test(plan.summary));

  const bool need_metrics = toggles.magnitude || toggles.mre ||
                            toggles.pearson || toggles.spearman ||
                            toggles.distribution || toggles.spearman_diff ||
                            toggles.hybrid || toggles.ranking;
  if (need_metrics) {
    {
      const std::set<std::string> o(old_v.variables().begin(),
                                    old_v.variables().end());
      const std::set<std::string> n(new_v.variables().begin(),
                                    new_v.variables().end());
      for (const auto& name : o) {
        if (!n.contains(name)) {
          warnings.push_back({"pairing", name, "",
                              "only in old vintage; excluded from paired tests"});
        }
      }
      for (const auto& name : n) {
        if (!o.contains(name)) {
          warnings.push_back({"pairing", name, "",
                              "only in new vintage; excluded from paired tests"});
        }
      }
    }

    const MetricSet metrics =
        compute_metrics(old_v, new_v, plan, hierarchy, t, options.jobs);

    const std::pair<SheetId, const std::vector<MetricRecord>*> per_cell[] = {
        {SheetId::kMagnitude, &metrics.magnitude},
        {SheetId::kMre, &metrics.mre},
        {SheetId::kPearson, &metrics.pearson},
        {SheetId::kSpearman, &metrics.spearman},
        {SheetId::kDistribution, &metrics.distribution},
        {SheetId::kSpearmanDiff, &metrics.spearman_diff},
    };
    for (const auto& [id, recs] : per_cell) {
      if (!toggles.enabled(id)) continue;
      if (id == SheetId::kSpearmanDiff && hierarchy == nullptr) continue;
      sheets.push_back(records_sheet(id, *recs));
      for (const auto& r : *recs) {
        if (r.verdict == Verdict::kUndefinedWarn) {
          warnings.push_back(warning_for(id, r));
        }
      }
    }
    if (toggles.hybrid || toggles.ranking) {
      const auto all = metrics.all();
      if (toggles.hybrid) sheets.push_back(hybrid_test(all, t));
      if (toggles.ranking) sheets.push_back(ranking_test(all));
    }
  }

  if (hierarchy != nullptr) {
    std::set<std::string> used(old_v.levels().begin(), old_v.levels().end());
    used.insert(new_v.levels().begin(), new_v.levels().end());
    for (const auto& [parent, child] : hierarchy->pairs()) {
      used.insert(parent);
      used.insert(child);
    }
    for (const auto& [rank, level] : hierarchy->ranking()) {
      if (!used.contains(level)) {
        warnings.push_back({"hierarchy", "", level,
                            "ranked level " + std::to_string(rank) +
                                " is absent from the pairs and the data; rank "
                                "unused"});
      }
    }
  }

  ReportMetadata md;
  md.tool_version = std::string(kVersion);
  md.generated_at =
      options.fixed_clock ? std::string(kFixedTimestamp) : utc_now();
  md.hierarchy_mode = hierarchy != nullptr ? "hierarchical" : "flat";
  md.input_digests = options.input_digests;
  if (md.input_digests.empty()) {
    md.input_digests = {{"legacy", vintage_digest(old_v)},
                        {"target", vintage_digest(new_v)}};
  }
  md.thresholds = t;
  md.toggles = toggles;
  return assemble(std::move(sheets), std::move(md), std::move(warnings),
                  hierarchy);
}

std::string vintage_digest(const Vintage& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix_bytes = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const auto mix_str = [&](const std::string& s) {
    const std::uint64_t n = s.size();
    mix_bytes(&n, sizeof n);
    mix_bytes(s.data(), s.size());
  };
  for (const auto& name : v.variables()) mix_str(name);
  for (std::size_t r = 0; r < v.n_observations(); ++r) {
    mix_str(v.keys()[r]);
    mix_str(v.levels()[r]);
  }
  for (std::size_t c = 0; c < v.n_variables(); ++c) {
    for (double x : v.column(c)) {
      // Canonical NaN so every missing cell hashes the same.
      const std::uint64_t bits =
          is_missing(x) ? 0x7ff8000000000000ULL : std::bit_cast<std::uint64_t>(x);
      mix_bytes(&bits, sizeof bits);
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vintagecheck
