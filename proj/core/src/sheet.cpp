#include "vintagecheck/sheet.hpp"

#include <algorithm>

namespace vintagecheck {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "PASS";
    case Verdict::kFail:
      return "FAIL";
    case Verdict::kUndefinedWarn:
      return "UNDEFINED_WARN";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (auto v : {Verdict::kPass, Verdict::kFail, Verdict::kUndefinedWarn}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::string_view to_string(MetricKind k) {
  switch (k) {
    case MetricKind::kNaCount:
      return "na_count";
    case MetricKind::kMagnitudeMin:
      return "min";
    case MetricKind::kMagnitudeMax:
      return "max";
    case MetricKind::kMagnitudeSum:
      return "sum";
    case MetricKind::kMagnitudeMean:
      return "mean";
    case MetricKind::kMagnitudeMedian:
      return "median";
    case MetricKind::kMre:
      return "mre";
    case MetricKind::kPearson:
      return "pearson";
    case MetricKind::kSpearman:
      return "spearman";
    case MetricKind::kKsPValue:
      return "ks_p";
    case MetricKind::kSpearmanDiff:
      return "spearman_diff";
  }
  return "?";
}

bool is_magnitude(MetricKind k) {
  return k == MetricKind::kMagnitudeMin || k == MetricKind::kMagnitudeMax ||
         k == MetricKind::kMagnitudeSum || k == MetricKind::kMagnitudeMean ||
         k == MetricKind::kMagnitudeMedian;
}

Verdict judge(MetricKind kind, const MetricValue& value, const Thresholds& t) {
  if (!value) return Verdict::kUndefinedWarn;
  const double v = *value;
  bool pass = false;
  switch (kind) {
    case MetricKind::kNaCount:
      pass = v == 0.0;
      break;
    case MetricKind::kMagnitudeMin:
    case MetricKind::kMagnitudeMax:
    case MetricKind::kMagnitudeSum:
    case MetricKind::kMagnitudeMean:
    case MetricKind::kMagnitudeMedian:
      pass = t.magnitude_low < v && v < t.magnitude_high;
      break;
    case MetricKind::kMre:
      pass = v < t.mre_max;
      break;
    case MetricKind::kPearson:
    case MetricKind::kSpearman:
      pass = v >= t.correlation_min;
      break;
    case MetricKind::kKsPValue:
      pass = !(v < t.significance);
      break;
    case MetricKind::kSpearmanDiff:
      pass = -t.spearman_diff_max < v && v < t.spearman_diff_max;
      break;
  }
  return pass ? Verdict::kPass : Verdict::kFail;
}

std::string_view sheet_name(SheetId id) {
  switch (id) {
    case SheetId::kCharacteristics:
      return "characteristics";
    case SheetId::kNaOld:
      return "na_old";
    case SheetId::kNaNew:
      return "na_new";
    case SheetId::kDiscard:
      return "discard";
    case SheetId::kMagnitude:
      return "magnitude";
    case SheetId::kMre:
      return "mre";
    case SheetId::kPearson:
      return "pearson";
    case SheetId::kSpearman:
      return "spearman";
    case SheetId::kDistribution:
      return "distribution";
    case SheetId::kSpearmanDiff:
      return "spearman_diff";
    case SheetId::kHybrid:
      return "hybrid";
    case SheetId::kRanking:
      return "ranking";
  }
  return "?";
}

std::optional<SheetId> parse_sheet_name(std::string_view name) {
  for (auto id : kAllSheets) {
    if (sheet_name(id) == name) return id;
  }
  return std::nullopt;
}

int sheet_group(SheetId id) {
  switch (id) {
    case SheetId::kCharacteristics:
      return 0;
    case SheetId::kNaOld:
    case SheetId::kNaNew:
      return 1;
    case SheetId::kDiscard:
      return 2;
    case SheetId::kMagnitude:
      return 3;
    case SheetId::kMre:
      return 4;
    case SheetId::kPearson:
    case SheetId::kSpearman:
      return 5;
    case SheetId::kDistribution:
      return 6;
    case SheetId::kSpearmanDiff:
      return 7;
    case SheetId::kHybrid:
      return 8;
    case SheetId::kRanking:
      return 9;
  }
  return 99;
}

std::string_view to_string(ColumnType t) {
  switch (t) {
    case ColumnType::kText:
      return "text";
    case ColumnType::kCount:
      return "count";
    case ColumnType::kMetric:
      return "metric";
  }
  return "?";
}

std::optional<std::size_t> TestSheet::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  return std::nullopt;
}

void TestSheet::summarize() {
  summary = {};
  for (const auto& row : rows) {
    switch (row.verdict) {
      case Verdict::kPass:
        ++summary.pass;
        break;
      case Verdict::kFail:
        ++summary.fail;
        break;
      case Verdict::kUndefinedWarn:
        ++summary.undefined;
        break;
    }
  }
}

bool Toggles::enabled(SheetId id) const {
  switch (id) {
    case SheetId::kCharacteristics:
      return characteristics;
    case SheetId::kNaOld:
    case SheetId::kNaNew:
      return na;
    case SheetId::kDiscard:
      return discard;
    case SheetId::kMagnitude:
      return magnitude;
    case SheetId::kMre:
      return mre;
    case SheetId::kPearson:
      return pearson;
    case SheetId::kSpearman:
      return spearman;
    case SheetId::kDistribution:
      return distribution;
    case SheetId::kSpearmanDiff:
      return spearman_diff;
    case SheetId::kHybrid:
      return hybrid;
    case SheetId::kRanking:
      return ranking;
  }
  return false;
}

Toggles Toggles::none() {
  Toggles t;
  for (const auto& f : kToggleFields) t.*(f.member) = false;
  return t;
}

}  // namespace vintagecheck
