#include "vintagecheck/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "assembler.hpp"
#include "vintagecheck/error.hpp"

namespace vintagecheck {
namespace {

// Row indices sorted by byte-wise (key, level).
std::vector<std::size_t> sorted_rows(const Vintage& v) {
  std::vector<std::size_t> order(v.n_observations());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& keys = v.keys();
  const auto& levels = v.levels();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (int c = keys[a].compare(keys[b]); c != 0) return c < 0;
    return levels[a] < levels[b];
  });
  return order;
}

}  // namespace

Vintage::Vintage(std::vector<std::string> variables,
                 std::vector<std::string> keys, std::vector<std::string> levels,
                 std::vector<std::vector<double>> columns,
                 std::vector<std::string> excluded_columns)
    : variables_(std::move(variables)),
      keys_(std::move(keys)),
      levels_(std::move(levels)),
      columns_(std::move(columns)),
      excluded_(std::move(excluded_columns)) {
  if (keys_.size() != levels_.size()) {
    throw ValidationError("key and level vectors differ in length");
  }
  if (columns_.size() != variables_.size()) {
    throw ValidationError("column count does not match variable count");
  }
  std::set<std::string_view> names;
  for (const auto& name : variables_) {
    if (name.empty()) throw ValidationError("empty variable name");
    if (!names.insert(name).second) {
      throw ValidationError("duplicate variable name '" + name + "'");
    }
  }
  for (std::size_t v = 0; v < columns_.size(); ++v) {
    if (columns_[v].size() != keys_.size()) {
      throw ValidationError("column '" + variables_[v] + "' has " +
                            std::to_string(columns_[v].size()) +
                            " cells, expected " + std::to_string(keys_.size()));
    }
    for (double x : columns_[v]) {
      if (std::isinf(x)) {
        throw ValidationError("infinite value in column '" + variables_[v] +
                              "'");
      }
    }
  }

  const auto order = sorted_rows(*this);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto a = order[i - 1];
    const auto b = order[i];
    if (keys_[a] == keys_[b] && levels_[a] == levels_[b]) {
      throw IntegrityError("duplicate (key, level) tuple (" + keys_[a] + ", " +
                           levels_[a] + ")");
    }
  }
}

std::optional<std::size_t> Vintage::variable_index(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

bool operator==(const Vintage& a, const Vintage& b) {
  if (a.variables_ != b.variables_ || a.keys_ != b.keys_ ||
      a.levels_ != b.levels_ || a.excluded_ != b.excluded_) {
    return false;
  }
  for (std::size_t v = 0; v < a.columns_.size(); ++v) {
    const auto& ca = a.columns_[v];
    const auto& cb = b.columns_[v];
    for (std::size_t r = 0; r < ca.size(); ++r) {
      const bool ma = is_missing(ca[r]);
      const bool mb = is_missing(cb[r]);
      if (ma != mb || (!ma && ca[r] != cb[r])) return false;
    }
  }
  return true;
}

VintageBuilder::VintageBuilder(std::vector<std::string> variables)
    : variables_(std::move(variables)), columns_(variables_.size()) {}

VintageBuilder& VintageBuilder::add_row(
    std::string key, std::string level,
    std::span<const std::optional<double>> values) {
  if (values.size() != variables_.size()) {
    throw ValidationError("row (" + key + ", " + level + ") has " +
                          std::to_string(values.size()) + " cells, expected " +
                          std::to_string(variables_.size()));
  }
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (values[v] && !std::isfinite(*values[v])) {
      throw ValidationError("non-finite value in row (" + key + ", " + level +
                            ")");
    }
    columns_[v].push_back(values[v].value_or(kMissing));
  }
  keys_.push_back(std::move(key));
  levels_.push_back(std::move(level));
  return *this;
}

Vintage VintageBuilder::build() && {
  return Vintage(std::move(variables_), std::move(keys_), std::move(levels_),
                 std::move(columns_));
}

HierarchySpec::HierarchySpec(std::vector<Edge> pairs,
                             std::vector<RankEntry> ranking)
    : pairs_(std::move(pairs)), ranking_(std::move(ranking)) {
  std::stable_sort(ranking_.begin(), ranking_.end(),
                   [](const RankEntry& a, const RankEntry& b) {
                     return a.first < b.first;
                   });
  std::set<std::string_view> ranked;
  for (std::size_t i = 0; i < ranking_.size(); ++i) {
    const auto& [rank, level] = ranking_[i];
    if (rank != static_cast<int>(i) + 1) {
      if (i > 0 && ranking_[i - 1].first == rank) {
        throw ValidationError("duplicate rank " + std::to_string(rank));
      }
      throw ValidationError("ranks must run 1.." +
                            std::to_string(ranking_.size()) +
                            " without gaps; found " + std::to_string(rank));
    }
    if (!ranked.insert(level).second) {
      throw ValidationError("level '" + level + "' ranked more than once");
    }
  }

  std::unordered_map<std::string, std::vector<std::string>> children;
  for (const auto& [parent, child] : pairs_) {
    for (const auto* level : {&parent, &child}) {
      if (!ranked.contains(*level)) {
        throw ValidationError("hierarchy level '" + *level +
                              "' is missing from the ranking");
      }
    }
    children[parent].push_back(child);
  }

  // Iterative DFS with white/grey/black colouring.
  enum class Mark { kNew, kActive, kDone };
  std::unordered_map<std::string, Mark> mark;
  for (const auto& [parent, child] : pairs_) {
    if (mark[parent] != Mark::kNew) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{parent, 0}};
    mark[parent] = Mark::kActive;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& kids = children[node];
      if (next == kids.size()) {
        mark[node] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      const std::string kid = kids[next++];
      switch (mark[kid]) {
        case Mark::kActive:
          throw ValidationError("hierarchy pairs contain a cycle through '" +
                                kid + "'");
        case Mark::kNew:
          mark[kid] = Mark::kActive;
          stack.emplace_back(kid, 0);
          break;
        case Mark::kDone:
          break;
      }
    }
  }
}

std::optional<int> HierarchySpec::rank_of(std::string_view level) const {
  for (const auto& [rank, name] : ranking_) {
    if (name == level) return rank;
  }
  return std::nullopt;
}

bool LevelOrder::operator()(std::string_view a, std::string_view b) const {
  if (spec_ != nullptr) {
    const auto ra = spec_->rank_of(a);
    const auto rb = spec_->rank_of(b);
    if (ra && rb) return *ra < *rb;
    if (ra != rb) return ra.has_value();  // ranked levels first
  }
  return a < b;
}

void Thresholds::validate() const {
  const auto fail = [](const std::string& what) {
    throw ValidationError("threshold out of range: " + what);
  };
  // Written as negated conditions so NaN fails every check.
  if (!(significance > 0.0 && significance < 1.0)) {
    fail("significance must lie in (0, 1)");
  }
  if (!(mre_max > 0.0) || std::isinf(mre_max)) fail("mre_max must be > 0");
  if (!(correlation_min > 0.0 && correlation_min <= 1.0)) {
    fail("correlation_min must lie in (0, 1]");
  }
  if (!(spearman_diff_max > 0.0) || std::isinf(spearman_diff_max)) {
    fail("spearman_diff_max must be > 0");
  }
  if (!(magnitude_low > 0.0 && magnitude_low < 1.0)) {
    fail("magnitude_low must lie in (0, 1)");
  }
  if (!(magnitude_high > 1.0) || std::isinf(magnitude_high)) {
    fail("magnitude_high must be > 1");
  }
}

CleanPair drop_missing(std::span<const double> x_old,
                       std::span<const double> x_new) {
  CleanPair out;
  const std::size_t n = std::min(x_old.size(), x_new.size());
  out.x_old.reserve(n);
  out.x_new.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_missing(x_old[i]) || is_missing(x_new[i])) {
      ++out.dropped;
      continue;
    }
    out.x_old.push_back(x_old[i]);
    out.x_new.push_back(x_new[i]);
  }
  return out;
}

Vintage validate_vintage(const RawTable& raw, std::string_view key_col,
                         std::string_view hier_col) {
  if (raw.header.empty()) throw ConfigError("table has no header");
  detail::VintageAssembler assembler(raw.header, key_col, hier_col);
  std::vector<std::string_view> fields;
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    fields.assign(raw.rows[r].begin(), raw.rows[r].end());
    assembler.add_row(fields, r + 2);  // header is line 1
  }
  return std::move(assembler).finish();
}

std::vector<std::string> union_levels(const Vintage& old_v,
                                      const Vintage& new_v) {
  std::set<std::string> levels(old_v.levels().begin(), old_v.levels().end());
  levels.insert(new_v.levels().begin(), new_v.levels().end());
  return {levels.begin(), levels.end()};
}

JoinPlan plan_join(const Vintage& old_v, const Vintage& new_v) {
  JoinPlan plan;
  const auto a = sorted_rows(old_v);
  const auto b = sorted_rows(new_v);
  const auto cmp = [&](std::size_t i, std::size_t j) {
    if (int c = old_v.keys()[i].compare(new_v.keys()[j]); c != 0) return c;
    return old_v.levels()[i].compare(new_v.levels()[j]);
  };
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t joined = 0;
  while (i < a.size() && j < b.size()) {
    const int c = cmp(a[i], b[j]);
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      plan.by_level[old_v.levels()[a[i]]].push_back({a[i], b[j]});
      ++joined;
      ++i;
      ++j;
    }
  }
  plan.summary.c_old = old_v.n_observations();
  plan.summary.c_new = new_v.n_observations();
  plan.summary.c_joined = joined;
  plan.summary.discarded_old = plan.summary.c_old - joined;
  plan.summary.discarded_new = plan.summary.c_new - joined;
  return plan;
}

std::vector<SharedVariable> shared_variables(const Vintage& old_v,
                                             const Vintage& new_v) {
  std::vector<SharedVariable> out;
  for (std::size_t i = 0; i < old_v.n_variables(); ++i) {
    if (auto j = new_v.variable_index(old_v.variables()[i])) {
      out.push_back({old_v.variables()[i], i, *j});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.name < y.name; });
  return out;
}

PairedVariable materialize(const Vintage& old_v, const Vintage& new_v,
                           const SharedVariable& var, std::string_view level,
                           std::span<const JoinPlan::RowPair> rows) {
  PairedVariable p{var.name, std::string(level), {}, {}};
  const auto col_old = old_v.column(var.old_index);
  const auto col_new = new_v.column(var.new_index);
  p.x_old.reserve(rows.size());
  p.x_new.reserve(rows.size());
  for (const auto& rp : rows) {
    p.x_old.push_back(col_old[rp.old_row]);
    p.x_new.push_back(col_new[rp.new_row]);
  }
  return p;
}

PairingResult pair_vintages(const Vintage& old_v, const Vintage& new_v) {
  const JoinPlan plan = plan_join(old_v, new_v);
  PairingResult out;
  out.summary = plan.summary;
  const std::vector<JoinPlan::RowPair> none;
  for (const auto& var : shared_variables(old_v, new_v)) {
    for (const auto& level : union_levels(old_v, new_v)) {
      auto it = plan.by_level.find(level);
      std::span<const JoinPlan::RowPair> rows =
          it == plan.by_level.end() ? std::span<const JoinPlan::RowPair>(none)
                                    : std::span<const JoinPlan::RowPair>(it->second);
      out.paired.emplace(PairKey{var.name, level},
                         materialize(old_v, new_v, var, level, rows));
    }
  }
  return out;
}

}  // namespace vintagecheck
