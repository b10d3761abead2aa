#include "vintagecheck/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "vintagecheck/csv.hpp"
#include "vintagecheck/error.hpp"

namespace vintagecheck {
namespace {

using ojson = nlohmann::ordered_json;

// Minimal streaming emitter; key order is exactly the call order.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    separator();
    string(k);
    out_ += ':';
    after_key_ = true;
  }

  void value(std::string_view s) {
    separator();
    string(s);
  }
  void value(const char* s) { value(std::string_view(s)); }
  void value(std::int64_t n) {
    separator();
    out_ += std::to_string(n);
  }
  void value(std::size_t n) { value(static_cast<std::int64_t>(n)); }
  void value(bool b) {
    separator();
    out_ += b ? "true" : "false";
  }
  void value(double d) {
    separator();
    // A bare "-0" would parse back as the integer 0 and lose its sign.
    out_ += (d == 0 && std::signbit(d)) ? "-0.0" : format_shortest(d);
  }
  void value(const MetricValue& v) {
    if (v) {
      value(*v);
    } else {
      value(std::string_view("undefined"));
    }
  }

 private:
  void open(char c) {
    separator();
    out_ += c;
    first_.push_back(true);
  }
  void close(char c) {
    first_.pop_back();
    out_ += c;
  }
  void separator() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
    }
  }
  void string(std::string_view s) {
    out_ += '"';
    for (unsigned char c : s) {
      switch (c) {
        case '"':
          out_ += "\\\"";
          break;
        case '\\':
          out_ += "\\\\";
          break;
        case '\n':
          out_ += "\\n";
          break;
        case '\r':
          out_ += "\\r";
          break;
        case '\t':
          out_ += "\\t";
          break;
        default:
          if (c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += static_cast<char>(c);
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

struct ThresholdField {
  std::string_view name;
  double Thresholds::*member;
};
constexpr std::array<ThresholdField, 6> kThresholdFields = {{
    {"significance", &Thresholds::significance},
    {"mre_max", &Thresholds::mre_max},
    {"correlation_min", &Thresholds::correlation_min},
    {"spearman_diff_max", &Thresholds::spearman_diff_max},
    {"magnitude_low", &Thresholds::magnitude_low},
    {"magnitude_high", &Thresholds::magnitude_high},
}};

std::string csv_cell(const SheetCell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return csv::quote(*s);
  if (const auto* n = std::get_if<std::int64_t>(&cell)) return std::to_string(*n);
  const auto& m = std::get<MetricValue>(cell);
  return m ? format_csv_number(*m) : std::string("undefined");
}

const std::string& text_cell(const SheetRow& row, std::size_t i) {
  static const std::string empty;
  if (const auto* s = std::get_if<std::string>(&row.cells[i])) return *s;
  return empty;
}

std::int64_t count_cell(const SheetRow& row, std::size_t i) {
  if (const auto* n = std::get_if<std::int64_t>(&row.cells[i])) return *n;
  return 0;
}

void sort_rows(TestSheet& sheet, const HierarchySpec* hierarchy) {
  const auto var = sheet.column_index("variable");
  if (!var) return;
  if (sheet.id == SheetId::kRanking) {
    const auto total = sheet.column_index("total");
    std::stable_sort(sheet.rows.begin(), sheet.rows.end(),
                     [&](const SheetRow& a, const SheetRow& b) {
                       const auto ta = count_cell(a, *total);
                       const auto tb = count_cell(b, *total);
                       if (ta != tb) return ta > tb;
                       return text_cell(a, *var) < text_cell(b, *var);
                     });
    return;
  }
  auto level = sheet.column_index("level");
  if (!level) level = sheet.column_index("parent_level");
  const auto child = sheet.column_index("child_level");
  const LevelOrder order(hierarchy);
  std::stable_sort(
      sheet.rows.begin(), sheet.rows.end(),
      [&](const SheetRow& a, const SheetRow& b) {
        const auto& va = text_cell(a, *var);
        const auto& vb = text_cell(b, *var);
        if (va != vb) return va < vb;
        for (const auto& col : {level, child}) {
          if (!col) continue;
          const auto& la = text_cell(a, *col);
          const auto& lb = text_cell(b, *col);
          if (order(la, lb)) return true;
          if (order(lb, la)) return false;
        }
        return false;
      });
}

[[noreturn]] void bad_json(const std::string& what) {
  throw ParseError("malformed report JSON: " + what);
}

MetricValue metric_from(const ojson& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "undefined") bad_json("unexpected metric string");
    return std::nullopt;
  }
  if (!j.is_number()) bad_json("metric is not a number");
  return j.get<double>();
}

Verdict verdict_from(const ojson& j) {
  auto v = parse_verdict(j.get<std::string>());
  if (!v) bad_json("unknown verdict");
  return *v;
}

}  // namespace

std::string format_shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "0";
  return std::string(buf, ptr);
}

std::string format_csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const TestSheet* TestReport::find(SheetId id) const {
  for (const auto& s : sheets) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

TestReport assemble(std::vector<TestSheet> sheets, ReportMetadata metadata,
                    std::vector<Warning> warnings,
                    const HierarchySpec* hierarchy) {
  std::stable_sort(sheets.begin(), sheets.end(),
                   [](const TestSheet& a, const TestSheet& b) {
                     return a.id < b.id;
                   });
  TestReport report;
  report.metadata = std::move(metadata);
  report.warnings = std::move(warnings);
  report.overall_verdict = Verdict::kPass;
  for (auto& sheet : sheets) {
    sort_rows(sheet, hierarchy);
    sheet.summarize();
    if (sheet.summary.fail > 0) report.overall_verdict = Verdict::kFail;
  }
  report.sheets = std::move(sheets);
  return report;
}

std::string to_json(const TestReport& report) {
  JsonWriter w;
  w.begin_object();

  const auto& md = report.metadata;
  w.key("metadata");
  w.begin_object();
  w.key("tool_version");
  w.value(md.tool_version);
  w.key("generated_at");
  w.value(md.generated_at);
  w.key("hierarchy_mode");
  w.value(md.hierarchy_mode);
  w.key("input_digests");
  w.begin_object();
  for (const auto& [name, digest] : md.input_digests) {
    w.key(name);
    w.value(digest);
  }
  w.end_object();
  w.key("thresholds");
  w.begin_object();
  for (const auto& f : kThresholdFields) {
    w.key(f.name);
    w.value(md.thresholds.*(f.member));
  }
  w.end_object();
  w.key("toggles");
  w.begin_object();
  for (const auto& f : kToggleFields) {
    w.key(f.name);
    w.value(md.toggles.*(f.member));
  }
  w.end_object();
  w.end_object();

  w.key("overall_verdict");
  w.value(to_string(report.overall_verdict));

  w.key("warnings");
  w.begin_array();
  for (const auto& warn : report.warnings) {
    w.begin_object();
    w.key("source");
    w.value(warn.source);
    w.key("variable");
    w.value(warn.variable);
    w.key("level");
    w.value(warn.level);
    w.key("message");
    w.value(warn.message);
    w.end_object();
  }
  w.end_array();

  w.key("sheets");
  w.begin_array();
  for (const auto& sheet : report.sheets) {
    w.begin_object();
    w.key("test_name");
    w.value(sheet_name(sheet.id));
    w.key("columns");
    w.begin_array();
    for (const auto& col : sheet.columns) {
      w.begin_object();
      w.key("name");
      w.value(col.name);
      w.key("type");
      w.value(to_string(col.type));
      w.end_object();
    }
    w.end_array();
    w.key("summary");
    w.begin_object();
    w.key("pass");
    w.value(sheet.summary.pass);
    w.key("fail");
    w.value(sheet.summary.fail);
    w.key("undefined");
    w.value(sheet.summary.undefined);
    w.end_object();
    w.key("records");
    w.begin_array();
    for (const auto& row : sheet.rows) {
      w.begin_object();
      for (std::size_t i = 0; i < sheet.columns.size(); ++i) {
        w.key(sheet.columns[i].name);
        std::visit([&w](const auto& v) { w.value(v); }, row.cells[i]);
      }
      w.key("verdict");
      w.value(to_string(row.verdict));
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();

  w.end_object();
  std::string out = w.take();
  out += '\n';
  return out;
}

TestReport from_json(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    bad_json(e.what());
  }
  try {
    TestReport r;
    const auto& md = doc.at("metadata");
    r.metadata.tool_version = md.at("tool_version").get<std::string>();
    r.metadata.generated_at = md.at("generated_at").get<std::string>();
    r.metadata.hierarchy_mode = md.at("hierarchy_mode").get<std::string>();
    for (const auto& [name, digest] : md.at("input_digests").items()) {
      r.metadata.input_digests.emplace_back(name, digest.get<std::string>());
    }
    for (const auto& f : kThresholdFields) {
      r.metadata.thresholds.*(f.member) =
          md.at("thresholds").at(std::string(f.name)).get<double>();
    }
    for (const auto& f : kToggleFields) {
      r.metadata.toggles.*(f.member) =
          md.at("toggles").at(std::string(f.name)).get<bool>();
    }
    r.overall_verdict = verdict_from(doc.at("overall_verdict"));
    for (const auto& w : doc.at("warnings")) {
      r.warnings.push_back({w.at("source").get<std::string>(),
                            w.at("variable").get<std::string>(),
                            w.at("level").get<std::string>(),
                            w.at("message").get<std::string>()});
    }
    for (const auto& s : doc.at("sheets")) {
      TestSheet sheet;
      const auto id = parse_sheet_name(s.at("test_name").get<std::string>());
      if (!id) bad_json("unknown sheet name");
      sheet.id = *id;
      for (const auto& c : s.at("columns")) {
        const auto type = c.at("type").get<std::string>();
        ColumnType ct = ColumnType::kText;
        if (type == "count") {
          ct = ColumnType::kCount;
        } else if (type == "metric") {
          ct = ColumnType::kMetric;
        } else if (type != "text") {
          bad_json("unknown column type " + type);
        }
        sheet.columns.push_back({c.at("name").get<std::string>(), ct});
      }
      sheet.summary.pass = s.at("summary").at("pass").get<std::size_t>();
      sheet.summary.fail = s.at("summary").at("fail").get<std::size_t>();
      sheet.summary.undefined =
          s.at("summary").at("undefined").get<std::size_t>();
      for (const auto& rec : s.at("records")) {
        SheetRow row;
        for (const auto& col : sheet.columns) {
          const auto& v = rec.at(col.name);
          switch (col.type) {
            case ColumnType::kText:
              row.cells.emplace_back(v.get<std::string>());
              break;
            case ColumnType::kCount:
              row.cells.emplace_back(v.get<std::int64_t>());
              break;
            case ColumnType::kMetric:
              row.cells.emplace_back(metric_from(v));
              break;
          }
        }
        row.verdict = verdict_from(rec.at("verdict"));
        sheet.rows.push_back(std::move(row));
      }
      r.sheets.push_back(std::move(sheet));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    bad_json(e.what());
  }
}

void write_json(const TestReport& report, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report to " + path.string());
  out << to_json(report);
  if (!out) throw Error("failed writing report to " + path.string());
}

std::string csv_file_name(SheetId id) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d_", sheet_group(id));
  return buf + std::string(sheet_name(id)) + ".csv";
}

std::string sheet_to_csv(const TestSheet& sheet) {
  std::string out;
  for (const auto& col : sheet.columns) {
    out += csv::quote(col.name);
    out += ',';
  }
  out += "verdict\n";
  for (const auto& row : sheet.rows) {
    for (const auto& cell : row.cells) {
      out += csv_cell(cell);
      out += ',';
    }
    out += to_string(row.verdict);
    out += '\n';
  }
  return out;
}

void write_csv_sheets(const TestReport& report,
                      const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) {
    throw Error("cannot create output directory " + dir.string());
  }
  const auto write = [&](const std::filesystem::path& p,
                         const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << body;
    if (!out) throw Error("failed writing " + p.string());
  };
  for (const auto& sheet : report.sheets) {
    write(dir / csv_file_name(sheet.id), sheet_to_csv(sheet));
  }
  std::string warnings = "source,variable,level,message\n";
  for (const auto& w : report.warnings) {
    warnings += csv::quote(w.source) + ',' + csv::quote(w.variable) + ',' +
                csv::quote(w.level) + ',' + csv::quote(w.message) + '\n';
  }
  write(dir / "warnings.csv", warnings);
}

}  // namespace vintagecheck
