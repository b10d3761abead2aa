#include "vintagecheck/csv.hpp"

#include <fstream>
#include <iterator>
#include <vector>

#include "vintagecheck/error.hpp"

namespace vintagecheck::csv {

void parse(std::string_view text, const RecordSink& sink) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  // A field is either a slice of `text` or an unescaped copy in `owned`.
  struct Field {
    std::size_t begin;
    std::size_t length;
    int owned = -1;
  };
  std::vector<Field> fields;
  std::vector<std::string> owned;
  std::vector<std::string_view> views;

  std::size_t pos = 0;
  std::size_t line = 1;
  const std::size_t n = text.size();

  while (pos < n) {
    const std::size_t record_line = line;
    // Skip blank lines.
    if (text[pos] == '\n') {
      ++pos;
      ++line;
      continue;
    }
    if (text[pos] == '\r' && pos + 1 < n && text[pos + 1] == '\n') {
      pos += 2;
      ++line;
      continue;
    }

    fields.clear();
    owned.clear();
    for (;;) {
      if (pos < n && text[pos] == '"') {
        std::string value;
        ++pos;
        for (;;) {
          if (pos >= n) {
            throw ParseError("line " + std::to_string(record_line) +
                             ": unterminated quoted field");
          }
          const char c = text[pos];
          if (c == '"') {
            if (pos + 1 < n && text[pos + 1] == '"') {
              value += '"';
              pos += 2;
              continue;
            }
            ++pos;
            break;
          }
          if (c == '\n') ++line;
          value += c;
          ++pos;
        }
        if (pos < n && text[pos] != ',' && text[pos] != '\n' &&
            !(text[pos] == '\r' && pos + 1 < n && text[pos + 1] == '\n') &&
            !(text[pos] == '\r' && pos + 1 == n)) {
          throw ParseError("line " + std::to_string(line) +
                           ": unexpected character after closing quote");
        }
        owned.push_back(std::move(value));
        fields.push_back({0, 0, static_cast<int>(owned.size() - 1)});
      } else {
        const std::size_t start = pos;
        while (pos < n && text[pos] != ',' && text[pos] != '\n') ++pos;
        std::size_t end = pos;
        if (end > start && text[end - 1] == '\r' &&
            (end == n || text[end] == '\n')) {
          --end;
        }
        fields.push_back({start, end - start});
      }

      if (pos < n && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < n && text[pos] == '\r') ++pos;
      if (pos < n && text[pos] == '\n') {
        ++pos;
        ++line;
      }
      break;
    }

    views.clear();
    for (const auto& f : fields) {
      views.push_back(f.owned >= 0 ? std::string_view(owned[f.owned])
                                   : text.substr(f.begin, f.length));
    }
    sink(views, record_line);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string data;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size > 0) {
    data.resize(static_cast<std::size_t>(size));
    in.seekg(0, std::ios::beg);
    in.read(data.data(), size);
  }
  if (!in && !in.eof()) throw ParseError("cannot read " + path.string());
  return data;
}

RawTable parse_table(std::string_view text) {
  RawTable table;
  bool first = true;
  parse(text, [&](std::span<const std::string_view> fields, std::size_t) {
    std::vector<std::string> row(fields.begin(), fields.end());
    if (first) {
      table.header = std::move(row);
      first = false;
    } else {
      table.rows.push_back(std::move(row));
    }
  });
  return table;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace vintagecheck::csv
