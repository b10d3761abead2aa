#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "vintagecheck/model.hpp"

namespace vintagecheck::csv {

// Receives the fields of one record and the 1-based line it started on.
// The views are valid only for the duration of the call.
using RecordSink =
    std::function<void(std::span<const std::string_view>, std::size_t)>;

// Comma-separated, optional double-quote quoting with "" as the escaped
// quote, LF or CRLF line ends, leading UTF-8 BOM ignored. Empty lines are
// skipped. Throws ParseError on an unterminated quote or stray characters
// after a closing quote.
void parse(std::string_view text, const RecordSink& sink);

// Whole file into memory. Throws ParseError if it cannot be read.
std::string read_file(const std::filesystem::path& path);

// First record becomes the header.
RawTable parse_table(std::string_view text);

// Quotes a field only when it contains a comma, quote or line break.
std::string quote(std::string_view field);

}  // namespace vintagecheck::csv
