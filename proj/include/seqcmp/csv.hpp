#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace seqcmp::csv {

struct Record {
    std::size_t number; // 1-based position among all records, header included
    std::vector<std::string> fields;
};

/// RFC-4180 style reader: quoted fields may contain the delimiter, doubled
/// quotes and line breaks; CRLF and LF both end a record. Blank lines are
/// skipped. Throws ParseError on an unterminated quote.
std::vector<Record> parse(std::string_view text, char delimiter = ',');

} // namespace seqcmp::csv
