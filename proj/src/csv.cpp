#include "seqcmp/csv.hpp"

#include "seqcmp/error.hpp"

namespace seqcmp::csv {

std::vector<Record> parse(std::string_view text, char delimiter) {
    std::vector<Record> records;
    std::vector<std::string> fields;
    std::string field;
    bool inQuotes = false;
    bool fieldStarted = false; // distinguishes a blank line from a line holding one empty field
    std::size_t number = 0;
    std::size_t quoteLine = 0;
    std::size_t line = 1;

    auto endRecord = [&] {
        if (fieldStarted || !fields.empty()) {
            fields.push_back(std::move(field));
            records.push_back({++number, std::move(fields)});
        }
        fields.clear();
        field.clear();
        fieldStarted = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (inQuotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    inQuotes = false;
                }
            } else {
                if (c == '\n')
                    ++line;
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            inQuotes = true;
            fieldStarted = true;
            quoteLine = line;
        } else if (c == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
            fieldStarted = true;
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            // handled by the '\n'
        } else if (c == '\n' || c == '\r') {
            ++line;
            endRecord();
        } else {
            field.push_back(c);
            fieldStarted = true;
        }
    }
    if (inQuotes)
        throw ParseError(number + 1, "unterminated quoted field starting on line " + std::to_string(quoteLine));
    endRecord();
    return records;
}

} // namespace seqcmp::csv
