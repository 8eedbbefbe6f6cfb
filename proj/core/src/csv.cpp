#include "scenekge/csv.hpp"

#include <charconv>

#include "scenekge/errors.hpp"

namespace scenekge::csv {

std::string field(std::string_view value) {
    if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
    std::string out = "\"";
    for (const char c : value) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<std::string> split(std::string_view line, std::size_t line_number) {
    std::vector<std::string> fields;
    std::string current;
    std::size_t i = 0;
    for (;;) {
        current.clear();
        if (i < line.size() && line[i] == '"') {
            ++i;
            for (;;) {
                if (i >= line.size()) throw FormatError(line_number, "unterminated quoted field");
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        current.push_back('"');
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                current.push_back(line[i++]);
            }
            if (i < line.size() && line[i] != ',') throw FormatError(line_number, "text after closing quote");
        } else {
            while (i < line.size() && line[i] != ',') {
                if (line[i] == '"') throw FormatError(line_number, "quote inside unquoted field");
                current.push_back(line[i++]);
            }
        }
        fields.push_back(current);
        if (i >= line.size()) break;
        ++i;  // ','
    }
    return fields;
}

std::string number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::size_t line_number) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw FormatError(line_number, "invalid number '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace scenekge::csv
