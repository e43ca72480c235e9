#include "sbs/csv.hpp"

#include <stdexcept>

namespace sbs::csv {

bool Reader::next(std::vector<std::string>& fields) {
    fields.clear();
    std::string line;
    if (!std::getline(in_, line)) return false;
    ++line_;
    record_line_ = line_;

    std::string field;
    bool quoted = false;
    bool field_started_quoted = false;
    for (;;) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"' && field.empty() && !field_started_quoted) {
                quoted = true;
                field_started_quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
                field_started_quoted = false;
            } else if (c == '\r' && i + 1 == line.size()) {
                // CRLF terminator
            } else {
                field += c;
            }
        }
        if (!quoted) break;
        // Line break inside quotes belongs to the field. getline dropped the
        // '\n'; a preceding '\r' was kept above since we were quoted.
        if (!std::getline(in_, line)) throw std::runtime_error("unterminated quoted field");
        ++line_;
        field += '\n';
    }
    fields.push_back(std::move(field));
    return true;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

}  // namespace sbs::csv
