#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sbs::csv {

// RFC-4180 reader. Quoted fields may contain separators, doubled quotes and
// line breaks; a record therefore may span several physical lines.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Returns false at end of input. Throws std::runtime_error on an
    // unterminated quoted field.
    bool next(std::vector<std::string>& fields);

    // Physical line on which the most recently returned record started (1-based).
    std::size_t record_line() const { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
    std::size_t record_line_ = 0;
};

// Quotes only when the field needs it.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace sbs::csv
