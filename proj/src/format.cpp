#include "sbs/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sbs {

std::string format_fixed(double value) {
    if (!std::isfinite(value)) throw std::domain_error("non-finite value in output");
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    std::string s(buf, end);
    if (s == "-0.000000") s.erase(0, 1);
    return s;
}

double round_fixed(double value) {
    const std::string s = format_fixed(value);
    double out = 0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

}  // namespace sbs
