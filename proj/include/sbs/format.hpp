#pragma once

#include <string>

namespace sbs {

// Fixed notation, six digits after the point, correctly rounded (ties to
// even on the exact binary value). Negative zero prints as 0.000000.
std::string format_fixed(double value);

// The double nearest to format_fixed(value); used for JSON output so that
// serialized numbers match the CSV precision.
double round_fixed(double value);

}  // namespace sbs
