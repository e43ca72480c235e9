#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sbs {

// Non-fatal conditions (absent brand, zero-variance slice, ...) are reported
// through a process-wide sink. The default sink writes to stderr.
using WarningSink = std::function<void(std::string_view)>;

void warn(std::string_view message);

// Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);

// Collects warnings for the lifetime of the object, restoring the previous
// sink on destruction.
class WarningCapture {
public:
    WarningCapture();
    ~WarningCapture();
    WarningCapture(const WarningCapture&) = delete;
    WarningCapture& operator=(const WarningCapture&) = delete;

    std::vector<std::string> messages() const;
    bool contains(std::string_view needle) const;

private:
    struct State;
    State* state_;
    WarningSink previous_;
};

}  // namespace sbs
