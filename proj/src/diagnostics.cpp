#include "sbs/diagnostics.hpp"

#include <iostream>
#include <memory>
#include <mutex>

namespace sbs {
namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

WarningSink& current_sink() {
    static WarningSink sink = [](std::string_view msg) {
        std::cerr << "warning: " << msg << '\n';
    };
    return sink;
}

}  // namespace

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (current_sink()) current_sink()(message);
}

WarningSink set_warning_sink(WarningSink sink) {
    std::lock_guard lock(sink_mutex());
    std::swap(current_sink(), sink);
    return sink;
}

struct WarningCapture::State {
    std::vector<std::string> messages;
};

WarningCapture::WarningCapture() : state_(new State) {
    // Sink runs under sink_mutex, so appending needs no extra locking.
    previous_ = set_warning_sink([s = state_](std::string_view msg) { s->messages.emplace_back(msg); });
}

WarningCapture::~WarningCapture() {
    set_warning_sink(std::move(previous_));
    delete state_;
}

std::vector<std::string> WarningCapture::messages() const {
    std::lock_guard lock(sink_mutex());
    return state_->messages;
}

bool WarningCapture::contains(std::string_view needle) const {
    for (const auto& m : messages())
        if (m.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace sbs
