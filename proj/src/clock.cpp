#include "sensekit/clock.hpp"

#include <thread>

namespace sensekit {

void SteadyTimeSource::advanceTo(std::uint64_t targetNanos) {
    const std::uint64_t now = monotonicNanos();
    if (targetNanos > now) {
        std::this_thread::sleep_for(std::chrono::nanoseconds(targetNanos - now));
    }
}

} // namespace sensekit
