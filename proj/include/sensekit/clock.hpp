#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <utility>

#include "sensekit/errors.hpp"

namespace sensekit {

/// Where the framework reads time from. Two implementations exist: the real
/// steady/system clocks, and a simulated source the engine fast-forwards.
/// The monotonic reading drives all sample timestamps; the wall clock is
/// captured once per session for metadata and never touches timestamps.
class TimeSource {
public:
    virtual ~TimeSource() = default;

    virtual std::uint64_t monotonicNanos() const = 0;
    virtual std::uint64_t wallClockUtcNanos() const = 0;

    /// Moves monotonic time forward to `targetNanos`. The simulated source
    /// jumps instantly; the real-time source sleeps until the target.
    virtual void advanceTo(std::uint64_t targetNanos) = 0;
};

/// Fully controllable source for simulation. Wall-clock perturbations model a
/// user or NTP changing the system time mid-session.
class SimulatedTimeSource final : public TimeSource {
public:
    explicit SimulatedTimeSource(std::uint64_t monotonicStartNanos = 5'000'000'000ULL,
                                 std::uint64_t wallClockStartNanos = 0)
        : monotonicNanos_(monotonicStartNanos), wallClockNanos_(wallClockStartNanos) {}

    std::uint64_t monotonicNanos() const override { return monotonicNanos_; }
    std::uint64_t wallClockUtcNanos() const override { return wallClockNanos_; }

    void advanceTo(std::uint64_t targetNanos) override {
        if (targetNanos > monotonicNanos_) {
            wallClockNanos_ += targetNanos - monotonicNanos_;
            monotonicNanos_ = targetNanos;
        }
    }

    /// Shifts the wall clock without touching monotonic time.
    void jumpWallClock(std::int64_t deltaNanos) {
        wallClockNanos_ = static_cast<std::uint64_t>(
            static_cast<std::int64_t>(wallClockNanos_) + deltaNanos);
    }

private:
    std::uint64_t monotonicNanos_;
    std::uint64_t wallClockNanos_;
};

/// Real clocks: steady_clock for timestamps, system_clock for the epoch.
class SteadyTimeSource final : public TimeSource {
public:
    std::uint64_t monotonicNanos() const override {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(
                std::chrono::steady_clock::now().time_since_epoch())
                .count());
    }

    std::uint64_t wallClockUtcNanos() const override {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
    }

    void advanceTo(std::uint64_t targetNanos) override;
};

/// Session time-base. Captures the monotonic origin and the wall-clock epoch
/// once at session start; every timestamp is nanoseconds since that origin,
/// immune to later wall-clock changes.
class SessionClock {
public:
    SessionClock() = default;
    SessionClock(std::uint64_t monotonicOriginNanos, std::uint64_t wallClockEpochNanos)
        : monotonicOriginNanos_(monotonicOriginNanos),
          wallClockEpochNanos_(wallClockEpochNanos) {}

    static SessionClock startNow(const TimeSource& source) {
        return SessionClock(source.monotonicNanos(), source.wallClockUtcNanos());
    }

    std::uint64_t monotonicOriginNanos() const { return monotonicOriginNanos_; }
    std::uint64_t wallClockEpochNanos() const { return wallClockEpochNanos_; }

    /// Session-relative timestamp for a monotonic reading. Raises
    /// ClockRegression when the reading precedes the origin (a broken
    /// monotonic source).
    std::uint64_t timestampNanos(std::uint64_t monotonicNowNanos) const {
        if (monotonicNowNanos < monotonicOriginNanos_) {
            raise(ErrorKind::ClockRegression,
                  "monotonic reading precedes the session origin");
        }
        return monotonicNowNanos - monotonicOriginNanos_;
    }

private:
    std::uint64_t monotonicOriginNanos_ = 0;
    std::uint64_t wallClockEpochNanos_ = 0;
};

inline double relativeSecondsOf(std::uint64_t timestampNanos) {
    return static_cast<double>(timestampNanos) * 1e-9;
}

/// (timestampNanos, relativeSeconds) for a monotonic reading against a clock.
inline std::pair<std::uint64_t, double> sessionTimestamp(const SessionClock& clock,
                                                         std::uint64_t monotonicNowNanos) {
    const std::uint64_t ts = clock.timestampNanos(monotonicNowNanos);
    return {ts, relativeSecondsOf(ts)};
}

} // namespace sensekit
