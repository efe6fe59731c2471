#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "sensekit/config.hpp"
#include "sensekit/energy.hpp"
#include "sensekit/payload.hpp"
#include "sensekit/trace.hpp"

namespace sensekit {

/// A sample source standing in for one physical sensor. Drivers work
/// entirely in session time (nanoseconds since session start) and are pulled
/// by the core scheduler: it asks when the next sample is due, advances the
/// clock there and calls produce(). A driver instance belongs to exactly one
/// producer context.
class Driver {
public:
    virtual ~Driver() = default;

    virtual SensorType sensorType() const = 0;

    /// (Re)starts the stream at the given session time. Clock-driven
    /// schedules anchor here; event-driven drivers emit their current state
    /// at this instant and randomize the next change.
    virtual void start(std::uint64_t sessionNanos) = 0;

    /// Session time of the next pending sample, or nullopt when the stream
    /// is exhausted (replay reached its end, battery hit empty).
    virtual std::optional<std::uint64_t> nextDueNanos() const = 0;

    /// Emits the sample due at nextDueNanos() and advances the schedule.
    virtual SensorSample produce() = 0;

    /// Applies a new configuration. While running it takes effect at the
    /// next scheduled sample; the schedule re-anchors there, so no sample is
    /// lost or duplicated at the switch boundary.
    virtual void reconfigure(const SensorConfig& config) = 0;
};

/// Deterministic pseudo-random generator for any sensor type. The stream is
/// physically plausible (accelerometer = gravity plus seeded band-limited
/// noise, location = a seeded pedestrian walk, ...) and a pure function of
/// (type, config, seed): the same seed reproduces the stream bit for bit.
/// Raises InvalidConfig for configs that fail validateConfig or that name a
/// different sensor type.
std::unique_ptr<Driver> createSyntheticDriver(SensorType type, const SensorConfig& config,
                                              std::uint64_t seed);

/// Replays a recorded trace, re-based onto the current session clock: the
/// first record lands at the start instant and every inter-record gap is
/// preserved to the nanosecond. Raises SchemaMismatch when the trace was
/// recorded for a different sensor, CorruptTrace for unsorted records or
/// payloads that do not match the trace's type.
std::unique_ptr<Driver> createReplayDriver(SensorType type, TraceFile trace);

/// Battery sensor fed by a discharge simulation: emits the starting level at
/// start, then one sample (state Unplugged) whenever the level crosses a 1%
/// boundary; nothing at exact empty, where the device is off. Raises
/// InvalidSeries for an empty series, non-increasing times, levels outside
/// [0,1] or increasing levels.
std::unique_ptr<Driver> batteryDriverFromDischarge(const energy::DischargeSeries& series);

/// Per-sensor seed derived from the session seed. Gravity, LinearAcceleration
/// and Rotation share one seed: they are views of the same device-motion
/// trajectory and must stay mutually consistent.
std::uint64_t driverSeed(std::uint64_t sessionSeed, SensorType type);

} // namespace sensekit
