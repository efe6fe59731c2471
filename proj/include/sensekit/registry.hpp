#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "sensekit/availability.hpp"
#include "sensekit/clock.hpp"
#include "sensekit/config.hpp"
#include "sensekit/drivers.hpp"
#include "sensekit/payload.hpp"

namespace sensekit {

/// Opaque registration token; unique for the manager's lifetime.
using SensorHandle = std::uint64_t;
using SubscriptionId = std::uint64_t;
using SampleHandler = std::function<void(const SensorSample&)>;

enum class SensorState { Stopped, Running };

/// The framework's front door. Owns the platform availability matrix, the
/// session time-base and one registration slot per sensor type; mediates the
/// whole sensor lifecycle:
///
///   register -> configure/subscribe -> start -> (samples) -> stop -> deregister
///
/// Sensing runs against the manager's TimeSource. runFor() advances that
/// source and pumps every running driver, delivering samples to subscribers
/// in timestamp order; with a SimulatedTimeSource an hour-long session
/// finishes in milliseconds.
///
/// Registry calls are serialized with respect to each other; handlers are
/// invoked sequentially per sensor and must not call back into the registry
/// (such calls raise Reentrancy).
class SensorManager {
public:
    SensorManager(PlatformProfile profile, std::shared_ptr<TimeSource> timeSource,
                  std::uint64_t sessionSeed = 0);

    const PlatformProfile& profile() const { return profile_; }
    const SessionClock& sessionClock() const { return clock_; }
    TimeSource& timeSource() { return *timeSource_; }

    AvailabilityMode availability(SensorType type) const;

    /// Registers a synthetic driver for the type. Raises SensorNotAvailable
    /// (profile forbids the type or the requested roles), InvalidConfig, or
    /// AlreadyRegistered (one registration per type).
    SensorHandle registerSensor(SensorType type, const SensorConfig& config);

    /// Registers a replay driver fed by a recorded trace; same checks as
    /// registerSensor plus the replay driver's trace validation.
    SensorHandle registerReplay(const SensorConfig& config, TraceFile trace);

    /// Registers an externally built driver (the hook the other overloads
    /// share); exposed for tests and custom sources.
    SensorHandle registerDriver(const SensorConfig& config, std::unique_ptr<Driver> driver);

    /// Applies a new configuration. Running sensors switch atomically at
    /// their next scheduled sample; stopped sensors pick the config up on
    /// the next start. Raises UnknownHandle, TypeMismatch, InvalidConfig,
    /// SensorNotAvailable (roles the profile forbids).
    void configureSensor(SensorHandle handle, const SensorConfig& config);

    /// Adds a sample handler. A sensor may have any number of subscribers;
    /// each receives every sample produced after the subscription, in
    /// timestamp order. Raises UnknownHandle.
    SubscriptionId subscribe(SensorHandle handle, SampleHandler handler);

    void startContinuousSensing(SensorHandle handle);
    void stopContinuousSensing(SensorHandle handle);

    /// Releases a Stopped registration; the handle is invalid afterwards and
    /// the type may be registered again. Raises UnknownHandle, WrongState.
    void deregisterSensor(SensorHandle handle);

    SensorState stateOf(SensorHandle handle) const;

    /// Advances the time source by the given span, producing and delivering
    /// every sample that falls strictly inside it. For a driver at rate r
    /// started at the window's origin this yields exactly the ticks k/r < T.
    void runFor(std::uint64_t durationNanos);

    /// Session time right now (nanos since the manager was constructed).
    std::uint64_t sessionNowNanos() const;

private:
    struct Registration {
        SensorType type;
        SensorConfig config;
        SensorState state = SensorState::Stopped;
        std::unique_ptr<Driver> driver;
        std::vector<std::pair<SubscriptionId, SampleHandler>> subscribers;
    };

    Registration& find(SensorHandle handle);
    const Registration& find(SensorHandle handle) const;
    void guardReentrancy(const char* operation) const;

    PlatformProfile profile_;
    std::shared_ptr<TimeSource> timeSource_;
    SessionClock clock_;
    std::uint64_t sessionSeed_;
    std::map<SensorHandle, Registration> registrations_;
    SensorHandle nextHandle_ = 1;
    SubscriptionId nextSubscription_ = 1;
    bool delivering_ = false;
};

} // namespace sensekit
