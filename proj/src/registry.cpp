#include "sensekit/registry.hpp"

#include <limits>
#include <string>

#include "sensekit/errors.hpp"

namespace sensekit {

SensorManager::SensorManager(PlatformProfile profile, std::shared_ptr<TimeSource> timeSource,
                             std::uint64_t sessionSeed)
    : profile_(std::move(profile)),
      timeSource_(std::move(timeSource)),
      clock_(SessionClock::startNow(*timeSource_)),
      sessionSeed_(sessionSeed) {}

AvailabilityMode SensorManager::availability(SensorType type) const {
    return isSensorAvailable(type, profile_);
}

SensorHandle SensorManager::registerSensor(SensorType type, const SensorConfig& config) {
    guardReentrancy("registerSensor");
    if (config.sensorType != type)
        raise(ErrorKind::InvalidConfig,
              "config names " + std::string(canonicalName(config.sensorType)) +
                  " but registration is for " + std::string(canonicalName(type)));
    return registerDriver(config, createSyntheticDriver(type, config,
                                                        driverSeed(sessionSeed_, type)));
}

SensorHandle SensorManager::registerReplay(const SensorConfig& config, TraceFile trace) {
    guardReentrancy("registerReplay");
    return registerDriver(config, createReplayDriver(config.sensorType, std::move(trace)));
}

SensorHandle SensorManager::registerDriver(const SensorConfig& config,
                                           std::unique_ptr<Driver> driver) {
    guardReentrancy("registerDriver");
    validateConfig(config);
    checkAvailability(config, profile_);
    for (const auto& [handle, registration] : registrations_) {
        if (registration.type == config.sensorType)
            raise(ErrorKind::AlreadyRegistered,
                  std::string(canonicalName(config.sensorType)) + " is already registered");
    }
    SensorHandle handle = nextHandle_++;
    Registration registration;
    registration.type = config.sensorType;
    registration.config = config;
    registration.driver = std::move(driver);
    registrations_.emplace(handle, std::move(registration));
    return handle;
}

void SensorManager::configureSensor(SensorHandle handle, const SensorConfig& config) {
    guardReentrancy("configureSensor");
    Registration& registration = find(handle);
    if (config.sensorType != registration.type)
        raise(ErrorKind::TypeMismatch,
              "config names " + std::string(canonicalName(config.sensorType)) +
                  " but the handle holds " + std::string(canonicalName(registration.type)));
    validateConfig(config);
    checkAvailability(config, profile_);
    registration.config = config;
    registration.driver->reconfigure(config);
}

SubscriptionId SensorManager::subscribe(SensorHandle handle, SampleHandler handler) {
    guardReentrancy("subscribe");
    Registration& registration = find(handle);
    SubscriptionId id = nextSubscription_++;
    registration.subscribers.emplace_back(id, std::move(handler));
    return id;
}

void SensorManager::startContinuousSensing(SensorHandle handle) {
    guardReentrancy("startContinuousSensing");
    Registration& registration = find(handle);
    if (registration.state != SensorState::Stopped)
        raise(ErrorKind::WrongState,
              std::string(canonicalName(registration.type)) + " is already running");
    registration.driver->start(sessionNowNanos());
    registration.state = SensorState::Running;
}

void SensorManager::stopContinuousSensing(SensorHandle handle) {
    guardReentrancy("stopContinuousSensing");
    Registration& registration = find(handle);
    if (registration.state != SensorState::Running)
        raise(ErrorKind::WrongState,
              std::string(canonicalName(registration.type)) + " is not running");
    registration.state = SensorState::Stopped;
}

void SensorManager::deregisterSensor(SensorHandle handle) {
    guardReentrancy("deregisterSensor");
    Registration& registration = find(handle);
    if (registration.state != SensorState::Stopped)
        raise(ErrorKind::WrongState,
              std::string(canonicalName(registration.type)) + " must be stopped first");
    registrations_.erase(handle);
}

SensorState SensorManager::stateOf(SensorHandle handle) const {
    return find(handle).state;
}

std::uint64_t SensorManager::sessionNowNanos() const {
    return clock_.timestampNanos(timeSource_->monotonicNanos());
}

void SensorManager::runFor(std::uint64_t durationNanos) {
    guardReentrancy("runFor");
    const std::uint64_t deadlineMonotonic = timeSource_->monotonicNanos() + durationNanos;
    const std::uint64_t deadlineSession = clock_.timestampNanos(deadlineMonotonic);

    for (;;) {
        Registration* best = nullptr;
        std::uint64_t bestDue = std::numeric_limits<std::uint64_t>::max();
        for (auto& [handle, registration] : registrations_) {
            if (registration.state != SensorState::Running)
                continue;
            std::optional<std::uint64_t> due = registration.driver->nextDueNanos();
            // Strict inequality: a tick on the deadline belongs to the next
            // window, giving exactly the k/rate < T samples.
            if (due && *due < deadlineSession && *due < bestDue) {
                bestDue = *due;
                best = &registration;
            }
        }
        if (!best)
            break;

        timeSource_->advanceTo(clock_.monotonicOriginNanos() + bestDue);
        SensorSample sample = best->driver->produce();

        delivering_ = true;
        try {
            for (auto& [id, handler] : best->subscribers)
                handler(sample);
        } catch (...) {
            delivering_ = false;
            throw;
        }
        delivering_ = false;
    }

    timeSource_->advanceTo(deadlineMonotonic);
}

SensorManager::Registration& SensorManager::find(SensorHandle handle) {
    auto it = registrations_.find(handle);
    if (it == registrations_.end())
        raise(ErrorKind::UnknownHandle, "no sensor registered under handle " + std::to_string(handle));
    return it->second;
}

const SensorManager::Registration& SensorManager::find(SensorHandle handle) const {
    auto it = registrations_.find(handle);
    if (it == registrations_.end())
        raise(ErrorKind::UnknownHandle, "no sensor registered under handle " + std::to_string(handle));
    return it->second;
}

void SensorManager::guardReentrancy(const char* operation) const {
    if (delivering_)
        raise(ErrorKind::Reentrancy,
              std::string(operation) + " called from inside a sample handler");
}

} // namespace sensekit
