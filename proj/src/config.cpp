#include "sensekit/config.hpp"

#include <string>

#include "sensekit/errors.hpp"

namespace sensekit {

std::string_view accuracyModeName(AccuracyMode mode) {
    switch (mode) {
    case AccuracyMode::Best: return "Best";
    case AccuracyMode::Balanced: return "Balanced";
    case AccuracyMode::LowPower: return "LowPower";
    }
    return "?";
}

std::optional<AccuracyMode> accuracyModeFromName(std::string_view name) {
    if (name == "Best") return AccuracyMode::Best;
    if (name == "Balanced") return AccuracyMode::Balanced;
    if (name == "LowPower") return AccuracyMode::LowPower;
    return std::nullopt;
}

void validateConfig(const SensorConfig& config) {
    const auto type = config.sensorType;
    const std::string name(canonicalName(type));

    if (isEventDriven(type)) {
        if (config.sampleRateHz) {
            raise(ErrorKind::InvalidConfig,
                  name + " is event-driven and takes no sample rate");
        }
    } else {
        if (!config.sampleRateHz) {
            raise(ErrorKind::InvalidConfig, name + " requires a sample rate");
        }
        if (!(*config.sampleRateHz > 0.0)) {
            raise(ErrorKind::InvalidConfig,
                  name + " sample rate must be positive, got " +
                      std::to_string(*config.sampleRateHz));
        }
    }

    if (config.accuracyMode && type != SensorType::Location) {
        raise(ErrorKind::InvalidConfig, "accuracy mode applies to Location only");
    }

    if (isBeaconSensor(type)) {
        if (!config.roles.any()) {
            raise(ErrorKind::InvalidConfig,
                  name + " requires at least one of the Scan/Broadcast roles");
        }
    } else if (config.roles.any()) {
        raise(ErrorKind::InvalidConfig, "roles apply to beacon sensors only");
    }

    if (type == SensorType::IBeaconProximity) {
        if (config.roles.broadcast && !config.beaconIdentity) {
            raise(ErrorKind::InvalidConfig,
                  "IBeaconProximity broadcast requires a beacon identity");
        }
        if (!config.roles.broadcast && config.beaconIdentity) {
            raise(ErrorKind::InvalidConfig,
                  "beacon identity is only meaningful with the Broadcast role");
        }
    } else if (config.beaconIdentity) {
        raise(ErrorKind::InvalidConfig, "beacon identity applies to IBeaconProximity only");
    }
}

void checkAvailability(const SensorConfig& config, const PlatformProfile& profile) {
    const auto mode = isSensorAvailable(config.sensorType, profile);
    const std::string name(canonicalName(config.sensorType));
    if (mode == AvailabilityMode::Unavailable) {
        raise(ErrorKind::SensorNotAvailable,
              name + " is unavailable on profile '" + profile.name() + "'");
    }
    if (mode == AvailabilityMode::ScanOnly && config.roles.broadcast) {
        raise(ErrorKind::SensorNotAvailable,
              name + " on profile '" + profile.name() + "' is scan-only; broadcast denied");
    }
}

} // namespace sensekit
