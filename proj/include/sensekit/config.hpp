#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "sensekit/availability.hpp"
#include "sensekit/sensor_type.hpp"

namespace sensekit {

/// Location fix quality requested from the positioning driver.
enum class AccuracyMode {
    Best,
    Balanced,
    LowPower,
};

std::string_view accuracyModeName(AccuracyMode mode);
std::optional<AccuracyMode> accuracyModeFromName(std::string_view name);

/// BLE roles a beacon sensor may take. Kept as two flags rather than an enum
/// so scan+broadcast composes naturally.
struct BeaconRoles {
    bool scan = false;
    bool broadcast = false;

    bool any() const { return scan || broadcast; }
    bool operator==(const BeaconRoles&) const = default;
};

/// Identity advertised while broadcasting as an iBeacon: 128-bit uuid,
/// major/minor and the signal strength calibrated at 1 m.
struct BeaconIdentity {
    std::array<std::uint8_t, 16> uuid{};
    std::uint16_t major = 0;
    std::uint16_t minor = 0;
    std::int8_t measuredPower = -59;

    bool operator==(const BeaconIdentity&) const = default;
};

/// Per-sensor tunable parameters. Which fields apply depends on the sensor:
///   - sampleRateHz: required for clock-driven sensors, absent for the
///     event-driven ones (Pedometer, MotionActivity, Battery, ScreenStatus)
///   - accuracyMode: Location only
///   - roles / beaconIdentity: beacon sensors only; the identity is present
///     exactly when an IBeaconProximity config requests the Broadcast role
struct SensorConfig {
    SensorType sensorType = SensorType::Accelerometer;
    std::optional<double> sampleRateHz;
    std::optional<AccuracyMode> accuracyMode;
    std::optional<BeaconIdentity> beaconIdentity;
    BeaconRoles roles;

    bool operator==(const SensorConfig&) const = default;
};

/// Checks every SensorConfig invariant; raises InvalidConfig on violation.
void validateConfig(const SensorConfig& config);

/// Checks a config against the availability mode the profile grants:
/// Unavailable rejects registration outright, ScanOnly rejects the Broadcast
/// role. Raises SensorNotAvailable.
void checkAvailability(const SensorConfig& config, const PlatformProfile& profile);

} // namespace sensekit
