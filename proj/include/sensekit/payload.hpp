#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "sensekit/beacon.hpp"
#include "sensekit/sensor_type.hpp"

namespace sensekit {

enum class ActivityClass { Stationary, Walking, Running, Driving, Cycling };
enum class ActivityConfidence { Low, Medium, High };
enum class BatteryState { Unplugged, Charging, Full };
enum class ScreenState { On, Off };

std::string_view activityClassName(ActivityClass activity);
std::optional<ActivityClass> activityClassFromName(std::string_view name);
std::string_view activityConfidenceName(ActivityConfidence confidence);
std::optional<ActivityConfidence> activityConfidenceFromName(std::string_view name);
std::string_view batteryStateName(BatteryState state);
std::optional<BatteryState> batteryStateFromName(std::string_view name);
std::string_view screenStateName(ScreenState state);
std::optional<ScreenState> screenStateFromName(std::string_view name);

// One payload struct per SensorType, fields in serialization column order.
// Units: accelerations in g, rotation rates in rad/s, magnetic field in
// microtesla, pressure in kPa.

struct AccelerometerPayload {
    double x = 0, y = 0, z = 0;
    bool operator==(const AccelerometerPayload&) const = default;
};

struct GravityPayload {
    double x = 0, y = 0, z = 0;
    bool operator==(const GravityPayload&) const = default;
};

struct LinearAccelerationPayload {
    double x = 0, y = 0, z = 0;
    bool operator==(const LinearAccelerationPayload&) const = default;
};

struct GyroscopePayload {
    double x = 0, y = 0, z = 0;
    bool operator==(const GyroscopePayload&) const = default;
};

/// Unit quaternion; driver-produced samples keep the norm within 1e-9 of 1.
struct RotationPayload {
    double x = 0, y = 0, z = 0, w = 1;
    bool operator==(const RotationPayload&) const = default;
};

struct MagnetometerPayload {
    double x = 0, y = 0, z = 0;
    bool operator==(const MagnetometerPayload&) const = default;
};

/// stepCount is cumulative over the session and never decreases.
struct PedometerPayload {
    std::uint64_t stepCount = 0;
    double distanceMeters = 0;
    bool operator==(const PedometerPayload&) const = default;
};

struct AltimeterPayload {
    double relativeAltitudeMeters = 0;
    double pressureKPa = 101.325;
    bool operator==(const AltimeterPayload&) const = default;
};

struct HumidityPayload {
    double percent = 0; // [0, 100]
    bool operator==(const HumidityPayload&) const = default;
};

struct LightPayload {
    double lux = 0; // >= 0
    bool operator==(const LightPayload&) const = default;
};

struct AmbientTemperaturePayload {
    double celsius = 0;
    bool operator==(const AmbientTemperaturePayload&) const = default;
};

struct LocationPayload {
    double latitude = 0;  // [-90, 90]
    double longitude = 0; // [-180, 180]
    double altitudeMeters = 0;
    double horizontalAccuracyMeters = 10; // > 0
    bool operator==(const LocationPayload&) const = default;
};

struct MotionActivityPayload {
    ActivityClass activity = ActivityClass::Stationary;
    ActivityConfidence confidence = ActivityConfidence::Medium;
    bool operator==(const MotionActivityPayload&) const = default;
};

struct BatteryPayload {
    double level = 1.0; // [0, 1]
    BatteryState state = BatteryState::Unplugged;
    bool operator==(const BatteryPayload&) const = default;
};

struct ScreenStatusPayload {
    ScreenState status = ScreenState::On;
    bool operator==(const ScreenStatusPayload&) const = default;
};

/// Audio is summarized as one RMS amplitude per frame; raw PCM is out of
/// scope for this framework.
struct MicrophonePayload {
    std::uint64_t frameIndex = 0;
    double rmsAmplitude = 0; // [0, 1]
    bool operator==(const MicrophonePayload&) const = default;
};

struct BluetoothClassicPayload {
    std::uint64_t deviceAddress = 0; // low 48 bits
    std::string deviceName;
    int rssi = -60; // dBm
    bool operator==(const BluetoothClassicPayload&) const = default;
};

struct IBeaconProximityPayload {
    beacon::IBeaconFrame frame;
    int rssi = -60; // dBm, [-120, 0]
    bool operator==(const IBeaconProximityPayload&) const = default;
};

struct EddystoneProximityPayload {
    beacon::EddystoneFrame frame;
    int rssi = -60; // dBm, [-120, 0]
    bool operator==(const EddystoneProximityPayload&) const = default;
};

/// Alternative order matches the SensorType enumerator order, so
/// payload.index() == static_cast<size_t>(sensorType) for well-formed samples.
using Payload = std::variant<
    AccelerometerPayload,
    GravityPayload,
    LinearAccelerationPayload,
    GyroscopePayload,
    RotationPayload,
    MagnetometerPayload,
    PedometerPayload,
    AltimeterPayload,
    HumidityPayload,
    LightPayload,
    AmbientTemperaturePayload,
    LocationPayload,
    MotionActivityPayload,
    BatteryPayload,
    ScreenStatusPayload,
    MicrophonePayload,
    BluetoothClassicPayload,
    IBeaconProximityPayload,
    EddystoneProximityPayload>;

inline bool payloadMatchesType(const Payload& payload, SensorType type) {
    return payload.index() == static_cast<std::size_t>(type);
}

/// Timestamped, self-contained data envelope produced by a driver.
/// timestampNanos counts monotonic nanoseconds since session start;
/// relativeSeconds is derived from it and always consistent.
struct SensorSample {
    SensorType sensorType = SensorType::Accelerometer;
    std::uint64_t timestampNanos = 0;
    Payload payload;

    double relativeSeconds() const {
        return static_cast<double>(timestampNanos) * 1e-9;
    }

    bool operator==(const SensorSample&) const = default;
};

} // namespace sensekit
