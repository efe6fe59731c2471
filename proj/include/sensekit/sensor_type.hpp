#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace sensekit {

/// The 19 sensor kinds the framework knows about. The enumerator order is
/// stable: it is the canonical listing order and the payload variant index.
enum class SensorType {
    Accelerometer,
    Gravity,
    LinearAcceleration,
    Gyroscope,
    Rotation,
    Magnetometer,
    Pedometer,
    Altimeter,
    Humidity,
    Light,
    AmbientTemperature,
    Location,
    MotionActivity,
    Battery,
    ScreenStatus,
    Microphone,
    BluetoothClassic,
    IBeaconProximity,
    EddystoneProximity,
};

inline constexpr std::size_t kSensorTypeCount = 19;

/// All sensor types in canonical order, for iteration.
const std::array<SensorType, kSensorTypeCount>& allSensorTypes();

/// Stable canonical name, used in serialization headers, session file names
/// and profile files (e.g. "LinearAcceleration").
std::string_view canonicalName(SensorType type);

/// Inverse of canonicalName. Empty optional for unknown names.
std::optional<SensorType> sensorTypeFromName(std::string_view name);

/// Event-driven sensors emit on state change instead of on a sample clock:
/// Pedometer, MotionActivity, Battery and ScreenStatus.
bool isEventDriven(SensorType type);

/// True for the two BLE beacon sensors (scan/broadcast roles apply).
bool isBeaconSensor(SensorType type);

} // namespace sensekit
