#include "sensekit/sensor_type.hpp"

namespace sensekit {

namespace {

constexpr std::array<std::string_view, kSensorTypeCount> kCanonicalNames = {
    "Accelerometer",
    "Gravity",
    "LinearAcceleration",
    "Gyroscope",
    "Rotation",
    "Magnetometer",
    "Pedometer",
    "Altimeter",
    "Humidity",
    "Light",
    "AmbientTemperature",
    "Location",
    "MotionActivity",
    "Battery",
    "ScreenStatus",
    "Microphone",
    "BluetoothClassic",
    "IBeaconProximity",
    "EddystoneProximity",
};

} // namespace

const std::array<SensorType, kSensorTypeCount>& allSensorTypes() {
    static const std::array<SensorType, kSensorTypeCount> kAll = [] {
        std::array<SensorType, kSensorTypeCount> all{};
        for (std::size_t i = 0; i < kSensorTypeCount; ++i) {
            all[i] = static_cast<SensorType>(i);
        }
        return all;
    }();
    return kAll;
}

std::string_view canonicalName(SensorType type) {
    return kCanonicalNames[static_cast<std::size_t>(type)];
}

std::optional<SensorType> sensorTypeFromName(std::string_view name) {
    for (std::size_t i = 0; i < kSensorTypeCount; ++i) {
        if (kCanonicalNames[i] == name) {
            return static_cast<SensorType>(i);
        }
    }
    return std::nullopt;
}

bool isEventDriven(SensorType type) {
    switch (type) {
    case SensorType::Pedometer:
    case SensorType::MotionActivity:
    case SensorType::Battery:
    case SensorType::ScreenStatus:
        return true;
    default:
        return false;
    }
}

bool isBeaconSensor(SensorType type) {
    return type == SensorType::IBeaconProximity || type == SensorType::EddystoneProximity;
}

} // namespace sensekit
