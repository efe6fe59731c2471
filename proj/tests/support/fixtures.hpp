#pragma once

#include <vector>

#include "sensekit/payload.hpp"

namespace sensekit::testsupport {

/// One representative sample per sensor type, enum order. All decimals sit
/// on the CSV codec's 6-decimal lattice so both encodings round-trip the
/// values bit-exactly; the golden files are frozen from these.
inline std::vector<SensorSample> goldenSamples() {
    std::vector<SensorSample> samples;
    auto add = [&samples](SensorType type, std::uint64_t ts, Payload payload) {
        samples.push_back(SensorSample{type, ts, std::move(payload)});
    };

    add(SensorType::Accelerometer, 0, AccelerometerPayload{0.0, 0.0, 1.0});
    add(SensorType::Gravity, 10'000'000, GravityPayload{0.012345, -0.006789, 0.999899});
    add(SensorType::LinearAcceleration, 20'000'000,
        LinearAccelerationPayload{0.001, -0.002, 0.0035});
    add(SensorType::Gyroscope, 5'000'000, GyroscopePayload{0.1, -0.25, 0.333333});
    add(SensorType::Rotation, 1'000'000'000, RotationPayload{0.5, 0.5, 0.5, 0.5});
    add(SensorType::Magnetometer, 1'500'000'000, MagnetometerPayload{21.5, 4.75, -43.25});
    add(SensorType::Pedometer, 30'000'000'000, PedometerPayload{42, 31.5});
    add(SensorType::Altimeter, 2'000'000'000, AltimeterPayload{1.25, 101.31});
    add(SensorType::Humidity, 3'000'000'000, HumidityPayload{45.5});
    add(SensorType::Light, 4'000'000'000, LightPayload{320.25});
    add(SensorType::AmbientTemperature, 5'000'000'000, AmbientTemperaturePayload{21.75});
    add(SensorType::Location, 6'000'000'000,
        LocationPayload{51.5246, -0.0401, 12.5, 5.0});
    add(SensorType::MotionActivity, 7'000'000'000,
        MotionActivityPayload{ActivityClass::Walking, ActivityConfidence::High});
    add(SensorType::Battery, 0, BatteryPayload{0.5, BatteryState::Unplugged});
    add(SensorType::ScreenStatus, 8'000'000'000, ScreenStatusPayload{ScreenState::Off});
    add(SensorType::Microphone, 9'000'000'000, MicrophonePayload{3, 0.52});

    BluetoothClassicPayload bluetooth;
    bluetooth.deviceAddress = 0x0A1B2C3D4E5FULL;
    bluetooth.deviceName = "BT-01AB";
    bluetooth.rssi = -63;
    add(SensorType::BluetoothClassic, 10'000'000'000, bluetooth);

    IBeaconProximityPayload ibeacon;
    ibeacon.frame.uuid = {};
    ibeacon.frame.major = 1;
    ibeacon.frame.minor = 2;
    ibeacon.frame.measuredPower = -59;
    ibeacon.rssi = -59;
    add(SensorType::IBeaconProximity, 11'000'000'000, ibeacon);

    EddystoneProximityPayload eddystone;
    beacon::EddystoneUrl url;
    url.txPowerAt0m = -10;
    url.url = "http://www.google.com";
    eddystone.frame = url;
    eddystone.rssi = -72;
    add(SensorType::EddystoneProximity, 12'000'000'000, eddystone);

    return samples;
}

} // namespace sensekit::testsupport
