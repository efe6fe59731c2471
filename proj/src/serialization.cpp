#include "sensekit/serialization.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "sensekit/errors.hpp"

namespace sensekit {

using ordered_json = nlohmann::ordered_json;

namespace detail {

std::string fixedDecimal(double value, int precision) {
    char buf[512];
    const auto result = std::to_chars(buf, buf + sizeof buf, value,
                                      std::chars_format::fixed, precision);
    return std::string(buf, result.ptr);
}

std::vector<std::string> splitCsvLine(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
                continue;
            }
            current.push_back(c);
            ++i;
            continue;
        }
        if (c == '"' && current.empty()) {
            quoted = true;
            ++i;
            continue;
        }
        if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
            ++i;
            continue;
        }
        current.push_back(c);
        ++i;
    }
    if (quoted) {
        raise(ErrorKind::ParseError,
              "character " + std::to_string(line.size()) + ": unterminated quoted field");
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string formatMacAddress(std::uint64_t address48) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(17);
    for (int byte = 5; byte >= 0; --byte) {
        const auto v = static_cast<std::uint8_t>((address48 >> (byte * 8)) & 0xFF);
        out.push_back(hex[v >> 4]);
        out.push_back(hex[v & 0xF]);
        if (byte != 0) out.push_back(':');
    }
    return out;
}

} // namespace detail

namespace {

using detail::fixedDecimal;

[[noreturn]] void parseFail(const std::string& what) {
    raise(ErrorKind::ParseError, what);
}

std::string quoteCsv(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

double parseDouble(const std::string& field, std::string_view column) {
    double value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end || field.empty()) {
        parseFail("column '" + std::string(column) + "': not a decimal: '" + field + "'");
    }
    return value;
}

template <typename Int>
Int parseInt(const std::string& field, std::string_view column) {
    Int value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end || field.empty()) {
        parseFail("column '" + std::string(column) + "': not an integer: '" + field + "'");
    }
    return value;
}

std::uint64_t parseMacAddress(const std::string& field) {
    const auto bytes = beacon::parseHexBytes(field);
    if (!bytes || bytes->size() != 6) {
        parseFail("column 'deviceAddress': not a 48-bit address: '" + field + "'");
    }
    std::uint64_t out = 0;
    for (std::uint8_t b : *bytes) out = (out << 8) | b;
    return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> parseHexArray(const std::string& field, std::string_view column) {
    const auto bytes = beacon::parseHexBytes(field);
    if (!bytes || bytes->size() != N) {
        parseFail("column '" + std::string(column) + "': expected " + std::to_string(N) +
                  " hex bytes: '" + field + "'");
    }
    std::array<std::uint8_t, N> out{};
    std::copy(bytes->begin(), bytes->end(), out.begin());
    return out;
}

const std::vector<std::string>& payloadColumns(SensorType type) {
    static const std::vector<std::string> kTriAxis = {"x", "y", "z"};
    static const std::vector<std::string> kQuaternion = {"x", "y", "z", "w"};
    static const std::vector<std::string> kPedometer = {"stepCount", "distanceMeters"};
    static const std::vector<std::string> kAltimeter = {"relativeAltitudeMeters",
                                                        "pressureKPa"};
    static const std::vector<std::string> kHumidity = {"percent"};
    static const std::vector<std::string> kLight = {"lux"};
    static const std::vector<std::string> kTemperature = {"celsius"};
    static const std::vector<std::string> kLocation = {
        "latitude", "longitude", "altitudeMeters", "horizontalAccuracyMeters"};
    static const std::vector<std::string> kActivity = {"activity", "confidence"};
    static const std::vector<std::string> kBattery = {"level", "state"};
    static const std::vector<std::string> kScreen = {"status"};
    static const std::vector<std::string> kMicrophone = {"frameIndex", "rmsAmplitude"};
    static const std::vector<std::string> kBluetooth = {"deviceAddress", "deviceName",
                                                        "rssi"};
    static const std::vector<std::string> kIBeacon = {"uuid", "major", "minor",
                                                      "measuredPower", "rssi"};
    static const std::vector<std::string> kEddystone = {
        "frameType", "txPower",  "namespace", "instance",          "url",
        "batteryMilliVolts",     "temperatureC", "advCount", "uptimeDeciseconds", "rssi"};

    switch (type) {
    case SensorType::Accelerometer:
    case SensorType::Gravity:
    case SensorType::LinearAcceleration:
    case SensorType::Gyroscope:
    case SensorType::Magnetometer: return kTriAxis;
    case SensorType::Rotation: return kQuaternion;
    case SensorType::Pedometer: return kPedometer;
    case SensorType::Altimeter: return kAltimeter;
    case SensorType::Humidity: return kHumidity;
    case SensorType::Light: return kLight;
    case SensorType::AmbientTemperature: return kTemperature;
    case SensorType::Location: return kLocation;
    case SensorType::MotionActivity: return kActivity;
    case SensorType::Battery: return kBattery;
    case SensorType::ScreenStatus: return kScreen;
    case SensorType::Microphone: return kMicrophone;
    case SensorType::BluetoothClassic: return kBluetooth;
    case SensorType::IBeaconProximity: return kIBeacon;
    case SensorType::EddystoneProximity: return kEddystone;
    }
    parseFail("unknown sensor type");
}

std::string_view eddystoneFrameTypeName(const beacon::EddystoneFrame& frame) {
    if (std::holds_alternative<beacon::EddystoneUid>(frame)) return "UID";
    if (std::holds_alternative<beacon::EddystoneUrl>(frame)) return "URL";
    return "TLM";
}

std::vector<std::string> payloadCsvFields(const SensorSample& sample) {
    const auto dec = [](double v) { return fixedDecimal(v, 6); };
    return std::visit(
        [&](const auto& p) -> std::vector<std::string> {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, AccelerometerPayload> ||
                          std::is_same_v<P, GravityPayload> ||
                          std::is_same_v<P, LinearAccelerationPayload> ||
                          std::is_same_v<P, GyroscopePayload> ||
                          std::is_same_v<P, MagnetometerPayload>) {
                return {dec(p.x), dec(p.y), dec(p.z)};
            } else if constexpr (std::is_same_v<P, RotationPayload>) {
                return {dec(p.x), dec(p.y), dec(p.z), dec(p.w)};
            } else if constexpr (std::is_same_v<P, PedometerPayload>) {
                return {std::to_string(p.stepCount), dec(p.distanceMeters)};
            } else if constexpr (std::is_same_v<P, AltimeterPayload>) {
                return {dec(p.relativeAltitudeMeters), dec(p.pressureKPa)};
            } else if constexpr (std::is_same_v<P, HumidityPayload>) {
                return {dec(p.percent)};
            } else if constexpr (std::is_same_v<P, LightPayload>) {
                return {dec(p.lux)};
            } else if constexpr (std::is_same_v<P, AmbientTemperaturePayload>) {
                return {dec(p.celsius)};
            } else if constexpr (std::is_same_v<P, LocationPayload>) {
                return {dec(p.latitude), dec(p.longitude), dec(p.altitudeMeters),
                        dec(p.horizontalAccuracyMeters)};
            } else if constexpr (std::is_same_v<P, MotionActivityPayload>) {
                return {std::string(activityClassName(p.activity)),
                        std::string(activityConfidenceName(p.confidence))};
            } else if constexpr (std::is_same_v<P, BatteryPayload>) {
                return {dec(p.level), std::string(batteryStateName(p.state))};
            } else if constexpr (std::is_same_v<P, ScreenStatusPayload>) {
                return {std::string(screenStateName(p.status))};
            } else if constexpr (std::is_same_v<P, MicrophonePayload>) {
                return {std::to_string(p.frameIndex), dec(p.rmsAmplitude)};
            } else if constexpr (std::is_same_v<P, BluetoothClassicPayload>) {
                return {detail::formatMacAddress(p.deviceAddress),
                        quoteCsv(p.deviceName), std::to_string(p.rssi)};
            } else if constexpr (std::is_same_v<P, IBeaconProximityPayload>) {
                return {beacon::formatUuid(p.frame.uuid), std::to_string(p.frame.major),
                        std::to_string(p.frame.minor),
                        std::to_string(p.frame.measuredPower), std::to_string(p.rssi)};
            } else {
                static_assert(std::is_same_v<P, EddystoneProximityPayload>);
                std::vector<std::string> f(10);
                f[0] = eddystoneFrameTypeName(p.frame);
                if (const auto* uid = std::get_if<beacon::EddystoneUid>(&p.frame)) {
                    f[1] = std::to_string(uid->txPowerAt0m);
                    f[2] = beacon::formatHexBytes(uid->namespaceId);
                    f[3] = beacon::formatHexBytes(uid->instanceId);
                } else if (const auto* url = std::get_if<beacon::EddystoneUrl>(&p.frame)) {
                    f[1] = std::to_string(url->txPowerAt0m);
                    f[4] = quoteCsv(url->url);
                } else {
                    const auto& tlm = std::get<beacon::EddystoneTlm>(p.frame);
                    f[5] = std::to_string(tlm.batteryMilliVolts);
                    f[6] = dec(tlm.temperatureC);
                    f[7] = std::to_string(tlm.advCount);
                    f[8] = std::to_string(tlm.uptimeDeciseconds);
                }
                f[9] = std::to_string(p.rssi);
                return f;
            }
        },
        sample.payload);
}

void requireEmpty(const std::vector<std::string>& fields, std::size_t index,
                  std::string_view column) {
    if (!fields[index].empty()) {
        parseFail("column '" + std::string(column) + "' must be empty for this frame type");
    }
}

Payload payloadFromCsvFields(SensorType type, const std::vector<std::string>& f) {
    switch (type) {
    case SensorType::Accelerometer:
        return AccelerometerPayload{parseDouble(f[0], "x"), parseDouble(f[1], "y"),
                                    parseDouble(f[2], "z")};
    case SensorType::Gravity:
        return GravityPayload{parseDouble(f[0], "x"), parseDouble(f[1], "y"),
                              parseDouble(f[2], "z")};
    case SensorType::LinearAcceleration:
        return LinearAccelerationPayload{parseDouble(f[0], "x"), parseDouble(f[1], "y"),
                                         parseDouble(f[2], "z")};
    case SensorType::Gyroscope:
        return GyroscopePayload{parseDouble(f[0], "x"), parseDouble(f[1], "y"),
                                parseDouble(f[2], "z")};
    case SensorType::Rotation:
        return RotationPayload{parseDouble(f[0], "x"), parseDouble(f[1], "y"),
                               parseDouble(f[2], "z"), parseDouble(f[3], "w")};
    case SensorType::Magnetometer:
        return MagnetometerPayload{parseDouble(f[0], "x"), parseDouble(f[1], "y"),
                                   parseDouble(f[2], "z")};
    case SensorType::Pedometer:
        return PedometerPayload{parseInt<std::uint64_t>(f[0], "stepCount"),
                                parseDouble(f[1], "distanceMeters")};
    case SensorType::Altimeter:
        return AltimeterPayload{parseDouble(f[0], "relativeAltitudeMeters"),
                                parseDouble(f[1], "pressureKPa")};
    case SensorType::Humidity:
        return HumidityPayload{parseDouble(f[0], "percent")};
    case SensorType::Light:
        return LightPayload{parseDouble(f[0], "lux")};
    case SensorType::AmbientTemperature:
        return AmbientTemperaturePayload{parseDouble(f[0], "celsius")};
    case SensorType::Location:
        return LocationPayload{parseDouble(f[0], "latitude"), parseDouble(f[1], "longitude"),
                               parseDouble(f[2], "altitudeMeters"),
                               parseDouble(f[3], "horizontalAccuracyMeters")};
    case SensorType::MotionActivity: {
        const auto activity = activityClassFromName(f[0]);
        const auto confidence = activityConfidenceFromName(f[1]);
        if (!activity) parseFail("column 'activity': unknown class '" + f[0] + "'");
        if (!confidence) parseFail("column 'confidence': unknown level '" + f[1] + "'");
        return MotionActivityPayload{*activity, *confidence};
    }
    case SensorType::Battery: {
        const auto state = batteryStateFromName(f[1]);
        if (!state) parseFail("column 'state': unknown state '" + f[1] + "'");
        return BatteryPayload{parseDouble(f[0], "level"), *state};
    }
    case SensorType::ScreenStatus: {
        const auto status = screenStateFromName(f[0]);
        if (!status) parseFail("column 'status': unknown status '" + f[0] + "'");
        return ScreenStatusPayload{*status};
    }
    case SensorType::Microphone:
        return MicrophonePayload{parseInt<std::uint64_t>(f[0], "frameIndex"),
                                 parseDouble(f[1], "rmsAmplitude")};
    case SensorType::BluetoothClassic:
        return BluetoothClassicPayload{parseMacAddress(f[0]), f[1],
                                       parseInt<int>(f[2], "rssi")};
    case SensorType::IBeaconProximity: {
        const auto uuid = beacon::parseUuid(f[0]);
        if (!uuid) parseFail("column 'uuid': malformed uuid '" + f[0] + "'");
        beacon::IBeaconFrame frame;
        frame.uuid = *uuid;
        frame.major = parseInt<std::uint16_t>(f[1], "major");
        frame.minor = parseInt<std::uint16_t>(f[2], "minor");
        frame.measuredPower =
            static_cast<std::int8_t>(parseInt<int>(f[3], "measuredPower"));
        return IBeaconProximityPayload{frame, parseInt<int>(f[4], "rssi")};
    }
    case SensorType::EddystoneProximity: {
        EddystoneProximityPayload payload;
        payload.rssi = parseInt<int>(f[9], "rssi");
        if (f[0] == "UID") {
            beacon::EddystoneUid uid;
            uid.txPowerAt0m = static_cast<std::int8_t>(parseInt<int>(f[1], "txPower"));
            uid.namespaceId = parseHexArray<10>(f[2], "namespace");
            uid.instanceId = parseHexArray<6>(f[3], "instance");
            requireEmpty(f, 4, "url");
            for (std::size_t i = 5; i <= 8; ++i) requireEmpty(f, i, payloadColumns(type)[i]);
            payload.frame = uid;
        } else if (f[0] == "URL") {
            beacon::EddystoneUrl url;
            url.txPowerAt0m = static_cast<std::int8_t>(parseInt<int>(f[1], "txPower"));
            url.url = f[4];
            requireEmpty(f, 2, "namespace");
            requireEmpty(f, 3, "instance");
            for (std::size_t i = 5; i <= 8; ++i) requireEmpty(f, i, payloadColumns(type)[i]);
            payload.frame = url;
        } else if (f[0] == "TLM") {
            beacon::EddystoneTlm tlm;
            for (std::size_t i = 1; i <= 4; ++i) requireEmpty(f, i, payloadColumns(type)[i]);
            tlm.batteryMilliVolts = parseInt<std::uint16_t>(f[5], "batteryMilliVolts");
            tlm.temperatureC = parseDouble(f[6], "temperatureC");
            tlm.advCount = parseInt<std::uint32_t>(f[7], "advCount");
            tlm.uptimeDeciseconds = parseInt<std::uint32_t>(f[8], "uptimeDeciseconds");
            payload.frame = tlm;
        } else {
            parseFail("column 'frameType': unknown frame type '" + f[0] + "'");
        }
        return payload;
    }
    }
    parseFail("unknown sensor type");
}

ordered_json payloadToJsonObject(const SensorSample& sample) {
    return std::visit(
        [&](const auto& p) -> ordered_json {
            using P = std::decay_t<decltype(p)>;
            ordered_json j;
            if constexpr (std::is_same_v<P, AccelerometerPayload> ||
                          std::is_same_v<P, GravityPayload> ||
                          std::is_same_v<P, LinearAccelerationPayload> ||
                          std::is_same_v<P, GyroscopePayload> ||
                          std::is_same_v<P, MagnetometerPayload>) {
                j["x"] = p.x;
                j["y"] = p.y;
                j["z"] = p.z;
            } else if constexpr (std::is_same_v<P, RotationPayload>) {
                j["x"] = p.x;
                j["y"] = p.y;
                j["z"] = p.z;
                j["w"] = p.w;
            } else if constexpr (std::is_same_v<P, PedometerPayload>) {
                j["stepCount"] = p.stepCount;
                j["distanceMeters"] = p.distanceMeters;
            } else if constexpr (std::is_same_v<P, AltimeterPayload>) {
                j["relativeAltitudeMeters"] = p.relativeAltitudeMeters;
                j["pressureKPa"] = p.pressureKPa;
            } else if constexpr (std::is_same_v<P, HumidityPayload>) {
                j["percent"] = p.percent;
            } else if constexpr (std::is_same_v<P, LightPayload>) {
                j["lux"] = p.lux;
            } else if constexpr (std::is_same_v<P, AmbientTemperaturePayload>) {
                j["celsius"] = p.celsius;
            } else if constexpr (std::is_same_v<P, LocationPayload>) {
                j["latitude"] = p.latitude;
                j["longitude"] = p.longitude;
                j["altitudeMeters"] = p.altitudeMeters;
                j["horizontalAccuracyMeters"] = p.horizontalAccuracyMeters;
            } else if constexpr (std::is_same_v<P, MotionActivityPayload>) {
                j["activity"] = std::string(activityClassName(p.activity));
                j["confidence"] = std::string(activityConfidenceName(p.confidence));
            } else if constexpr (std::is_same_v<P, BatteryPayload>) {
                j["level"] = p.level;
                j["state"] = std::string(batteryStateName(p.state));
            } else if constexpr (std::is_same_v<P, ScreenStatusPayload>) {
                j["status"] = std::string(screenStateName(p.status));
            } else if constexpr (std::is_same_v<P, MicrophonePayload>) {
                j["frameIndex"] = p.frameIndex;
                j["rmsAmplitude"] = p.rmsAmplitude;
            } else if constexpr (std::is_same_v<P, BluetoothClassicPayload>) {
                j["deviceAddress"] = detail::formatMacAddress(p.deviceAddress);
                j["deviceName"] = p.deviceName;
                j["rssi"] = p.rssi;
            } else if constexpr (std::is_same_v<P, IBeaconProximityPayload>) {
                j["uuid"] = beacon::formatUuid(p.frame.uuid);
                j["major"] = p.frame.major;
                j["minor"] = p.frame.minor;
                j["measuredPower"] = p.frame.measuredPower;
                j["rssi"] = p.rssi;
            } else {
                static_assert(std::is_same_v<P, EddystoneProximityPayload>);
                j["frameType"] = std::string(eddystoneFrameTypeName(p.frame));
                if (const auto* uid = std::get_if<beacon::EddystoneUid>(&p.frame)) {
                    j["txPower"] = uid->txPowerAt0m;
                    j["namespace"] = beacon::formatHexBytes(uid->namespaceId);
                    j["instance"] = beacon::formatHexBytes(uid->instanceId);
                } else if (const auto* url = std::get_if<beacon::EddystoneUrl>(&p.frame)) {
                    j["txPower"] = url->txPowerAt0m;
                    j["url"] = url->url;
                } else {
                    const auto& tlm = std::get<beacon::EddystoneTlm>(p.frame);
                    j["batteryMilliVolts"] = tlm.batteryMilliVolts;
                    j["temperatureC"] = tlm.temperatureC;
                    j["advCount"] = tlm.advCount;
                    j["uptimeDeciseconds"] = tlm.uptimeDeciseconds;
                }
                j["rssi"] = p.rssi;
            }
            return j;
        },
        sample.payload);
}

template <typename T>
T jsonGet(const ordered_json& j, const char* key) {
    if (!j.contains(key)) {
        parseFail(std::string("missing key '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        parseFail(std::string("key '") + key + "': " + e.what());
    }
}

Payload payloadFromJson(SensorType type, const ordered_json& d) {
    switch (type) {
    case SensorType::Accelerometer:
        return AccelerometerPayload{jsonGet<double>(d, "x"), jsonGet<double>(d, "y"),
                                    jsonGet<double>(d, "z")};
    case SensorType::Gravity:
        return GravityPayload{jsonGet<double>(d, "x"), jsonGet<double>(d, "y"),
                              jsonGet<double>(d, "z")};
    case SensorType::LinearAcceleration:
        return LinearAccelerationPayload{jsonGet<double>(d, "x"), jsonGet<double>(d, "y"),
                                         jsonGet<double>(d, "z")};
    case SensorType::Gyroscope:
        return GyroscopePayload{jsonGet<double>(d, "x"), jsonGet<double>(d, "y"),
                                jsonGet<double>(d, "z")};
    case SensorType::Rotation:
        return RotationPayload{jsonGet<double>(d, "x"), jsonGet<double>(d, "y"),
                               jsonGet<double>(d, "z"), jsonGet<double>(d, "w")};
    case SensorType::Magnetometer:
        return MagnetometerPayload{jsonGet<double>(d, "x"), jsonGet<double>(d, "y"),
                                   jsonGet<double>(d, "z")};
    case SensorType::Pedometer:
        return PedometerPayload{jsonGet<std::uint64_t>(d, "stepCount"),
                                jsonGet<double>(d, "distanceMeters")};
    case SensorType::Altimeter:
        return AltimeterPayload{jsonGet<double>(d, "relativeAltitudeMeters"),
                                jsonGet<double>(d, "pressureKPa")};
    case SensorType::Humidity:
        return HumidityPayload{jsonGet<double>(d, "percent")};
    case SensorType::Light:
        return LightPayload{jsonGet<double>(d, "lux")};
    case SensorType::AmbientTemperature:
        return AmbientTemperaturePayload{jsonGet<double>(d, "celsius")};
    case SensorType::Location:
        return LocationPayload{jsonGet<double>(d, "latitude"),
                               jsonGet<double>(d, "longitude"),
                               jsonGet<double>(d, "altitudeMeters"),
                               jsonGet<double>(d, "horizontalAccuracyMeters")};
    case SensorType::MotionActivity: {
        const auto activity = activityClassFromName(jsonGet<std::string>(d, "activity"));
        const auto confidence =
            activityConfidenceFromName(jsonGet<std::string>(d, "confidence"));
        if (!activity) parseFail("key 'activity': unknown class");
        if (!confidence) parseFail("key 'confidence': unknown level");
        return MotionActivityPayload{*activity, *confidence};
    }
    case SensorType::Battery: {
        const auto state = batteryStateFromName(jsonGet<std::string>(d, "state"));
        if (!state) parseFail("key 'state': unknown state");
        return BatteryPayload{jsonGet<double>(d, "level"), *state};
    }
    case SensorType::ScreenStatus: {
        const auto status = screenStateFromName(jsonGet<std::string>(d, "status"));
        if (!status) parseFail("key 'status': unknown status");
        return ScreenStatusPayload{*status};
    }
    case SensorType::Microphone:
        return MicrophonePayload{jsonGet<std::uint64_t>(d, "frameIndex"),
                                 jsonGet<double>(d, "rmsAmplitude")};
    case SensorType::BluetoothClassic:
        return BluetoothClassicPayload{parseMacAddress(jsonGet<std::string>(d, "deviceAddress")),
                                       jsonGet<std::string>(d, "deviceName"),
                                       jsonGet<int>(d, "rssi")};
    case SensorType::IBeaconProximity: {
        const auto uuid = beacon::parseUuid(jsonGet<std::string>(d, "uuid"));
        if (!uuid) parseFail("key 'uuid': malformed uuid");
        beacon::IBeaconFrame frame;
        frame.uuid = *uuid;
        frame.major = jsonGet<std::uint16_t>(d, "major");
        frame.minor = jsonGet<std::uint16_t>(d, "minor");
        frame.measuredPower = static_cast<std::int8_t>(jsonGet<int>(d, "measuredPower"));
        return IBeaconProximityPayload{frame, jsonGet<int>(d, "rssi")};
    }
    case SensorType::EddystoneProximity: {
        EddystoneProximityPayload payload;
        payload.rssi = jsonGet<int>(d, "rssi");
        const auto frameType = jsonGet<std::string>(d, "frameType");
        if (frameType == "UID") {
            beacon::EddystoneUid uid;
            uid.txPowerAt0m = static_cast<std::int8_t>(jsonGet<int>(d, "txPower"));
            uid.namespaceId = parseHexArray<10>(jsonGet<std::string>(d, "namespace"),
                                                "namespace");
            uid.instanceId = parseHexArray<6>(jsonGet<std::string>(d, "instance"),
                                              "instance");
            payload.frame = uid;
        } else if (frameType == "URL") {
            beacon::EddystoneUrl url;
            url.txPowerAt0m = static_cast<std::int8_t>(jsonGet<int>(d, "txPower"));
            url.url = jsonGet<std::string>(d, "url");
            payload.frame = url;
        } else if (frameType == "TLM") {
            beacon::EddystoneTlm tlm;
            tlm.batteryMilliVolts = jsonGet<std::uint16_t>(d, "batteryMilliVolts");
            tlm.temperatureC = jsonGet<double>(d, "temperatureC");
            tlm.advCount = jsonGet<std::uint32_t>(d, "advCount");
            tlm.uptimeDeciseconds = jsonGet<std::uint32_t>(d, "uptimeDeciseconds");
            payload.frame = tlm;
        } else {
            parseFail("key 'frameType': unknown frame type '" + frameType + "'");
        }
        return payload;
    }
    }
    parseFail("unknown sensor type");
}

void requireSchema(const SensorSample& sample) {
    if (!payloadMatchesType(sample.payload, sample.sensorType)) {
        raise(ErrorKind::SchemaMismatch,
              "payload does not belong to sensor " +
                  std::string(canonicalName(sample.sensorType)));
    }
}

} // namespace

std::string csvHeader(SensorType type) {
    std::string header = "timestampNanos,relativeSeconds";
    for (const auto& column : payloadColumns(type)) {
        header.push_back(',');
        header += column;
    }
    return header;
}

std::string csvRow(const SensorSample& sample) {
    requireSchema(sample);
    std::string row = std::to_string(sample.timestampNanos);
    row.push_back(',');
    row += fixedDecimal(sample.relativeSeconds(), 9);
    for (const auto& field : payloadCsvFields(sample)) {
        row.push_back(',');
        row += field;
    }
    return row;
}

SensorSample parseCsvRow(SensorType type, std::string_view line) {
    const auto fields = detail::splitCsvLine(line);
    const auto& columns = payloadColumns(type);
    if (fields.size() != columns.size() + 2) {
        parseFail("expected " + std::to_string(columns.size() + 2) + " columns, got " +
                  std::to_string(fields.size()));
    }
    SensorSample sample;
    sample.sensorType = type;
    sample.timestampNanos = parseInt<std::uint64_t>(fields[0], "timestampNanos");
    parseDouble(fields[1], "relativeSeconds"); // validated for form, derived on output
    sample.payload = payloadFromCsvFields(
        type, std::vector<std::string>(fields.begin() + 2, fields.end()));
    return sample;
}

std::string toJson(const SensorSample& sample) {
    requireSchema(sample);
    ordered_json j;
    j["sensorType"] = std::string(canonicalName(sample.sensorType));
    j["timestampNanos"] = sample.timestampNanos;
    j["relativeSeconds"] = sample.relativeSeconds();
    j["data"] = payloadToJsonObject(sample);
    return j.dump();
}

SensorSample fromJson(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parseFail(std::string("byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object()) {
        parseFail("expected a JSON object");
    }
    const auto typeName = jsonGet<std::string>(j, "sensorType");
    const auto type = sensorTypeFromName(typeName);
    if (!type) {
        parseFail("unknown sensorType '" + typeName + "'");
    }
    SensorSample sample;
    sample.sensorType = *type;
    sample.timestampNanos = jsonGet<std::uint64_t>(j, "timestampNanos");
    if (!j.contains("data") || !j.at("data").is_object()) {
        parseFail("missing 'data' object");
    }
    sample.payload = payloadFromJson(*type, j.at("data"));
    return sample;
}

void writeSamplesCsv(std::ostream& out, SensorType type,
                     std::span<const SensorSample> samples) {
    out << kCsvFileHeader << '\n' << csvHeader(type) << '\n';
    for (const auto& sample : samples) {
        if (sample.sensorType != type) {
            raise(ErrorKind::SchemaMismatch,
                  "sample of type " + std::string(canonicalName(sample.sensorType)) +
                      " in a " + std::string(canonicalName(type)) + " file");
        }
        out << csvRow(sample) << '\n';
    }
}

std::vector<SensorSample> readSamplesCsv(std::istream& in, SensorType type) {
    std::vector<SensorSample> samples;
    std::string line;
    int lineNo = 0;
    bool sawVersion = false;
    bool sawHeader = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!sawVersion) {
            if (line != kCsvFileHeader) {
                parseFail("line 1: expected '" + std::string(kCsvFileHeader) + "'");
            }
            sawVersion = true;
            continue;
        }
        if (!sawHeader) {
            if (line != csvHeader(type)) {
                raise(ErrorKind::SchemaMismatch,
                      "line 2: header does not match the " +
                          std::string(canonicalName(type)) + " schema");
            }
            sawHeader = true;
            continue;
        }
        if (line.empty()) continue;
        try {
            samples.push_back(parseCsvRow(type, line));
        } catch (const SensingError& e) {
            raise(e.kind(), "line " + std::to_string(lineNo) + ": " + e.what());
        }
    }
    if (!sawVersion || !sawHeader) {
        parseFail("file is missing the version or header line");
    }
    return samples;
}

void writeSamplesJsonl(std::ostream& out, std::span<const SensorSample> samples) {
    for (const auto& sample : samples) {
        out << toJson(sample) << '\n';
    }
}

std::vector<SensorSample> readSamplesJsonl(std::istream& in, SensorType type) {
    std::vector<SensorSample> samples;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            samples.push_back(fromJson(line));
        } catch (const SensingError& e) {
            raise(e.kind(), "line " + std::to_string(lineNo) + ": " + e.what());
        }
        if (samples.back().sensorType != type) {
            raise(ErrorKind::SchemaMismatch,
                  "line " + std::to_string(lineNo) + ": sample of type " +
                      std::string(canonicalName(samples.back().sensorType)) + " in a " +
                      std::string(canonicalName(type)) + " file");
        }
    }
    return samples;
}

} // namespace sensekit
