#include "sensekit/availability.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sensekit/errors.hpp"

namespace sensekit {

namespace {

std::array<AvailabilityMode, kSensorTypeCount> allFull() {
    std::array<AvailabilityMode, kSensorTypeCount> modes{};
    modes.fill(AvailabilityMode::Full);
    return modes;
}

void setMode(std::array<AvailabilityMode, kSensorTypeCount>& modes, SensorType type,
             AvailabilityMode mode) {
    modes[static_cast<std::size_t>(type)] = mode;
}

AvailabilityMode parseModeWord(std::string_view word, int lineNo) {
    if (word == "full") return AvailabilityMode::Full;
    if (word == "scan-only") return AvailabilityMode::ScanOnly;
    if (word == "unavailable") return AvailabilityMode::Unavailable;
    raise(ErrorKind::ParseError,
          "line " + std::to_string(lineNo) + ": unknown availability mode '" +
              std::string(word) + "'");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

std::string_view availabilityModeName(AvailabilityMode mode) {
    switch (mode) {
    case AvailabilityMode::Full: return "full";
    case AvailabilityMode::ScanOnly: return "scan-only";
    case AvailabilityMode::Unavailable: return "unavailable";
    }
    return "?";
}

PlatformProfile PlatformProfile::ios() {
    auto modes = allFull();
    setMode(modes, SensorType::Humidity, AvailabilityMode::Unavailable);
    setMode(modes, SensorType::Light, AvailabilityMode::Unavailable);
    setMode(modes, SensorType::AmbientTemperature, AvailabilityMode::Unavailable);
    setMode(modes, SensorType::BluetoothClassic, AvailabilityMode::Unavailable);
    setMode(modes, SensorType::EddystoneProximity, AvailabilityMode::ScanOnly);
    return PlatformProfile("ios", modes);
}

PlatformProfile PlatformProfile::android() {
    auto modes = allFull();
    setMode(modes, SensorType::BluetoothClassic, AvailabilityMode::ScanOnly);
    return PlatformProfile("android", modes);
}

PlatformProfile PlatformProfile::loadFromStream(std::istream& in, std::string name) {
    auto modes = allFull();
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            raise(ErrorKind::ParseError,
                  "line " + std::to_string(lineNo) + ": expected <SensorName>=<mode>");
        }
        std::string_view nameWord = trim(body.substr(0, eq));
        std::string_view modeWord = trim(body.substr(eq + 1));
        auto type = sensorTypeFromName(nameWord);
        if (!type) {
            raise(ErrorKind::ParseError,
                  "line " + std::to_string(lineNo) + ": unknown sensor '" +
                      std::string(nameWord) + "'");
        }
        setMode(modes, *type, parseModeWord(modeWord, lineNo));
    }
    return PlatformProfile(std::move(name), modes);
}

PlatformProfile PlatformProfile::loadFromFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorKind::UnknownProfile, "cannot open platform profile '" + path + "'");
    }
    return loadFromStream(in, std::filesystem::path(path).stem().string());
}

PlatformProfile PlatformProfile::resolve(const std::string& nameOrPath) {
    if (nameOrPath == "ios") return ios();
    if (nameOrPath == "android") return android();
    if (std::filesystem::exists(nameOrPath)) return loadFromFile(nameOrPath);
    raise(ErrorKind::UnknownProfile, "no such platform profile '" + nameOrPath + "'");
}

AvailabilityMode isSensorAvailable(SensorType type, const PlatformProfile& profile) {
    return profile.modeFor(type);
}

} // namespace sensekit
