#include "sensekit/energy.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sensekit/errors.hpp"

namespace sensekit::energy {

namespace {

double parseDecimal(const std::string& text, const std::string& what) {
    try {
        size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size())
            raise(ErrorKind::ParseError, "trailing characters in " + what + ": '" + text + "'");
        return value;
    } catch (const SensingError&) {
        throw;
    } catch (const std::exception&) {
        raise(ErrorKind::ParseError, "bad decimal for " + what + ": '" + text + "'");
    }
}

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

ModeCategory modeCategory(std::string_view label) {
    if (label == modes::kIdle)
        return ModeCategory::Baseline;
    if (label == modes::kAccelerometer || label == modes::kGyroscope ||
        label == modes::kMagnetometer || label == modes::kDeviceMotion)
        return ModeCategory::Motion;
    if (label == modes::kLocationBest)
        return ModeCategory::Positioning;
    if (label == modes::kIBeaconBroadcast || label == modes::kIBeaconScan ||
        label == modes::kIBeaconScanBroadcast)
        return ModeCategory::Radio;
    if (label == modes::kMicrophone)
        return ModeCategory::Audio;
    return ModeCategory::Custom;
}

const EnergyProfile& builtinIphone5s() {
    static const EnergyProfile profile = [] {
        EnergyProfile p;
        p.deviceName = "iPhone 5S";
        p.capacityMilliampHours = 1560.0;
        p.hoursLasted = {
            {std::string(modes::kIdle), 51.27},
            {std::string(modes::kAccelerometer), 31.51},
            {std::string(modes::kGyroscope), 28.15},
            {std::string(modes::kMagnetometer), 34.45},
            {std::string(modes::kDeviceMotion), 21.07},
            {std::string(modes::kLocationBest), 17.42},
            {std::string(modes::kIBeaconBroadcast), 46.43},
            {std::string(modes::kIBeaconScan), 25.21},
            {std::string(modes::kIBeaconScanBroadcast), 25.26},
            {std::string(modes::kMicrophone), 35.41},
        };
        return p;
    }();
    return profile;
}

void validateProfile(const EnergyProfile& profile) {
    if (!(profile.capacityMilliampHours > 0))
        raise(ErrorKind::InvariantViolation, "battery capacity must be positive");
    if (!profile.hasMode(modes::kIdle))
        raise(ErrorKind::InvariantViolation, "profile has no idle row");
    for (const auto& [label, hours] : profile.hoursLasted) {
        if (label.empty())
            raise(ErrorKind::InvariantViolation, "empty mode label");
        if (!(hours > 0))
            raise(ErrorKind::InvariantViolation, "non-positive hours for mode '" + label + "'");
    }
}

EnergyProfile parseProfile(std::istream& in) {
    EnergyProfile profile;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            raise(ErrorKind::ParseError,
                  "profile line " + std::to_string(lineNo) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "device") {
            profile.deviceName = value;
        } else if (key == "capacity_mAh") {
            profile.capacityMilliampHours = parseDecimal(value, "capacity_mAh");
        } else if (key.rfind("mode.", 0) == 0) {
            std::string label = key.substr(5);
            if (label.empty())
                raise(ErrorKind::ParseError,
                      "profile line " + std::to_string(lineNo) + ": empty mode label");
            profile.hoursLasted[label] = parseDecimal(value, "mode." + label);
        } else {
            raise(ErrorKind::ParseError,
                  "profile line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
        }
    }
    validateProfile(profile);
    return profile;
}

EnergyProfile loadProfile(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorKind::UnknownProfile, "cannot open energy profile: " + path);
    return parseProfile(in);
}

std::string formatProfile(const EnergyProfile& profile) {
    std::ostringstream out;
    out << "device=" << profile.deviceName << "\n";
    out << "capacity_mAh=" << profile.capacityMilliampHours << "\n";
    for (const auto& [label, hours] : profile.hoursLasted)
        out << "mode." << label << "=" << hours << "\n";
    return out.str();
}

namespace {

double hoursFor(const EnergyProfile& profile, std::string_view mode) {
    auto it = profile.hoursLasted.find(std::string(mode));
    if (it == profile.hoursLasted.end())
        raise(ErrorKind::UnknownMode, "no calibration row for mode '" + std::string(mode) + "'");
    return it->second;
}

} // namespace

double currentDraw(const EnergyProfile& profile, std::string_view mode) {
    return profile.capacityMilliampHours / hoursFor(profile, mode);
}

double overheadDraw(const EnergyProfile& profile, std::string_view mode) {
    double extra = currentDraw(profile, mode) - currentDraw(profile, modes::kIdle);
    return extra < 0 ? 0.0 : extra;
}

bool overheadClamped(const EnergyProfile& profile, std::string_view mode) {
    return currentDraw(profile, mode) < currentDraw(profile, modes::kIdle);
}

double predictLifetime(const EnergyProfile& profile, const std::set<std::string>& activeModes) {
    double total = currentDraw(profile, modes::kIdle);
    bool any = false;
    for (const std::string& mode : activeModes) {
        if (mode == modes::kIdle)
            continue;
        total += overheadDraw(profile, mode);
        any = true;
    }
    if (!any)
        return hoursFor(profile, modes::kIdle);
    return profile.capacityMilliampHours / total;
}

bool crossesCategories(const std::set<std::string>& activeModes) {
    ModeCategory seen = ModeCategory::Baseline;
    bool haveOne = false;
    for (const std::string& mode : activeModes) {
        ModeCategory cat = modeCategory(mode);
        if (cat == ModeCategory::Baseline)
            continue;
        if (haveOne && cat != seen)
            return true;
        seen = cat;
        haveOne = true;
    }
    return false;
}

DischargeSeries simulateDischarge(const EnergyProfile& profile,
                                  const std::set<std::string>& activeModes,
                                  double stepMinutes) {
    if (!(stepMinutes > 0))
        raise(ErrorKind::InvalidConfig, "discharge step must be positive");
    double lifetimeHours = predictLifetime(profile, activeModes);
    double stepHours = stepMinutes / 60.0;
    DischargeSeries series;
    for (long k = 0;; ++k) {
        double t = static_cast<double>(k) * stepHours;
        double level = 1.0 - t / lifetimeHours;
        if (level <= 0) {
            series.points.push_back({t, 0.0});
            break;
        }
        series.points.push_back({t, level});
    }
    return series;
}

std::set<std::string> modesForSensors(const std::vector<SensorConfig>& configs) {
    std::set<std::string> active;
    bool scan = false;
    bool broadcast = false;
    for (const SensorConfig& config : configs) {
        switch (config.sensorType) {
        case SensorType::Accelerometer:
            active.insert(std::string(modes::kAccelerometer));
            break;
        case SensorType::Gyroscope:
            active.insert(std::string(modes::kGyroscope));
            break;
        case SensorType::Magnetometer:
            active.insert(std::string(modes::kMagnetometer));
            break;
        case SensorType::Gravity:
        case SensorType::LinearAcceleration:
        case SensorType::Rotation:
            active.insert(std::string(modes::kDeviceMotion));
            break;
        case SensorType::Location:
            active.insert(std::string(modes::kLocationBest));
            break;
        case SensorType::Microphone:
            active.insert(std::string(modes::kMicrophone));
            break;
        case SensorType::IBeaconProximity:
            scan = scan || config.roles.scan;
            broadcast = broadcast || config.roles.broadcast;
            break;
        case SensorType::EddystoneProximity:
            scan = scan || config.roles.scan;
            break;
        default:
            break;
        }
    }
    if (scan && broadcast)
        active.insert(std::string(modes::kIBeaconScanBroadcast));
    else if (scan)
        active.insert(std::string(modes::kIBeaconScan));
    else if (broadcast)
        active.insert(std::string(modes::kIBeaconBroadcast));
    return active;
}

} // namespace sensekit::energy
