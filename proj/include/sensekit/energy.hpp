#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sensekit/config.hpp"
#include "sensekit/sensor_type.hpp"

namespace sensekit::energy {

/// Labels of the built-in calibration rows. A profile may carry any custom
/// labels on top; draw is modeled per calibrated mode, not per rate, so a
/// different rate needs its own profile row.
namespace modes {
inline constexpr std::string_view kIdle = "idle";
inline constexpr std::string_view kAccelerometer = "accelerometer";
inline constexpr std::string_view kGyroscope = "gyroscope";
inline constexpr std::string_view kMagnetometer = "magnetometer";
inline constexpr std::string_view kDeviceMotion = "device-motion";
inline constexpr std::string_view kLocationBest = "location-best";
inline constexpr std::string_view kIBeaconBroadcast = "ibeacon-broadcast";
inline constexpr std::string_view kIBeaconScan = "ibeacon-scan";
inline constexpr std::string_view kIBeaconScanBroadcast = "ibeacon-scan-broadcast";
inline constexpr std::string_view kMicrophone = "microphone";
} // namespace modes

/// Rough grouping used to flag predictions that mix sensing categories the
/// calibration data never measured together.
enum class ModeCategory { Baseline, Motion, Positioning, Radio, Audio, Custom };

ModeCategory modeCategory(std::string_view label);

/// Device battery capacity plus the calibration table: how many hours the
/// device lasted with each sensing mode running alone. The idle row is the
/// baseline every overhead is measured against.
struct EnergyProfile {
    std::string deviceName;
    double capacityMilliampHours = 0;
    std::map<std::string, double> hoursLasted;

    bool hasMode(std::string_view label) const {
        return hoursLasted.count(std::string(label)) != 0;
    }
};

/// The iPhone 5S calibration profile (1560 mAh) with all ten measured rows.
const EnergyProfile& builtinIphone5s();

/// Validates EnergyProfile invariants: positive capacity, an idle row,
/// positive hours everywhere. Raises InvariantViolation.
void validateProfile(const EnergyProfile& profile);

/// Parses the profile text format: `device=<name>`, `capacity_mAh=<decimal>`
/// and one `mode.<label>=<hours>` line per calibrated mode.
EnergyProfile loadProfile(const std::string& path);
EnergyProfile parseProfile(std::istream& in);

/// Writes the profile in the same text format.
std::string formatProfile(const EnergyProfile& profile);

/// Mean current that empties the battery in the measured time:
/// capacity / hoursLasted(mode). Raises UnknownMode.
double currentDraw(const EnergyProfile& profile, std::string_view mode);

/// Draw attributable to the mode itself, relative to idle. Negative
/// differences (a mode measured cheaper than idle) clamp to zero; callers
/// that want to warn can check overheadClamped().
double overheadDraw(const EnergyProfile& profile, std::string_view mode);
bool overheadClamped(const EnergyProfile& profile, std::string_view mode);

/// Additive lifetime model: capacity / (idle draw + sum of overheads).
/// The empty set returns the idle hours; a singleton reproduces its
/// calibration row. The idle label may appear in the set and is ignored.
double predictLifetime(const EnergyProfile& profile,
                       const std::set<std::string>& activeModes);

/// True when the active set mixes sensing categories (motion + radio etc.);
/// composed predictions across categories are uncalibrated.
bool crossesCategories(const std::set<std::string>& activeModes);

/// Battery level over time under a constant load, linear to empty.
struct DischargeSeries {
    struct Point {
        double timeHours = 0;
        double level = 1.0; // [0, 1]
    };
    std::vector<Point> points;
};

/// Samples the linear discharge level(t) = max(0, 1 - t/lifetime) every
/// stepMinutes; the series ends at the first point that reaches level 0.
DischargeSeries simulateDischarge(const EnergyProfile& profile,
                                  const std::set<std::string>& activeModes,
                                  double stepMinutes);

/// Maps a registered sensor set onto calibration mode labels. Any of
/// Gravity/LinearAcceleration/Rotation engages the fused device-motion
/// hardware, so they all map to the device-motion row; beacon roles pick
/// between the scan/broadcast/scan-broadcast rows.
std::set<std::string> modesForSensors(const std::vector<SensorConfig>& configs);

} // namespace sensekit::energy
