#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>

#include "sensekit/sensor_type.hpp"

namespace sensekit {

/// How a platform exposes a sensor. ScanOnly applies to radio sensors whose
/// broadcast side is blocked (scanning still works).
enum class AvailabilityMode {
    Full,
    ScanOnly,
    Unavailable,
};

std::string_view availabilityModeName(AvailabilityMode mode);

/// Declarative matrix of which sensors a device class exposes and in which
/// mode. Two profiles are built in ("ios", "android"); custom profiles load
/// from text files with one `<CanonicalName>=<full|scan-only|unavailable>`
/// line per sensor. Sensors a file does not mention default to Full.
class PlatformProfile {
public:
    PlatformProfile() = default;
    PlatformProfile(std::string name, std::array<AvailabilityMode, kSensorTypeCount> modes)
        : name_(std::move(name)), modes_(modes) {}

    const std::string& name() const { return name_; }
    AvailabilityMode modeFor(SensorType type) const {
        return modes_[static_cast<std::size_t>(type)];
    }

    static PlatformProfile ios();
    static PlatformProfile android();

    /// Loads a custom profile from a text file. Unknown sensor names or mode
    /// words raise ParseError; a missing file raises UnknownProfile.
    static PlatformProfile loadFromFile(const std::string& path);
    static PlatformProfile loadFromStream(std::istream& in, std::string name);

    /// Resolves "ios"/"android" to the built-ins, anything else as a file path.
    static PlatformProfile resolve(const std::string& nameOrPath);

private:
    std::string name_;
    std::array<AvailabilityMode, kSensorTypeCount> modes_{};
};

/// Pure lookup of the profile's declared mode for a sensor.
AvailabilityMode isSensorAvailable(SensorType type, const PlatformProfile& profile);

} // namespace sensekit
