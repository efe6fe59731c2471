#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sensekit::beacon {

/// Decoded iBeacon advertisement. `measuredPower` is the beacon's signal
/// strength calibrated at 1 meter, broadcast as a two's-complement byte.
struct IBeaconFrame {
    std::array<std::uint8_t, 16> uuid{};
    std::uint16_t major = 0;
    std::uint16_t minor = 0;
    std::int8_t measuredPower = -59;

    bool operator==(const IBeaconFrame&) const = default;
};

struct EddystoneUid {
    std::array<std::uint8_t, 10> namespaceId{};
    std::array<std::uint8_t, 6> instanceId{};
    std::int8_t txPowerAt0m = -20;

    bool operator==(const EddystoneUid&) const = default;
};

struct EddystoneUrl {
    std::int8_t txPowerAt0m = -20;
    std::string url;

    bool operator==(const EddystoneUrl&) const = default;
};

/// Telemetry frame. Temperature is 8.8 signed fixed-point on the wire;
/// encode quantizes to 1/256 degC.
struct EddystoneTlm {
    std::uint16_t batteryMilliVolts = 0;
    double temperatureC = 0.0;
    std::uint32_t advCount = 0;
    std::uint32_t uptimeDeciseconds = 0;

    bool operator==(const EddystoneTlm&) const = default;
};

using EddystoneFrame = std::variant<EddystoneUid, EddystoneUrl, EddystoneTlm>;

// iBeacon AD structure: length 0x1A, type 0xFF, company 0x4C 0x00, beacon
// type 0x02, payload length 0x15, uuid, major BE, minor BE, measured power.
inline constexpr std::size_t kIBeaconFrameBytes = 27;

// Encoded URL budget: scheme-prefix byte plus expansion-coded remainder.
inline constexpr std::size_t kMaxEncodedUrlBytes = 18;

// Converts Eddystone's 0 m reference power to the 1 m reference the
// path-loss model expects.
inline constexpr int kEddystone0mTo1mDb = 41;

std::vector<std::uint8_t> encodeIBeacon(const IBeaconFrame& frame);
IBeaconFrame decodeIBeacon(std::span<const std::uint8_t> bytes);

/// Encodes the 0xFEAA service-data payload (frame-type byte onward).
/// URL frames raise UrlTooLong past the 18-byte encoded-URL budget and
/// BadUrlEncoding for strings the code tables cannot express.
std::vector<std::uint8_t> encodeEddystone(const EddystoneFrame& frame);
EddystoneFrame decodeEddystone(std::span<const std::uint8_t> bytes);

/// One received advertisement: the decoded frame plus the RSSI it arrived
/// with, in dBm (valid range [-120, 0]).
struct BeaconSighting {
    std::variant<IBeaconFrame, EddystoneFrame> frame;
    int rssi = -60;
    std::uint64_t timestampNanos = 0;
};

enum class ProximityZone {
    Immediate,
    Near,
    Far,
    Unknown,
};

std::string_view proximityZoneName(ProximityZone zone);

/// Zone boundaries in meters; the defaults mirror the common
/// immediate/near/far convention and are configurable.
struct ZoneThresholds {
    double immediateMeters = 0.5;
    double nearMeters = 4.0;
};

/// Log-distance path-loss estimate:
///   d = 10^((referencePower - rssi) / (10 n))
/// referencePower is the signal strength at 1 m; n > 0 is the path-loss
/// exponent (2 in free space). Raises InvalidExponent for n <= 0.
double estimateDistance(double rssi, double referencePower, double pathLossExponent);

ProximityZone proximityZone(std::optional<double> distanceMeters,
                            const ZoneThresholds& thresholds = {});

struct ProximityEstimate {
    std::optional<double> distanceMeters;
    ProximityZone zone = ProximityZone::Unknown;
};

/// Grouping key for ranging: uuid+major+minor for iBeacons,
/// namespace+instance for Eddystone. TLM frames carry no identity.
struct BeaconKey {
    enum class Kind { IBeacon, Eddystone } kind = Kind::IBeacon;
    std::array<std::uint8_t, 16> uuid{};
    std::uint16_t major = 0;
    std::uint16_t minor = 0;
    std::array<std::uint8_t, 10> namespaceId{};
    std::array<std::uint8_t, 6> instanceId{};

    bool operator==(const BeaconKey&) const = default;
    auto operator<=>(const BeaconKey&) const = default;

    std::string display() const;
};

/// Identity of a sighting, or nullopt for frames that carry none (TLM).
std::optional<BeaconKey> beaconKeyOf(const BeaconSighting& sighting);

/// Reference power at 1 m for a sighted frame; nullopt for TLM.
std::optional<double> referencePowerOf(const BeaconSighting& sighting);

struct RangingConfig {
    double pathLossExponent = 2.0;
    enum class Aggregation { Mean, Median } aggregation = Aggregation::Mean;
    ZoneThresholds thresholds{};
};

struct RangedBeacon {
    BeaconKey identity;
    double aggregatedRssi = 0.0;
    int sightingCount = 0;
    ProximityEstimate estimate;
};

/// Aggregates the sightings of one 1-second window: groups by beacon
/// identity, averages RSSI per group (median behind the config switch) and
/// emits one proximity estimate per beacon. Results are ordered by identity.
std::vector<RangedBeacon> rangeBeacons(std::span<const BeaconSighting> sightings,
                                       const RangingConfig& config = {});

/// Rolls sightings into consecutive 1-second windows of session time. Feed
/// sightings as they arrive; advanceTo() flushes every window whose end has
/// passed, so a T-second session yields exactly floor(T) windows.
class BeaconRanger {
public:
    explicit BeaconRanger(RangingConfig config = {}) : config_(config) {}

    struct Window {
        std::uint64_t windowIndex = 0;
        std::vector<RangedBeacon> beacons;
    };

    void feed(const BeaconSighting& sighting);
    std::vector<Window> advanceTo(std::uint64_t sessionNanos);

private:
    RangingConfig config_;
    std::uint64_t nextWindow_ = 0;
    std::vector<BeaconSighting> pending_;
};

/// Formats a uuid as lowercase hyphenated hex (8-4-4-4-12).
std::string formatUuid(const std::array<std::uint8_t, 16>& uuid);
std::optional<std::array<std::uint8_t, 16>> parseUuid(std::string_view text);

std::string formatHexBytes(std::span<const std::uint8_t> bytes);
std::optional<std::vector<std::uint8_t>> parseHexBytes(std::string_view text);

} // namespace sensekit::beacon
