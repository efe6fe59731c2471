#include "sensekit/beacon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "sensekit/errors.hpp"

namespace sensekit::beacon {

namespace {

constexpr std::uint8_t kAdLength = 0x1A;
constexpr std::uint8_t kAdTypeManufacturerData = 0xFF;
constexpr std::uint8_t kAppleCompanyIdLo = 0x4C;
constexpr std::uint8_t kAppleCompanyIdHi = 0x00;
constexpr std::uint8_t kIBeaconType = 0x02;
constexpr std::uint8_t kIBeaconPayloadLength = 0x15;

constexpr std::uint8_t kFrameTypeUid = 0x00;
constexpr std::uint8_t kFrameTypeUrl = 0x10;
constexpr std::uint8_t kFrameTypeTlm = 0x20;

// Scheme-prefix code table, index = wire byte.
constexpr std::array<std::string_view, 4> kUrlSchemes = {
    "http://www.",
    "https://www.",
    "http://",
    "https://",
};

// Suffix-expansion code table, index = wire byte.
constexpr std::array<std::string_view, 14> kUrlExpansions = {
    ".com/", ".org/", ".edu/", ".net/", ".info/", ".biz/", ".gov/",
    ".com",  ".org",  ".edu",  ".net",  ".info",  ".biz",  ".gov",
};

void putU16be(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void putU32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

std::uint16_t getU16be(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

std::uint32_t getU32be(std::span<const std::uint8_t> b, std::size_t at) {
    return (static_cast<std::uint32_t>(b[at]) << 24) |
           (static_cast<std::uint32_t>(b[at + 1]) << 16) |
           (static_cast<std::uint32_t>(b[at + 2]) << 8) |
           static_cast<std::uint32_t>(b[at + 3]);
}

std::vector<std::uint8_t> encodeUrlBody(const std::string& url) {
    std::size_t schemeIndex = kUrlSchemes.size();
    std::size_t schemeLength = 0;
    for (std::size_t i = 0; i < kUrlSchemes.size(); ++i) {
        if (url.starts_with(kUrlSchemes[i]) && kUrlSchemes[i].size() > schemeLength) {
            schemeIndex = i;
            schemeLength = kUrlSchemes[i].size();
        }
    }
    if (schemeIndex == kUrlSchemes.size()) {
        raise(ErrorKind::BadUrlEncoding, "url must start with a known http(s) scheme");
    }

    std::vector<std::uint8_t> body;
    body.push_back(static_cast<std::uint8_t>(schemeIndex));

    std::size_t pos = schemeLength;
    while (pos < url.size()) {
        std::size_t bestCode = kUrlExpansions.size();
        std::size_t bestLength = 0;
        for (std::size_t code = 0; code < kUrlExpansions.size(); ++code) {
            const auto& exp = kUrlExpansions[code];
            if (exp.size() > bestLength && url.compare(pos, exp.size(), exp) == 0) {
                bestCode = code;
                bestLength = exp.size();
            }
        }
        if (bestCode != kUrlExpansions.size()) {
            body.push_back(static_cast<std::uint8_t>(bestCode));
            pos += bestLength;
            continue;
        }
        const unsigned char c = static_cast<unsigned char>(url[pos]);
        if (c < 0x21 || c > 0x7E) {
            raise(ErrorKind::BadUrlEncoding,
                  "url character 0x" + formatHexBytes({&c, 1}) + " is not encodable");
        }
        body.push_back(c);
        ++pos;
    }

    if (body.size() > kMaxEncodedUrlBytes) {
        raise(ErrorKind::UrlTooLong, "encoded url is " + std::to_string(body.size()) +
                                         " bytes, limit " +
                                         std::to_string(kMaxEncodedUrlBytes));
    }
    return body;
}

std::string decodeUrlBody(std::span<const std::uint8_t> body) {
    if (body.empty()) {
        raise(ErrorKind::BadLength, "url frame carries no scheme byte");
    }
    if (body[0] >= kUrlSchemes.size()) {
        raise(ErrorKind::BadUrlEncoding,
              "unknown url scheme code " + std::to_string(body[0]));
    }
    std::string url(kUrlSchemes[body[0]]);
    for (std::size_t i = 1; i < body.size(); ++i) {
        const std::uint8_t b = body[i];
        if (b < kUrlExpansions.size()) {
            url += kUrlExpansions[b];
        } else if (b >= 0x21 && b <= 0x7E) {
            url += static_cast<char>(b);
        } else {
            raise(ErrorKind::BadUrlEncoding,
                  "reserved url byte 0x" + formatHexBytes({&b, 1}));
        }
    }
    return url;
}

double aggregateRssi(std::vector<double>& values, RangingConfig::Aggregation how) {
    if (how == RangingConfig::Aggregation::Median) {
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    }
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

int hexValue(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::vector<std::uint8_t> encodeIBeacon(const IBeaconFrame& frame) {
    std::vector<std::uint8_t> out;
    out.reserve(kIBeaconFrameBytes);
    out.push_back(kAdLength);
    out.push_back(kAdTypeManufacturerData);
    out.push_back(kAppleCompanyIdLo);
    out.push_back(kAppleCompanyIdHi);
    out.push_back(kIBeaconType);
    out.push_back(kIBeaconPayloadLength);
    out.insert(out.end(), frame.uuid.begin(), frame.uuid.end());
    putU16be(out, frame.major);
    putU16be(out, frame.minor);
    out.push_back(static_cast<std::uint8_t>(frame.measuredPower));
    return out;
}

IBeaconFrame decodeIBeacon(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kIBeaconFrameBytes) {
        raise(ErrorKind::BadLength, "expected " + std::to_string(kIBeaconFrameBytes) +
                                        " bytes, got " + std::to_string(bytes.size()));
    }
    if (bytes[0] != kAdLength || bytes[5] != kIBeaconPayloadLength) {
        raise(ErrorKind::BadLength, "AD structure lengths do not match an iBeacon frame");
    }
    if (bytes[1] != kAdTypeManufacturerData) {
        raise(ErrorKind::BadBeaconType, "AD type is not manufacturer-specific data");
    }
    if (bytes[2] != kAppleCompanyIdLo || bytes[3] != kAppleCompanyIdHi) {
        raise(ErrorKind::BadCompanyId, "company identifier is not 0x004C");
    }
    if (bytes[4] != kIBeaconType) {
        raise(ErrorKind::BadBeaconType, "beacon type byte is not 0x02");
    }
    IBeaconFrame frame;
    std::copy(bytes.begin() + 6, bytes.begin() + 22, frame.uuid.begin());
    frame.major = getU16be(bytes, 22);
    frame.minor = getU16be(bytes, 24);
    frame.measuredPower = static_cast<std::int8_t>(bytes[26]);
    return frame;
}

std::vector<std::uint8_t> encodeEddystone(const EddystoneFrame& frame) {
    std::vector<std::uint8_t> out;
    if (const auto* uid = std::get_if<EddystoneUid>(&frame)) {
        out.push_back(kFrameTypeUid);
        out.push_back(static_cast<std::uint8_t>(uid->txPowerAt0m));
        out.insert(out.end(), uid->namespaceId.begin(), uid->namespaceId.end());
        out.insert(out.end(), uid->instanceId.begin(), uid->instanceId.end());
        out.push_back(0x00); // RFU
        out.push_back(0x00);
    } else if (const auto* url = std::get_if<EddystoneUrl>(&frame)) {
        const auto body = encodeUrlBody(url->url);
        out.push_back(kFrameTypeUrl);
        out.push_back(static_cast<std::uint8_t>(url->txPowerAt0m));
        out.insert(out.end(), body.begin(), body.end());
    } else {
        const auto& tlm = std::get<EddystoneTlm>(frame);
        out.push_back(kFrameTypeTlm);
        out.push_back(0x00); // TLM version
        putU16be(out, tlm.batteryMilliVolts);
        const double clamped = std::clamp(tlm.temperatureC, -128.0, 127.99609375);
        putU16be(out, static_cast<std::uint16_t>(
                          static_cast<std::int16_t>(std::lround(clamped * 256.0))));
        putU32be(out, tlm.advCount);
        putU32be(out, tlm.uptimeDeciseconds);
    }
    return out;
}

EddystoneFrame decodeEddystone(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) {
        raise(ErrorKind::BadLength, "empty service data");
    }
    switch (bytes[0]) {
    case kFrameTypeUid: {
        // 18 bytes without the trailing RFU pair, 20 with it.
        if (bytes.size() != 18 && bytes.size() != 20) {
            raise(ErrorKind::BadLength,
                  "UID frame must be 18 or 20 bytes, got " + std::to_string(bytes.size()));
        }
        EddystoneUid uid;
        uid.txPowerAt0m = static_cast<std::int8_t>(bytes[1]);
        std::copy(bytes.begin() + 2, bytes.begin() + 12, uid.namespaceId.begin());
        std::copy(bytes.begin() + 12, bytes.begin() + 18, uid.instanceId.begin());
        return uid;
    }
    case kFrameTypeUrl: {
        if (bytes.size() < 3 || bytes.size() > 2 + kMaxEncodedUrlBytes) {
            raise(ErrorKind::BadLength,
                  "URL frame must be 3.." + std::to_string(2 + kMaxEncodedUrlBytes) +
                      " bytes, got " + std::to_string(bytes.size()));
        }
        EddystoneUrl url;
        url.txPowerAt0m = static_cast<std::int8_t>(bytes[1]);
        url.url = decodeUrlBody(bytes.subspan(2));
        return url;
    }
    case kFrameTypeTlm: {
        if (bytes.size() != 14) {
            raise(ErrorKind::BadLength,
                  "TLM frame must be 14 bytes, got " + std::to_string(bytes.size()));
        }
        if (bytes[1] != 0x00) {
            raise(ErrorKind::UnknownFrameType,
                  "unsupported TLM version " + std::to_string(bytes[1]));
        }
        EddystoneTlm tlm;
        tlm.batteryMilliVolts = getU16be(bytes, 2);
        tlm.temperatureC =
            static_cast<double>(static_cast<std::int16_t>(getU16be(bytes, 4))) / 256.0;
        tlm.advCount = getU32be(bytes, 6);
        tlm.uptimeDeciseconds = getU32be(bytes, 10);
        return tlm;
    }
    default:
        raise(ErrorKind::UnknownFrameType,
              "frame type byte 0x" + formatHexBytes({&bytes[0], 1}));
    }
}

std::string_view proximityZoneName(ProximityZone zone) {
    switch (zone) {
    case ProximityZone::Immediate: return "Immediate";
    case ProximityZone::Near: return "Near";
    case ProximityZone::Far: return "Far";
    case ProximityZone::Unknown: return "Unknown";
    }
    return "?";
}

double estimateDistance(double rssi, double referencePower, double pathLossExponent) {
    if (!(pathLossExponent > 0.0)) {
        raise(ErrorKind::InvalidExponent, "path-loss exponent must be positive");
    }
    return std::pow(10.0, (referencePower - rssi) / (10.0 * pathLossExponent));
}

ProximityZone proximityZone(std::optional<double> distanceMeters,
                            const ZoneThresholds& thresholds) {
    if (!distanceMeters) return ProximityZone::Unknown;
    if (*distanceMeters < thresholds.immediateMeters) return ProximityZone::Immediate;
    if (*distanceMeters < thresholds.nearMeters) return ProximityZone::Near;
    return ProximityZone::Far;
}

std::optional<BeaconKey> beaconKeyOf(const BeaconSighting& sighting) {
    if (const auto* ib = std::get_if<IBeaconFrame>(&sighting.frame)) {
        BeaconKey key;
        key.kind = BeaconKey::Kind::IBeacon;
        key.uuid = ib->uuid;
        key.major = ib->major;
        key.minor = ib->minor;
        return key;
    }
    const auto& ed = std::get<EddystoneFrame>(sighting.frame);
    if (const auto* uid = std::get_if<EddystoneUid>(&ed)) {
        BeaconKey key;
        key.kind = BeaconKey::Kind::Eddystone;
        key.namespaceId = uid->namespaceId;
        key.instanceId = uid->instanceId;
        return key;
    }
    return std::nullopt; // URL and TLM frames carry no stable identity
}

std::optional<double> referencePowerOf(const BeaconSighting& sighting) {
    if (const auto* ib = std::get_if<IBeaconFrame>(&sighting.frame)) {
        return static_cast<double>(ib->measuredPower);
    }
    const auto& ed = std::get<EddystoneFrame>(sighting.frame);
    if (const auto* uid = std::get_if<EddystoneUid>(&ed)) {
        return static_cast<double>(uid->txPowerAt0m) - kEddystone0mTo1mDb;
    }
    if (const auto* url = std::get_if<EddystoneUrl>(&ed)) {
        return static_cast<double>(url->txPowerAt0m) - kEddystone0mTo1mDb;
    }
    return std::nullopt;
}

std::vector<RangedBeacon> rangeBeacons(std::span<const BeaconSighting> sightings,
                                       const RangingConfig& config) {
    struct Group {
        std::vector<double> rssis;
        std::optional<double> referencePower;
    };
    std::map<BeaconKey, Group> groups;
    for (const auto& sighting : sightings) {
        const auto key = beaconKeyOf(sighting);
        if (!key) continue;
        auto& group = groups[*key];
        group.rssis.push_back(static_cast<double>(sighting.rssi));
        if (!group.referencePower) {
            group.referencePower = referencePowerOf(sighting);
        }
    }

    std::vector<RangedBeacon> out;
    out.reserve(groups.size());
    for (auto& [key, group] : groups) {
        RangedBeacon ranged;
        ranged.identity = key;
        ranged.sightingCount = static_cast<int>(group.rssis.size());
        ranged.aggregatedRssi = aggregateRssi(group.rssis, config.aggregation);
        if (group.referencePower) {
            ranged.estimate.distanceMeters = estimateDistance(
                ranged.aggregatedRssi, *group.referencePower, config.pathLossExponent);
        }
        ranged.estimate.zone = proximityZone(ranged.estimate.distanceMeters,
                                             config.thresholds);
        out.push_back(std::move(ranged));
    }
    return out;
}

void BeaconRanger::feed(const BeaconSighting& sighting) {
    pending_.push_back(sighting);
}

std::vector<BeaconRanger::Window> BeaconRanger::advanceTo(std::uint64_t sessionNanos) {
    constexpr std::uint64_t kWindowNanos = 1'000'000'000ULL;
    std::vector<Window> out;
    while ((nextWindow_ + 1) * kWindowNanos <= sessionNanos) {
        const std::uint64_t begin = nextWindow_ * kWindowNanos;
        const std::uint64_t end = begin + kWindowNanos;
        std::vector<BeaconSighting> inWindow;
        std::vector<BeaconSighting> keep;
        for (auto& sighting : pending_) {
            if (sighting.timestampNanos < end) {
                if (sighting.timestampNanos >= begin) {
                    inWindow.push_back(std::move(sighting));
                }
                // sightings before the window start arrived after their
                // window was flushed; they are dropped
            } else {
                keep.push_back(std::move(sighting));
            }
        }
        pending_ = std::move(keep);
        out.push_back(Window{nextWindow_, rangeBeacons(inWindow, config_)});
        ++nextWindow_;
    }
    return out;
}

std::string BeaconKey::display() const {
    if (kind == Kind::IBeacon) {
        return formatUuid(uuid) + "/" + std::to_string(major) + "/" + std::to_string(minor);
    }
    return formatHexBytes(namespaceId) + "/" + formatHexBytes(instanceId);
}

std::string formatUuid(const std::array<std::uint8_t, 16>& uuid) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(36);
    for (std::size_t i = 0; i < uuid.size(); ++i) {
        if (i == 4 || i == 6 || i == 8 || i == 10) out.push_back('-');
        out.push_back(hex[uuid[i] >> 4]);
        out.push_back(hex[uuid[i] & 0xF]);
    }
    return out;
}

std::optional<std::array<std::uint8_t, 16>> parseUuid(std::string_view text) {
    std::array<std::uint8_t, 16> uuid{};
    std::size_t byteIndex = 0;
    int hi = -1;
    for (char c : text) {
        if (c == '-') continue;
        const int v = hexValue(c);
        if (v < 0 || byteIndex >= uuid.size()) return std::nullopt;
        if (hi < 0) {
            hi = v;
        } else {
            uuid[byteIndex++] = static_cast<std::uint8_t>((hi << 4) | v);
            hi = -1;
        }
    }
    if (hi >= 0 || byteIndex != uuid.size()) return std::nullopt;
    return uuid;
}

std::string formatHexBytes(std::span<const std::uint8_t> bytes) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xF]);
    }
    return out;
}

std::optional<std::vector<std::uint8_t>> parseHexBytes(std::string_view text) {
    std::vector<std::uint8_t> out;
    int hi = -1;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ':') continue;
        const int v = hexValue(c);
        if (v < 0) return std::nullopt;
        if (hi < 0) {
            hi = v;
        } else {
            out.push_back(static_cast<std::uint8_t>((hi << 4) | v));
            hi = -1;
        }
    }
    if (hi >= 0) return std::nullopt;
    return out;
}

} // namespace sensekit::beacon
