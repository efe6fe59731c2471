#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sensekit/availability.hpp"
#include "sensekit/beacon.hpp"
#include "sensekit/energy.hpp"
#include "sensekit/errors.hpp"
#include "sensekit/serialization.hpp"
#include "sensekit/session.hpp"

namespace {

using namespace sensekit;

// Exit-code discipline: 0 success, 1 data error, 2 usage/config error.
int exitCodeFor(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::CorruptTrace:
    case ErrorKind::SchemaMismatch:
    case ErrorKind::InvalidSeries:
    case ErrorKind::BadLength:
    case ErrorKind::BadCompanyId:
    case ErrorKind::BadBeaconType:
    case ErrorKind::UnknownFrameType:
    case ErrorKind::UrlTooLong:
    case ErrorKind::BadUrlEncoding:
    case ErrorKind::ClockRegression:
        return 1;
    default:
        return 2;
    }
}

std::string twoDecimals(double value) {
    return detail::fixedDecimal(value, 2);
}

int cmdListSensors(const std::string& profileName) {
    PlatformProfile profile = PlatformProfile::resolve(profileName);
    std::printf("profile: %s\n", profile.name().c_str());
    for (SensorType type : allSensorTypes()) {
        std::printf("%-20s %s\n", std::string(canonicalName(type)).c_str(),
                    std::string(availabilityModeName(profile.modeFor(type))).c_str());
    }
    return 0;
}

/// Parses one --sensor argument: `Name` or `Name:key=value,key=value,...`.
/// Keys: rate, accuracy, roles, uuid, major, minor, power, trace.
SessionSensor parseSensorSpec(const std::string& text) {
    std::string namePart = text;
    std::string optionsPart;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        namePart = text.substr(0, colon);
        optionsPart = text.substr(colon + 1);
    }

    std::optional<SensorType> type = sensorTypeFromName(namePart);
    if (!type)
        raise(ErrorKind::InvalidConfig, "unknown sensor '" + namePart + "'");

    SessionSensor sensor;
    sensor.config.sensorType = *type;
    BeaconIdentity identity;
    bool identityTouched = false;

    std::stringstream stream(optionsPart);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            raise(ErrorKind::InvalidConfig,
                  "sensor option '" + item + "' is not key=value");
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        try {
            if (key == "rate") {
                sensor.config.sampleRateHz = std::stod(value);
            } else if (key == "accuracy") {
                if (value == "best")
                    sensor.config.accuracyMode = AccuracyMode::Best;
                else if (value == "balanced")
                    sensor.config.accuracyMode = AccuracyMode::Balanced;
                else if (value == "low-power")
                    sensor.config.accuracyMode = AccuracyMode::LowPower;
                else
                    raise(ErrorKind::InvalidConfig,
                          "accuracy must be best, balanced or low-power, got '" + value + "'");
            } else if (key == "roles") {
                std::stringstream roles(value);
                std::string role;
                while (std::getline(roles, role, '+')) {
                    if (role == "scan")
                        sensor.config.roles.scan = true;
                    else if (role == "broadcast")
                        sensor.config.roles.broadcast = true;
                    else
                        raise(ErrorKind::InvalidConfig, "unknown role '" + role + "'");
                }
            } else if (key == "uuid") {
                auto uuid = beacon::parseUuid(value);
                if (!uuid)
                    raise(ErrorKind::InvalidConfig, "bad uuid '" + value + "'");
                identity.uuid = *uuid;
                identityTouched = true;
            } else if (key == "major") {
                identity.major = static_cast<std::uint16_t>(std::stoul(value));
                identityTouched = true;
            } else if (key == "minor") {
                identity.minor = static_cast<std::uint16_t>(std::stoul(value));
                identityTouched = true;
            } else if (key == "power") {
                identity.measuredPower = static_cast<std::int8_t>(std::stoi(value));
                identityTouched = true;
            } else if (key == "trace") {
                sensor.tracePath = value;
            } else {
                raise(ErrorKind::InvalidConfig, "unknown sensor option '" + key + "'");
            }
        } catch (const SensingError&) {
            throw;
        } catch (const std::exception&) {
            raise(ErrorKind::InvalidConfig,
                  "bad value for sensor option '" + key + "': '" + value + "'");
        }
    }

    if (identityTouched)
        sensor.config.beaconIdentity = identity;
    return sensor;
}

int cmdRecord(const SessionSpec& spec) {
    SessionResult result = runRecordSession(spec);
    for (const auto& file : result.files)
        std::printf("wrote %s (%zu samples)\n", file.path.c_str(), file.sampleCount);
    std::printf("wrote %s\n", result.manifestPath.c_str());
    return 0;
}

void printIBeacon(const beacon::IBeaconFrame& frame) {
    std::printf("type: iBeacon\n");
    std::printf("uuid: %s\n", beacon::formatUuid(frame.uuid).c_str());
    std::printf("major: %u\n", frame.major);
    std::printf("minor: %u\n", frame.minor);
    std::printf("measuredPower: %d dBm\n", frame.measuredPower);
}

void printEddystone(const beacon::EddystoneFrame& frame) {
    if (const auto* uid = std::get_if<beacon::EddystoneUid>(&frame)) {
        std::printf("type: Eddystone-UID\n");
        std::printf("namespace: %s\n",
                    beacon::formatHexBytes({uid->namespaceId.data(), uid->namespaceId.size()})
                        .c_str());
        std::printf("instance: %s\n",
                    beacon::formatHexBytes({uid->instanceId.data(), uid->instanceId.size()})
                        .c_str());
        std::printf("txPowerAt0m: %d dBm\n", uid->txPowerAt0m);
    } else if (const auto* url = std::get_if<beacon::EddystoneUrl>(&frame)) {
        std::printf("type: Eddystone-URL\n");
        std::printf("url: %s\n", url->url.c_str());
        std::printf("txPowerAt0m: %d dBm\n", url->txPowerAt0m);
    } else {
        const auto& tlm = std::get<beacon::EddystoneTlm>(frame);
        std::printf("type: Eddystone-TLM\n");
        std::printf("batteryMilliVolts: %u\n", tlm.batteryMilliVolts);
        std::printf("temperatureC: %s\n", detail::fixedDecimal(tlm.temperatureC, 6).c_str());
        std::printf("advCount: %u\n", tlm.advCount);
        std::printf("uptimeDeciseconds: %u\n", tlm.uptimeDeciseconds);
    }
}

int cmdDecodeBeacon(const std::vector<std::string>& hexParts) {
    std::string joined;
    for (const std::string& part : hexParts)
        joined += part + " ";
    auto bytes = beacon::parseHexBytes(joined);
    if (!bytes)
        raise(ErrorKind::ParseError, "input is not valid hex");

    // 27 bytes is the full iBeacon AD structure; anything else is treated as
    // Eddystone service data.
    if (bytes->size() == beacon::kIBeaconFrameBytes)
        printIBeacon(beacon::decodeIBeacon(*bytes));
    else
        printEddystone(beacon::decodeEddystone(*bytes));
    return 0;
}

energy::EnergyProfile resolveEnergyProfile(const std::string& path) {
    if (path.empty())
        return energy::builtinIphone5s();
    return energy::loadProfile(path);
}

int cmdPredict(const std::string& profilePath, const std::vector<std::string>& modes) {
    energy::EnergyProfile profile = resolveEnergyProfile(profilePath);
    std::set<std::string> active(modes.begin(), modes.end());
    double hours = energy::predictLifetime(profile, active);
    std::printf("%s\n", twoDecimals(hours).c_str());

    active.erase(std::string(energy::modes::kIdle));
    if (active.size() > 1)
        std::printf("note: additive overhead model; combined loads were not "
                    "measured together and carry a few percent of error\n");
    if (energy::crossesCategories(active))
        std::printf("note: the active set mixes sensing categories; the model is "
                    "uncalibrated for such combinations\n");
    for (const std::string& mode : active) {
        if (energy::overheadClamped(profile, mode))
            std::printf("note: mode '%s' measured cheaper than idle; overhead "
                        "clamped to zero\n",
                        mode.c_str());
    }
    return 0;
}

int cmdSimulate(const std::string& profilePath, const std::vector<std::string>& modes,
                double stepMinutes, const std::string& outputPath) {
    energy::EnergyProfile profile = resolveEnergyProfile(profilePath);
    std::set<std::string> active(modes.begin(), modes.end());
    energy::DischargeSeries series = energy::simulateDischarge(profile, active, stepMinutes);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!outputPath.empty()) {
        file.open(outputPath, std::ios::binary);
        if (!file)
            raise(ErrorKind::ParseError, "cannot open output file: " + outputPath);
        out = &file;
    }
    *out << "timeHours,levelPercent\n";
    for (const auto& point : series.points)
        *out << detail::fixedDecimal(point.timeHours, 4) << ','
             << twoDecimals(point.level * 100.0) << "\n";
    return 0;
}

int cmdConvert(const std::string& inputPath, const std::string& target,
               std::string outputPath) {
    auto format = outputFormatFromName(target);
    if (!format)
        raise(ErrorKind::InvalidConfig, "target format must be csv or jsonl, got '" + target + "'");
    if (outputPath.empty()) {
        std::string stem = inputPath;
        if (auto dot = stem.rfind('.'); dot != std::string::npos)
            stem.resize(dot);
        outputPath = stem + "." + std::string(outputFormatName(*format));
    }
    convertSessionFile(inputPath, *format, outputPath);
    std::printf("wrote %s\n", outputPath.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sensekit: continuous-sensing toolkit (simulated sensors, beacon "
                 "codecs, energy model)"};
    app.require_subcommand(1);
    // Lets the global flags appear after the subcommand name too:
    // `sensekit list-sensors --profile ios`.
    app.fallthrough();

    std::string profileName = "ios";
    std::uint64_t seed = 0;
    std::string outputPath;
    app.add_option("--profile", profileName, "platform profile: ios, android, or a profile file");
    app.add_option("--seed", seed, "session seed for the synthetic drivers");
    app.add_option("--output", outputPath, "output directory (record) or file (simulate, convert)");

    auto* listCmd = app.add_subcommand("list-sensors", "show every sensor and its availability");

    auto* recordCmd = app.add_subcommand("record", "run a recording session against simulated sensors");
    std::vector<std::string> sensorSpecs;
    double durationSeconds = 0;
    std::string formatName = "csv";
    bool realtime = false;
    recordCmd->add_option("--sensor", sensorSpecs,
                          "sensor spec: Name[:key=value,...] with keys rate, accuracy, "
                          "roles, uuid, major, minor, power, trace")
        ->required();
    recordCmd->add_option("--duration", durationSeconds, "session length in seconds")->required();
    recordCmd->add_option("--format", formatName, "output encoding: csv or jsonl");
    recordCmd->add_flag("--realtime", realtime, "run against the real clock instead of simulated time");
    bool writeTraces = false;
    recordCmd->add_flag("--trace", writeTraces,
                        "additionally write a replayable .trace file per sensor");

    auto* decodeCmd = app.add_subcommand("decode-beacon", "decode an advertisement frame from hex");
    std::vector<std::string> hexParts;
    decodeCmd->add_option("hex", hexParts, "frame bytes as hex (whitespace/colons ignored)")
        ->required();

    auto* predictCmd = app.add_subcommand("predict", "predict battery lifetime for a sensing load");
    std::vector<std::string> predictModes;
    std::string energyProfilePath;
    predictCmd->add_option("--mode", predictModes, "calibrated mode label (repeatable)")->required();
    predictCmd->add_option("--energy-profile", energyProfilePath,
                           "energy profile file (default: built-in iPhone 5S)");

    auto* simulateCmd = app.add_subcommand("simulate", "write a battery discharge series");
    std::vector<std::string> simulateModes;
    double stepMinutes = 30.0;
    std::string simulateProfilePath;
    simulateCmd->add_option("--mode", simulateModes, "calibrated mode label (repeatable)");
    simulateCmd->add_option("--step", stepMinutes, "sampling step in minutes");
    simulateCmd->add_option("--energy-profile", simulateProfilePath,
                            "energy profile file (default: built-in iPhone 5S)");

    auto* convertCmd = app.add_subcommand("convert", "convert a session file between csv and jsonl");
    std::string convertInput;
    std::string convertTarget;
    convertCmd->add_option("input", convertInput, "session file (<SensorName>.csv or .jsonl)")
        ->required();
    convertCmd->add_option("--to", convertTarget, "target format: csv or jsonl")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (listCmd->parsed())
            return cmdListSensors(profileName);
        if (recordCmd->parsed()) {
            SessionSpec spec;
            spec.profile = profileName;
            for (const std::string& text : sensorSpecs)
                spec.sensors.push_back(parseSensorSpec(text));
            spec.durationSeconds = durationSeconds;
            spec.outputDir = outputPath.empty() ? "session" : outputPath;
            auto format = outputFormatFromName(formatName);
            if (!format)
                raise(ErrorKind::InvalidConfig, "format must be csv or jsonl, got '" + formatName + "'");
            spec.format = *format;
            spec.seed = seed;
            spec.realtime = realtime;
            spec.writeTraces = writeTraces;
            return cmdRecord(spec);
        }
        if (decodeCmd->parsed())
            return cmdDecodeBeacon(hexParts);
        if (predictCmd->parsed())
            return cmdPredict(energyProfilePath, predictModes);
        if (simulateCmd->parsed())
            return cmdSimulate(simulateProfilePath, simulateModes, stepMinutes, outputPath);
        if (convertCmd->parsed())
            return cmdConvert(convertInput, convertTarget, outputPath);
    } catch (const SensingError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exitCodeFor(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
