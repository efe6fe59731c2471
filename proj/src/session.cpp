#include "sensekit/session.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>

#include <json.hpp>

#include "sensekit/errors.hpp"
#include "sensekit/registry.hpp"
#include "sensekit/serialization.hpp"
#include "sensekit/trace.hpp"

namespace sensekit {

namespace fs = std::filesystem;

std::string_view outputFormatName(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "jsonl";
}

std::optional<OutputFormat> outputFormatFromName(std::string_view name) {
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "jsonl")
        return OutputFormat::Jsonl;
    return std::nullopt;
}

namespace {

void writeSensorFile(const std::string& path, OutputFormat format, SensorType type,
                     const std::vector<SensorSample>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        raise(ErrorKind::ParseError, "cannot open output file: " + path);
    if (format == OutputFormat::Csv)
        writeSamplesCsv(out, type, samples);
    else
        writeSamplesJsonl(out, samples);
}

nlohmann::ordered_json configJson(const SensorConfig& config) {
    nlohmann::ordered_json j;
    if (config.sampleRateHz)
        j["sampleRateHz"] = *config.sampleRateHz;
    if (config.accuracyMode)
        j["accuracyMode"] = std::string(accuracyModeName(*config.accuracyMode));
    if (config.roles.any()) {
        auto roles = nlohmann::ordered_json::array();
        if (config.roles.scan)
            roles.push_back("scan");
        if (config.roles.broadcast)
            roles.push_back("broadcast");
        j["roles"] = roles;
    }
    return j;
}

} // namespace

SessionResult runRecordSession(const SessionSpec& spec) {
    if (!(spec.durationSeconds > 0))
        raise(ErrorKind::InvalidConfig, "session duration must be positive");
    if (spec.sensors.empty())
        raise(ErrorKind::InvalidConfig, "session needs at least one sensor");
    if (spec.outputDir.empty())
        raise(ErrorKind::InvalidConfig, "session needs an output directory");

    PlatformProfile profile = PlatformProfile::resolve(spec.profile);
    std::shared_ptr<TimeSource> source;
    if (spec.realtime)
        source = std::make_shared<SteadyTimeSource>();
    else
        source = std::make_shared<SimulatedTimeSource>();
    SensorManager manager(profile, source, spec.seed);

    struct ActiveSensor {
        SensorHandle handle;
        SensorType type;
        std::vector<SensorSample> samples;
    };
    std::vector<std::unique_ptr<ActiveSensor>> active;

    for (const SessionSensor& sensor : spec.sensors) {
        SensorType type = sensor.config.sensorType;
        try {
            SensorHandle handle;
            if (sensor.tracePath) {
                // Replay follows the trace's own timing; the rate field is
                // meaningless for it, so fill a placeholder when absent.
                SensorConfig config = sensor.config;
                if (!config.sampleRateHz && !isEventDriven(type))
                    config.sampleRateHz = 1.0;
                handle = manager.registerReplay(config, readTraceFile(*sensor.tracePath));
            } else {
                handle = manager.registerSensor(type, sensor.config);
            }
            active.push_back(std::make_unique<ActiveSensor>(ActiveSensor{handle, type, {}}));
            ActiveSensor* slot = active.back().get();
            manager.subscribe(handle, [slot](const SensorSample& sample) {
                slot->samples.push_back(sample);
            });
        } catch (const SensingError& e) {
            raise(e.kind(), std::string(canonicalName(type)) + ": " + e.what());
        }
    }

    for (const auto& sensor : active)
        manager.startContinuousSensing(sensor->handle);
    manager.runFor(static_cast<std::uint64_t>(spec.durationSeconds * 1e9));
    for (const auto& sensor : active)
        manager.stopContinuousSensing(sensor->handle);

    fs::create_directories(spec.outputDir);
    const char* extension = spec.format == OutputFormat::Csv ? ".csv" : ".jsonl";

    SessionResult result;
    nlohmann::ordered_json manifest;
    manifest["format"] = "sensekit-session";
    manifest["version"] = 1;
    manifest["profile"] = profile.name();
    manifest["seed"] = spec.seed;
    manifest["durationSeconds"] = spec.durationSeconds;
    manifest["encoding"] = std::string(outputFormatName(spec.format));
    auto files = nlohmann::ordered_json::array();

    for (std::size_t i = 0; i < active.size(); ++i) {
        const ActiveSensor& sensor = *active[i];
        std::string fileName = std::string(canonicalName(sensor.type)) + extension;
        std::string path = (fs::path(spec.outputDir) / fileName).string();
        writeSensorFile(path, spec.format, sensor.type, sensor.samples);
        result.files.push_back({sensor.type, path, sensor.samples.size()});

        if (spec.writeTraces) {
            TraceFile trace{sensor.type, sensor.samples};
            std::string tracePath =
                (fs::path(spec.outputDir) /
                 (std::string(canonicalName(sensor.type)) + ".trace"))
                    .string();
            writeTraceFile(tracePath, trace);
        }

        nlohmann::ordered_json entry;
        entry["sensorType"] = std::string(canonicalName(sensor.type));
        entry["file"] = fileName;
        entry["samples"] = sensor.samples.size();
        nlohmann::ordered_json configured = configJson(spec.sensors[i].config);
        if (!configured.empty())
            entry["config"] = configured;
        if (spec.sensors[i].tracePath)
            entry["replayedFrom"] = *spec.sensors[i].tracePath;
        files.push_back(entry);
    }
    manifest["sensors"] = files;

    std::string manifestPath = (fs::path(spec.outputDir) / "manifest.json").string();
    std::ofstream out(manifestPath, std::ios::binary);
    if (!out)
        raise(ErrorKind::ParseError, "cannot open output file: " + manifestPath);
    out << manifest.dump(2) << "\n";
    result.manifestPath = manifestPath;
    return result;
}

void convertSessionFile(const std::string& inputPath, OutputFormat targetFormat,
                        const std::string& outputPath) {
    std::string stem = fs::path(inputPath).stem().string();
    std::optional<SensorType> type = sensorTypeFromName(stem);
    if (!type)
        raise(ErrorKind::InvalidConfig,
              "file stem '" + stem + "' is not a canonical sensor name");

    std::ifstream in(inputPath, std::ios::binary);
    if (!in)
        raise(ErrorKind::ParseError, "cannot open input file: " + inputPath);

    std::string inputExtension = fs::path(inputPath).extension().string();
    std::vector<SensorSample> samples;
    if (inputExtension == ".csv")
        samples = readSamplesCsv(in, *type);
    else if (inputExtension == ".jsonl")
        samples = readSamplesJsonl(in, *type);
    else
        raise(ErrorKind::InvalidConfig,
              "input must be a .csv or .jsonl session file, got '" + inputExtension + "'");

    writeSensorFile(outputPath, targetFormat, *type, samples);
}

} // namespace sensekit
