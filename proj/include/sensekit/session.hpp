#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sensekit/availability.hpp"
#include "sensekit/config.hpp"

namespace sensekit {

enum class OutputFormat { Csv, Jsonl };

std::string_view outputFormatName(OutputFormat format);
std::optional<OutputFormat> outputFormatFromName(std::string_view name);

/// One sensor of a recording session: its configuration, optionally backed
/// by a trace file instead of the synthetic generator.
struct SessionSensor {
    SensorConfig config;
    std::optional<std::string> tracePath;
};

/// A complete recording-session request. Sessions run in simulated time by
/// default: an hour of sensing takes milliseconds of wall time. The output
/// is one file per sensor plus a manifest, deterministic for a fixed seed.
struct SessionSpec {
    std::string profile = "ios"; // built-in name or a profile file path
    std::vector<SessionSensor> sensors;
    double durationSeconds = 0;
    std::string outputDir;
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 0;
    bool realtime = false;
    bool writeTraces = false; // additionally write <CanonicalName>.trace per sensor
};

struct SessionResult {
    struct SensorFile {
        SensorType sensorType;
        std::string path;
        std::size_t sampleCount = 0;
    };
    std::vector<SensorFile> files;
    std::string manifestPath;
};

/// Runs the session end to end: registers every sensor against the profile,
/// starts them, advances the clock through the duration, stops, and writes
/// `<outputDir>/<CanonicalName>.<ext>` per sensor plus manifest.json.
/// Raises InvalidConfig (bad duration, no sensors), the registry's
/// registration errors (message names the sensor), and trace errors for
/// replay-backed sensors.
SessionResult runRecordSession(const SessionSpec& spec);

/// Converts one session file between the CSV and JSONL encodings. The sensor
/// type is taken from the file's stem, which must be a canonical sensor
/// name; raises InvalidConfig otherwise. Content errors surface as
/// ParseError/SchemaMismatch with line numbers.
void convertSessionFile(const std::string& inputPath, OutputFormat targetFormat,
                        const std::string& outputPath);

} // namespace sensekit
