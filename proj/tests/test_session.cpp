#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sensekit/serialization.hpp"
#include "sensekit/session.hpp"
#include "sensekit/trace.hpp"

#include "checks.hpp"
#include "subprocess.hpp"

using namespace sensekit;
using testsupport::cliPath;
using testsupport::raisedError;
using testsupport::raisedKind;
using testsupport::runCommand;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("sensekit-" + tag + "-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }

    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string readFileBytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

SessionSensor sensorSpec(SensorType type, double rateHz) {
    SessionSensor sensor;
    sensor.config.sensorType = type;
    sensor.config.sampleRateHz = rateHz;
    return sensor;
}

SessionSpec baseSpec(const std::string& outputDir) {
    SessionSpec spec;
    spec.profile = "android";
    spec.sensors = {sensorSpec(SensorType::Accelerometer, 100.0),
                    sensorSpec(SensorType::Light, 2.0)};
    spec.durationSeconds = 10.0;
    spec.outputDir = outputDir;
    spec.seed = 7;
    return spec;
}

} // namespace

TEST_CASE("recording session writes one file per sensor plus a manifest") {
    TempDir dir("record");
    SessionResult result = runRecordSession(baseSpec(dir.str()));

    REQUIRE(result.files.size() == 2);
    CHECK(result.files[0].sensorType == SensorType::Accelerometer);
    CHECK(result.files[0].sampleCount == 1000);
    CHECK(result.files[1].sensorType == SensorType::Light);
    CHECK(result.files[1].sampleCount == 20);

    std::ifstream accel(dir.file("Accelerometer.csv"));
    REQUIRE(accel.good());
    CHECK(readSamplesCsv(accel, SensorType::Accelerometer).size() == 1000);

    nlohmann::json manifest = nlohmann::json::parse(readFileBytes(result.manifestPath));
    CHECK(manifest["format"] == "sensekit-session");
    CHECK(manifest["version"] == 1);
    CHECK(manifest["profile"] == "android");
    CHECK(manifest["seed"] == 7);
    CHECK(manifest["durationSeconds"] == 10.0);
    CHECK(manifest["encoding"] == "csv");
    REQUIRE(manifest["sensors"].size() == 2);
    CHECK(manifest["sensors"][0]["sensorType"] == "Accelerometer");
    CHECK(manifest["sensors"][0]["file"] == "Accelerometer.csv");
    CHECK(manifest["sensors"][0]["samples"] == 1000);
    CHECK(manifest["sensors"][0]["config"]["sampleRateHz"] == 100.0);
}

TEST_CASE("sessions are deterministic for a fixed seed") {
    TempDir first("det-a");
    TempDir second("det-b");
    runRecordSession(baseSpec(first.str()));
    runRecordSession(baseSpec(second.str()));

    for (const char* name : {"Accelerometer.csv", "Light.csv"})
        CHECK(readFileBytes(first.file(name)) == readFileBytes(second.file(name)));

    TempDir third("det-c");
    SessionSpec reseeded = baseSpec(third.str());
    reseeded.seed = 8;
    runRecordSession(reseeded);
    CHECK(readFileBytes(first.file("Accelerometer.csv")) !=
          readFileBytes(third.file("Accelerometer.csv")));
}

TEST_CASE("session validation") {
    TempDir dir("invalid");

    SessionSpec noSensors = baseSpec(dir.str());
    noSensors.sensors.clear();
    CHECK(raisedKind([&] { runRecordSession(noSensors); }) == ErrorKind::InvalidConfig);

    SessionSpec badDuration = baseSpec(dir.str());
    badDuration.durationSeconds = 0.0;
    CHECK(raisedKind([&] { runRecordSession(badDuration); }) == ErrorKind::InvalidConfig);

    SessionSpec noDir = baseSpec("");
    CHECK(raisedKind([&] { runRecordSession(noDir); }) == ErrorKind::InvalidConfig);

    // registration failures name the offending sensor
    SessionSpec forbidden = baseSpec(dir.str());
    forbidden.profile = "ios";
    SessionSensor eddystone;
    eddystone.config.sensorType = SensorType::EddystoneProximity;
    eddystone.config.sampleRateHz = 1.0;
    eddystone.config.roles.broadcast = true;
    forbidden.sensors = {eddystone};
    auto err = raisedError([&] { runRecordSession(forbidden); });
    REQUIRE(err.has_value());
    CHECK(err->first == ErrorKind::SensorNotAvailable);
    CHECK(err->second.find("EddystoneProximity") != std::string::npos);
}

TEST_CASE("jsonl sessions and event sensors") {
    TempDir dir("jsonl");
    SessionSpec spec = baseSpec(dir.str());
    spec.format = OutputFormat::Jsonl;
    SessionSensor screen;
    screen.config.sensorType = SensorType::ScreenStatus;
    spec.sensors.push_back(screen);
    spec.durationSeconds = 120.0;

    SessionResult result = runRecordSession(spec);
    REQUIRE(result.files.size() == 3);

    std::ifstream screenFile(dir.file("ScreenStatus.jsonl"));
    REQUIRE(screenFile.good());
    const auto samples = readSamplesJsonl(screenFile, SensorType::ScreenStatus);
    CHECK(!samples.empty());
    CHECK(samples.front().timestampNanos == 0);
}

TEST_CASE("traces recorded in a session replay to the same bytes") {
    TempDir dir("trace");
    SessionSpec spec = baseSpec(dir.str());
    spec.sensors = {sensorSpec(SensorType::Gyroscope, 25.0)};
    spec.writeTraces = true;
    runRecordSession(spec);

    const std::string tracePath = dir.file("Gyroscope.trace");
    REQUIRE(fs::exists(tracePath));

    TempDir replayDir("replay");
    SessionSpec replaySpec = baseSpec(replayDir.str());
    SessionSensor replaySensor = sensorSpec(SensorType::Gyroscope, 25.0);
    replaySensor.tracePath = tracePath;
    replaySpec.sensors = {replaySensor};
    replaySpec.seed = 999; // replay ignores the generator seed
    SessionResult result = runRecordSession(replaySpec);

    CHECK(readFileBytes(replayDir.file("Gyroscope.csv")) ==
          readFileBytes(dir.file("Gyroscope.csv")));

    nlohmann::json manifest = nlohmann::json::parse(readFileBytes(result.manifestPath));
    CHECK(manifest["sensors"][0]["replayedFrom"] == tracePath);
}

TEST_CASE("convert swaps encodings byte-exactly") {
    TempDir dir("convert");
    SessionSpec spec = baseSpec(dir.str());
    spec.sensors = {sensorSpec(SensorType::Accelerometer, 50.0)};
    runRecordSession(spec);

    const std::string csv = dir.file("Accelerometer.csv");
    const std::string jsonl = dir.file("Accelerometer.jsonl");
    const std::string back = dir.file("roundtrip/Accelerometer.csv");

    convertSessionFile(csv, OutputFormat::Jsonl, jsonl);
    fs::create_directories(dir.path / "roundtrip");
    convertSessionFile(jsonl, OutputFormat::Csv, back);
    CHECK(readFileBytes(back) == readFileBytes(csv));

    SUBCASE("the stem must be a canonical sensor name") {
        fs::copy_file(csv, dir.file("mydata.csv"));
        auto err = raisedError([&] {
            convertSessionFile(dir.file("mydata.csv"), OutputFormat::Jsonl,
                               dir.file("mydata.jsonl"));
        });
        REQUIRE(err.has_value());
        CHECK(err->first == ErrorKind::InvalidConfig);
        CHECK(err->second.find("mydata") != std::string::npos);
    }

    SUBCASE("corrupt rows surface with their line number") {
        // accelerometer columns under a Battery stem: schema mismatch, not a
        // parse error
        fs::copy_file(csv, dir.file("Battery.csv"));
        CHECK(raisedKind([&] {
            convertSessionFile(dir.file("Battery.csv"), OutputFormat::Jsonl,
                               dir.file("Battery.jsonl"));
        }) == ErrorKind::SchemaMismatch);

        std::string truncated = readFileBytes(csv);
        const auto firstRow = truncated.find("\n0,");
        truncated = truncated.substr(0, firstRow) + "\n0,0.000000000,1.0\n";
        std::ofstream rewrite(csv, std::ios::binary | std::ios::trunc);
        rewrite << truncated;
        rewrite.close();
        auto err = raisedError([&] {
            convertSessionFile(csv, OutputFormat::Jsonl, jsonl);
        });
        REQUIRE(err.has_value());
        CHECK(err->first == ErrorKind::ParseError);
        CHECK(err->second.find("line 3") != std::string::npos);
    }
}

TEST_CASE("cli: list-sensors") {
    auto result = runCommand(cliPath() + " list-sensors --profile ios");
    CHECK(result.exitCode == 0);
    CHECK(result.output.find("Accelerometer") != std::string::npos);
    CHECK(result.output.find("AmbientTemperature") != std::string::npos);
    CHECK(result.output.find("unavailable") != std::string::npos);
    CHECK(result.output.find("scan-only") != std::string::npos);

    auto bad = runCommand(cliPath() + " list-sensors --profile nosuch");
    CHECK(bad.exitCode == 2);
}

TEST_CASE("cli: record and convert") {
    TempDir dir("cli-record");
    const std::string record = cliPath() + " record --sensor Accelerometer:rate=100" +
                               " --duration 10 --seed 7 --output " + dir.str();
    auto first = runCommand(record);
    CHECK(first.exitCode == 0);
    REQUIRE(fs::exists(dir.file("Accelerometer.csv")));
    const std::string bytes = readFileBytes(dir.file("Accelerometer.csv"));

    TempDir again("cli-record-b");
    runCommand(cliPath() + " record --sensor Accelerometer:rate=100 --duration 10" +
               " --seed 7 --output " + again.str());
    CHECK(readFileBytes(again.file("Accelerometer.csv")) == bytes);

    auto convert = runCommand(cliPath() + " convert " + dir.file("Accelerometer.csv") +
                              " --to jsonl");
    CHECK(convert.exitCode == 0);
    CHECK(fs::exists(dir.file("Accelerometer.jsonl")));

    SUBCASE("data errors exit 1 with a line number") {
        std::string text = readFileBytes(dir.file("Accelerometer.csv"));
        text.insert(text.find("\n0,") + 1, "garbage row\n");
        std::ofstream out(dir.file("Accelerometer.csv"), std::ios::binary | std::ios::trunc);
        out << text;
        out.close();
        auto broken = runCommand(cliPath() + " convert " + dir.file("Accelerometer.csv") +
                                 " --to jsonl");
        CHECK(broken.exitCode == 1);
        CHECK(broken.output.find("line 3") != std::string::npos);
    }

    SUBCASE("usage errors exit 2") {
        auto unavailable = runCommand(
            cliPath() + " record --profile ios --sensor Microphone:rate=8000" +
            " --sensor EddystoneProximity:rate=1,roles=broadcast --duration 1 --output " +
            dir.file("x"));
        CHECK(unavailable.exitCode == 2);
        CHECK(unavailable.output.find("EddystoneProximity") != std::string::npos);

        CHECK(runCommand(cliPath() + " record --duration 1 --output " + dir.file("y"))
                  .exitCode == 2);
        CHECK(runCommand(cliPath() + " frobnicate").exitCode == 2);
    }
}

TEST_CASE("cli: decode-beacon") {
    auto ibeacon = runCommand(
        cliPath() +
        " decode-beacon 1aff4c0002150000000000000000000000000000000000010002c5");
    CHECK(ibeacon.exitCode == 0);
    CHECK(ibeacon.output.find("iBeacon") != std::string::npos);
    CHECK(ibeacon.output.find("00000000-0000-0000-0000-000000000000") != std::string::npos);

    auto eddystone = runCommand(cliPath() + " decode-beacon \"10 f6 00 67 6f 6f 67 6c 65 07\"");
    CHECK(eddystone.exitCode == 0);
    CHECK(eddystone.output.find("http://www.google.com") != std::string::npos);

    auto unknownFrame = runCommand(cliPath() + " decode-beacon 30ff");
    CHECK(unknownFrame.exitCode == 1);
    CHECK(unknownFrame.output.find("UnknownFrameType") != std::string::npos);

    auto notHex = runCommand(cliPath() + " decode-beacon zz");
    CHECK(notHex.exitCode == 1);
}

TEST_CASE("cli: predict and simulate") {
    auto idle = runCommand(cliPath() + " predict --mode idle");
    CHECK(idle.exitCode == 0);
    CHECK(idle.output.find("51.27") != std::string::npos);

    auto combo = runCommand(cliPath() + " predict --mode ibeacon-scan --mode ibeacon-broadcast");
    CHECK(combo.exitCode == 0);
    CHECK(combo.output.find("23.98") != std::string::npos);

    auto unknown = runCommand(cliPath() + " predict --mode warp-drive");
    CHECK(unknown.exitCode == 2);

    TempDir dir("cli-sim");
    auto simulate = runCommand(cliPath() + " simulate --mode location-best --step 30 --output " +
                               dir.file("discharge.csv"));
    CHECK(simulate.exitCode == 0);
    const std::string csv = readFileBytes(dir.file("discharge.csv"));
    CHECK(csv.rfind("timeHours,levelPercent", 0) == 0);
    CHECK(csv.find("17.5000,0.00") != std::string::npos);
}
