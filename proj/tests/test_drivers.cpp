#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "sensekit/drivers.hpp"
#include "sensekit/energy.hpp"
#include "sensekit/serialization.hpp"

#include "checks.hpp"
#include "generators.hpp"

using namespace sensekit;
using testsupport::raisedKind;

namespace {

SensorConfig defaultConfigFor(SensorType type) {
    SensorConfig config;
    config.sensorType = type;
    if (isBeaconSensor(type)) {
        config.sampleRateHz = 1.0;
        config.roles.scan = true;
    } else if (!isEventDriven(type)) {
        config.sampleRateHz = type == SensorType::Location ? 1.0 : 20.0;
    }
    return config;
}

std::vector<SensorSample> runDriver(Driver& driver, std::uint64_t startNanos,
                                    std::uint64_t untilNanos,
                                    std::size_t maxSamples = std::numeric_limits<std::size_t>::max()) {
    driver.start(startNanos);
    std::vector<SensorSample> samples;
    while (samples.size() < maxSamples) {
        const auto due = driver.nextDueNanos();
        if (!due || *due >= untilNanos)
            break;
        samples.push_back(driver.produce());
    }
    return samples;
}

double norm3(double x, double y, double z) {
    return std::sqrt(x * x + y * y + z * z);
}

/// Per-type payload constraints from the schema table; every generated
/// sample must satisfy them.
void checkSchema(const SensorSample& sample, const SensorSample* previous) {
    switch (sample.sensorType) {
    case SensorType::Accelerometer: {
        const auto& p = std::get<AccelerometerPayload>(sample.payload);
        CHECK(std::abs(p.x) < 0.1);
        CHECK(std::abs(p.y) < 0.1);
        CHECK(p.z > 0.9);
        CHECK(p.z < 1.1);
        break;
    }
    case SensorType::Gravity: {
        const auto& p = std::get<GravityPayload>(sample.payload);
        CHECK(norm3(p.x, p.y, p.z) == doctest::Approx(1.0).epsilon(1e-4));
        break;
    }
    case SensorType::LinearAcceleration: {
        const auto& p = std::get<LinearAccelerationPayload>(sample.payload);
        CHECK(norm3(p.x, p.y, p.z) < 0.5);
        break;
    }
    case SensorType::Gyroscope: {
        const auto& p = std::get<GyroscopePayload>(sample.payload);
        CHECK(std::abs(p.x) <= 1.0);
        CHECK(std::abs(p.y) <= 1.0);
        CHECK(std::abs(p.z) <= 1.0);
        break;
    }
    case SensorType::Rotation: {
        const auto& p = std::get<RotationPayload>(sample.payload);
        const double norm = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z + p.w * p.w);
        CHECK(std::abs(norm - 1.0) <= 1e-9);
        break;
    }
    case SensorType::Magnetometer: {
        const auto& p = std::get<MagnetometerPayload>(sample.payload);
        CHECK(std::abs(p.x) < 100.0);
        CHECK(std::abs(p.y) < 100.0);
        CHECK(std::abs(p.z) < 100.0);
        break;
    }
    case SensorType::Pedometer: {
        const auto& p = std::get<PedometerPayload>(sample.payload);
        if (previous) {
            const auto& q = std::get<PedometerPayload>(previous->payload);
            CHECK(p.stepCount >= q.stepCount);
        }
        CHECK(p.distanceMeters == static_cast<double>(p.stepCount) * 0.75);
        break;
    }
    case SensorType::Altimeter: {
        const auto& p = std::get<AltimeterPayload>(sample.payload);
        CHECK(std::abs(p.relativeAltitudeMeters) < 10.0);
        CHECK(p.pressureKPa > 90.0);
        CHECK(p.pressureKPa < 110.0);
        break;
    }
    case SensorType::Humidity: {
        const auto& p = std::get<HumidityPayload>(sample.payload);
        CHECK(p.percent >= 0.0);
        CHECK(p.percent <= 100.0);
        break;
    }
    case SensorType::Light: {
        CHECK(std::get<LightPayload>(sample.payload).lux >= 0.0);
        break;
    }
    case SensorType::AmbientTemperature: {
        const auto& p = std::get<AmbientTemperaturePayload>(sample.payload);
        CHECK(p.celsius > 0.0);
        CHECK(p.celsius < 45.0);
        break;
    }
    case SensorType::Location: {
        const auto& p = std::get<LocationPayload>(sample.payload);
        CHECK(p.latitude >= -90.0);
        CHECK(p.latitude <= 90.0);
        CHECK(p.longitude >= -180.0);
        CHECK(p.longitude <= 180.0);
        CHECK(p.horizontalAccuracyMeters > 0.0);
        if (previous) {
            const auto& q = std::get<LocationPayload>(previous->payload);
            const double dt =
                static_cast<double>(sample.timestampNanos - previous->timestampNanos) * 1e-9;
            const double dy = (p.latitude - q.latitude) * 111320.0;
            const double dx = (p.longitude - q.longitude) * 111320.0 *
                              std::cos(p.latitude * 3.14159265358979 / 180.0);
            CHECK(std::sqrt(dx * dx + dy * dy) <= 2.0 * dt); // pedestrian speed
        }
        break;
    }
    case SensorType::MotionActivity: {
        const auto& p = std::get<MotionActivityPayload>(sample.payload);
        CHECK(static_cast<int>(p.activity) >= 0);
        CHECK(static_cast<int>(p.activity) <= 4);
        CHECK(static_cast<int>(p.confidence) >= 0);
        CHECK(static_cast<int>(p.confidence) <= 2);
        break;
    }
    case SensorType::Battery: {
        const auto& p = std::get<BatteryPayload>(sample.payload);
        CHECK(p.level >= 0.0);
        CHECK(p.level <= 1.0);
        if (previous)
            CHECK(p.level <= std::get<BatteryPayload>(previous->payload).level);
        break;
    }
    case SensorType::ScreenStatus: {
        if (previous) {
            CHECK(std::get<ScreenStatusPayload>(sample.payload).status !=
                  std::get<ScreenStatusPayload>(previous->payload).status);
        }
        break;
    }
    case SensorType::Microphone: {
        const auto& p = std::get<MicrophonePayload>(sample.payload);
        CHECK(p.rmsAmplitude >= 0.0);
        CHECK(p.rmsAmplitude <= 1.0);
        if (previous)
            CHECK(p.frameIndex == std::get<MicrophonePayload>(previous->payload).frameIndex + 1);
        break;
    }
    case SensorType::BluetoothClassic: {
        const auto& p = std::get<BluetoothClassicPayload>(sample.payload);
        CHECK(p.deviceAddress < (1ULL << 48));
        CHECK(!p.deviceName.empty());
        CHECK(p.rssi >= -120);
        CHECK(p.rssi <= 0);
        break;
    }
    case SensorType::IBeaconProximity: {
        const auto& p = std::get<IBeaconProximityPayload>(sample.payload);
        CHECK(p.rssi >= -120);
        CHECK(p.rssi <= 0);
        CHECK(p.frame.measuredPower == -59);
        break;
    }
    case SensorType::EddystoneProximity: {
        const auto& p = std::get<EddystoneProximityPayload>(sample.payload);
        CHECK(p.rssi >= -120);
        CHECK(p.rssi <= 0);
        if (const auto* tlm = std::get_if<beacon::EddystoneTlm>(&p.frame)) {
            // temperature on the 1/64 degC lattice survives both wire formats
            CHECK(tlm->temperatureC * 64.0 == std::round(tlm->temperatureC * 64.0));
        }
        break;
    }
    }
}

} // namespace

TEST_CASE("same seed reproduces the stream bit for bit") {
    for (SensorType type : allSensorTypes()) {
        CAPTURE(canonicalName(type));
        const SensorConfig config = defaultConfigFor(type);
        auto first = createSyntheticDriver(type, config, 42);
        auto second = createSyntheticDriver(type, config, 42);
        CHECK(runDriver(*first, 0, 90'000'000'000ULL, 60) ==
              runDriver(*second, 0, 90'000'000'000ULL, 60));
    }
}

TEST_CASE("different seeds give different streams") {
    const SensorConfig config = defaultConfigFor(SensorType::Accelerometer);
    auto a = createSyntheticDriver(SensorType::Accelerometer, config, 1);
    auto b = createSyntheticDriver(SensorType::Accelerometer, config, 2);
    CHECK(runDriver(*a, 0, 1'000'000'000ULL) != runDriver(*b, 0, 1'000'000'000ULL));
}

TEST_CASE("every generated payload satisfies its schema") {
    for (SensorType type : allSensorTypes()) {
        for (std::uint64_t seed : {7ULL, 0xDEADULL}) {
            CAPTURE(canonicalName(type));
            CAPTURE(seed);
            auto driver = createSyntheticDriver(type, defaultConfigFor(type), seed);
            const auto samples = runDriver(*driver, 0, 600'000'000'000ULL, 120);
            CHECK(!samples.empty());
            for (std::size_t i = 0; i < samples.size(); ++i) {
                CHECK(samples[i].sensorType == type);
                checkSchema(samples[i], i > 0 ? &samples[i - 1] : nullptr);
            }
        }
    }
}

TEST_CASE("non-rotation payload decimals sit on the CSV lattice") {
    for (SensorType type : allSensorTypes()) {
        if (type == SensorType::Rotation)
            continue; // quaternions trade lattice alignment for unit norm
        CAPTURE(canonicalName(type));
        auto driver = createSyntheticDriver(type, defaultConfigFor(type), 99);
        for (const SensorSample& sample : runDriver(*driver, 0, 600'000'000'000ULL, 40))
            CHECK(parseCsvRow(type, csvRow(sample)) == sample);
    }
}

TEST_CASE("rotation stream keeps unit norm over a long run") {
    auto driver =
        createSyntheticDriver(SensorType::Rotation, defaultConfigFor(SensorType::Rotation), 5);
    const auto samples = runDriver(*driver, 0, 30'000'000'000ULL);
    CHECK(samples.size() == 600);
    for (const SensorSample& sample : samples) {
        const auto& q = std::get<RotationPayload>(sample.payload);
        CHECK(std::abs(std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z + q.w * q.w) - 1.0) <= 1e-9);
    }
}

TEST_CASE("fused motion sensors share one trajectory") {
    const std::uint64_t sessionSeed = 314;
    SensorConfig gravityConfig = defaultConfigFor(SensorType::Gravity);
    SensorConfig rotationConfig = defaultConfigFor(SensorType::Rotation);

    auto gravity = createSyntheticDriver(SensorType::Gravity, gravityConfig,
                                         driverSeed(sessionSeed, SensorType::Gravity));
    auto rotation = createSyntheticDriver(SensorType::Rotation, rotationConfig,
                                          driverSeed(sessionSeed, SensorType::Rotation));

    const auto gravitySamples = runDriver(*gravity, 0, 5'000'000'000ULL);
    const auto rotationSamples = runDriver(*rotation, 0, 5'000'000'000ULL);
    REQUIRE(gravitySamples.size() == rotationSamples.size());

    auto lattice = [](double v) { return std::round(v * 1e6) / 1e6; };
    for (std::size_t i = 0; i < gravitySamples.size(); ++i) {
        const auto& g = std::get<GravityPayload>(gravitySamples[i].payload);
        const auto& q = std::get<RotationPayload>(rotationSamples[i].payload);
        // body-frame gravity is the third row of the rotation matrix
        CHECK(g.x == lattice(2.0 * (q.x * q.z - q.w * q.y)));
        CHECK(g.y == lattice(2.0 * (q.y * q.z + q.w * q.x)));
        CHECK(g.z == lattice(1.0 - 2.0 * (q.x * q.x + q.y * q.y)));
    }
}

TEST_CASE("per-sensor seeds derive from the session seed") {
    CHECK(driverSeed(1, SensorType::Gravity) == driverSeed(1, SensorType::LinearAcceleration));
    CHECK(driverSeed(1, SensorType::Gravity) == driverSeed(1, SensorType::Rotation));
    CHECK(driverSeed(1, SensorType::Gravity) != driverSeed(1, SensorType::Accelerometer));
    CHECK(driverSeed(1, SensorType::Gyroscope) != driverSeed(2, SensorType::Gyroscope));
}

TEST_CASE("event-driven drivers emit the state at start, then on change") {
    auto driver = createSyntheticDriver(SensorType::MotionActivity,
                                        defaultConfigFor(SensorType::MotionActivity), 7);
    const auto samples = runDriver(*driver, 1'000'000'000ULL, 601'000'000'000ULL);
    REQUIRE(samples.size() > 1); // mean dwell is 30 s
    CHECK(samples.front().timestampNanos == 1'000'000'000ULL);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        CHECK(samples[i].timestampNanos > samples[i - 1].timestampNanos);
        // consecutive activity samples differ (emission on change)
        CHECK(std::get<MotionActivityPayload>(samples[i].payload).activity !=
              std::get<MotionActivityPayload>(samples[i - 1].payload).activity);
    }
}

TEST_CASE("broadcast-only beacon configs advertise without producing samples") {
    SensorConfig config;
    config.sensorType = SensorType::IBeaconProximity;
    config.sampleRateHz = 1.0;
    config.roles.broadcast = true;
    config.beaconIdentity = BeaconIdentity{};
    auto driver = createSyntheticDriver(SensorType::IBeaconProximity, config, 3);
    driver->start(0);
    CHECK(!driver->nextDueNanos().has_value());
}

TEST_CASE("eddystone scan cycles the three frame kinds") {
    auto driver = createSyntheticDriver(SensorType::EddystoneProximity,
                                        defaultConfigFor(SensorType::EddystoneProximity), 11);
    const auto samples = runDriver(*driver, 0, 9'000'000'000ULL);
    REQUIRE(samples.size() == 9);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& frame = std::get<EddystoneProximityPayload>(samples[i].payload).frame;
        switch (i % 3) {
        case 0: CHECK(std::holds_alternative<beacon::EddystoneUid>(frame)); break;
        case 1: CHECK(std::holds_alternative<beacon::EddystoneUrl>(frame)); break;
        default: CHECK(std::holds_alternative<beacon::EddystoneTlm>(frame)); break;
        }
    }
}

TEST_CASE("battery driver emits whole-percent crossings") {
    SUBCASE("linear full-to-empty over the idle lifetime gives 100 samples") {
        const auto series =
            energy::simulateDischarge(energy::builtinIphone5s(), {}, 1.0);
        auto driver = batteryDriverFromDischarge(series);
        const auto samples =
            runDriver(*driver, 0, std::numeric_limits<std::uint64_t>::max());
        REQUIRE(samples.size() == 100); // initial 100% plus 99..1
        CHECK(std::get<BatteryPayload>(samples.front().payload).level == 1.0);
        CHECK(std::get<BatteryPayload>(samples.back().payload).level ==
              doctest::Approx(0.01));
        for (const SensorSample& sample : samples)
            CHECK(std::get<BatteryPayload>(sample.payload).state == BatteryState::Unplugged);
    }

    SUBCASE("constant series emits only the initial snapshot") {
        energy::DischargeSeries series;
        series.points = {{0.0, 0.8}, {5.0, 0.8}};
        auto driver = batteryDriverFromDischarge(series);
        const auto samples =
            runDriver(*driver, 0, std::numeric_limits<std::uint64_t>::max());
        REQUIRE(samples.size() == 1);
        CHECK(std::get<BatteryPayload>(samples[0].payload).level == 0.8);
    }

    SUBCASE("two-percent drop: initial plus the 99 and 98 crossings") {
        energy::DischargeSeries series;
        series.points = {{0.0, 1.0}, {2.0, 0.98}};
        auto driver = batteryDriverFromDischarge(series);
        const auto samples =
            runDriver(*driver, 0, std::numeric_limits<std::uint64_t>::max());
        REQUIRE(samples.size() == 3);
        CHECK(samples[0].timestampNanos == 0);
        CHECK(samples[1].timestampNanos == 3'600'000'000'000ULL); // 0.99 after one hour
        CHECK(samples[2].timestampNanos == 7'200'000'000'000ULL);
        CHECK(std::get<BatteryPayload>(samples[1].payload).level == 0.99);
        CHECK(std::get<BatteryPayload>(samples[2].payload).level == 0.98);
    }

    SUBCASE("invalid series") {
        energy::DischargeSeries empty;
        CHECK(raisedKind([&] { batteryDriverFromDischarge(empty); }) ==
              ErrorKind::InvalidSeries);

        energy::DischargeSeries rising;
        rising.points = {{0.0, 0.5}, {1.0, 0.7}};
        CHECK(raisedKind([&] { batteryDriverFromDischarge(rising); }) ==
              ErrorKind::InvalidSeries);

        energy::DischargeSeries timeWarp;
        timeWarp.points = {{1.0, 0.5}, {1.0, 0.4}};
        CHECK(raisedKind([&] { batteryDriverFromDischarge(timeWarp); }) ==
              ErrorKind::InvalidSeries);

        energy::DischargeSeries overCharged;
        overCharged.points = {{0.0, 1.2}};
        CHECK(raisedKind([&] { batteryDriverFromDischarge(overCharged); }) ==
              ErrorKind::InvalidSeries);
    }
}

TEST_CASE("replay reproduces a recorded stream") {
    auto source = createSyntheticDriver(SensorType::MotionActivity,
                                        defaultConfigFor(SensorType::MotionActivity), 21);
    const auto recorded = runDriver(*source, 500'000'000ULL, 400'000'000'000ULL);
    REQUIRE(recorded.size() > 2); // irregular event gaps make the timing interesting

    TraceFile trace;
    trace.sensorType = SensorType::MotionActivity;
    trace.samples = recorded;

    auto replay = createReplayDriver(SensorType::MotionActivity, trace);
    const std::uint64_t newStart = 42'000'000'000ULL;
    const auto replayed =
        runDriver(*replay, newStart, std::numeric_limits<std::uint64_t>::max());

    REQUIRE(replayed.size() == recorded.size());
    for (std::size_t i = 0; i < recorded.size(); ++i) {
        CHECK(replayed[i].payload == recorded[i].payload);
        // first record lands on the start instant, gaps preserved exactly
        CHECK(replayed[i].timestampNanos - newStart ==
              recorded[i].timestampNanos - recorded.front().timestampNanos);
    }
}

TEST_CASE("replay rejects bad traces") {
    TraceFile trace;
    trace.sensorType = SensorType::Gyroscope;
    std::mt19937_64 rng(4);
    for (int i = 0; i < 4; ++i) {
        SensorSample sample = testsupport::randomSample(SensorType::Gyroscope, rng);
        sample.timestampNanos = static_cast<std::uint64_t>(i) * 1'000'000ULL;
        trace.samples.push_back(sample);
    }

    SUBCASE("sensor type mismatch") {
        CHECK(raisedKind([&] { createReplayDriver(SensorType::Accelerometer, trace); }) ==
              ErrorKind::SchemaMismatch);
    }

    SUBCASE("unsorted records") {
        std::swap(trace.samples[1], trace.samples[2]);
        CHECK(raisedKind([&] { createReplayDriver(SensorType::Gyroscope, trace); }) ==
              ErrorKind::CorruptTrace);
    }

    SUBCASE("payload of the wrong schema") {
        trace.samples[2].payload = AccelerometerPayload{0, 0, 1};
        CHECK(raisedKind([&] { createReplayDriver(SensorType::Gyroscope, trace); }) ==
              ErrorKind::CorruptTrace);
    }

    SUBCASE("empty trace replays as an exhausted stream") {
        trace.samples.clear();
        auto driver = createReplayDriver(SensorType::Gyroscope, trace);
        driver->start(0);
        CHECK(!driver->nextDueNanos().has_value());
    }
}

TEST_CASE("synthetic driver rejects foreign or invalid configs") {
    CHECK(raisedKind([] {
        createSyntheticDriver(SensorType::Accelerometer,
                              defaultConfigFor(SensorType::Gyroscope), 0);
    }) == ErrorKind::InvalidConfig);
    SensorConfig bad = defaultConfigFor(SensorType::Accelerometer);
    bad.sampleRateHz = 0.0;
    CHECK(raisedKind([&] { createSyntheticDriver(SensorType::Accelerometer, bad, 0); }) ==
          ErrorKind::InvalidConfig);
}
