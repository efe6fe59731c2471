#include "sensekit/drivers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "sensekit/errors.hpp"

namespace sensekit {

namespace {

constexpr double kPi = 3.141592653589793238462643;

// Rounds to the CSV codec's payload precision so recorded values survive a
// CSV round-trip bit-exactly. Rotation is the one exception: its quaternions
// must keep norm 1 to 1e-9, which a 1e-6 lattice cannot represent.
double quantize6(double v) {
    return std::round(v * 1e6) / 1e6;
}

double clampTo(double v, double lo, double hi) {
    return std::min(hi, std::max(lo, v));
}

/// Band-limited noise: four seeded sinusoids with amplitudes normalized to
/// sum 1, so |value| <= 1 and |integral| is bounded too. Being a pure
/// function of t keeps every stream independent of call patterns.
class SignalMix {
public:
    SignalMix() = default;

    SignalMix(std::mt19937_64& rng, double minFreqHz, double maxFreqHz) {
        std::uniform_real_distribution<double> freq(minFreqHz, maxFreqHz);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
        std::uniform_real_distribution<double> rawAmp(0.3, 1.0);
        double total = 0;
        for (Term& term : terms_) {
            term = {rawAmp(rng), freq(rng), phase(rng)};
            total += term.amp;
        }
        for (Term& term : terms_)
            term.amp /= total;
    }

    double value(double tSeconds) const {
        double v = 0;
        for (const Term& term : terms_)
            v += term.amp * std::sin(2.0 * kPi * term.freqHz * tSeconds + term.phase);
        return v;
    }

    /// Antiderivative of value(), zeroed at t=0; used where a bounded-speed
    /// path is needed (the location walk).
    double integral(double tSeconds) const {
        double v = 0;
        for (const Term& term : terms_) {
            double w = 2.0 * kPi * term.freqHz;
            v += term.amp * (std::cos(term.phase) - std::cos(w * tSeconds + term.phase)) / w;
        }
        return v;
    }

private:
    struct Term {
        double amp = 0, freqHz = 1, phase = 0;
    };
    std::array<Term, 4> terms_{};
};

/// Tick schedule at a fixed rate: sample k lands at anchor + k/rate. A
/// pending rate applies when the next scheduled tick fires, re-anchoring
/// there, so the switch boundary neither drops nor duplicates a sample.
class RateSchedule {
public:
    void startAt(std::uint64_t nanos, double rateHz) {
        anchor_ = nanos;
        rateHz_ = rateHz;
        k_ = 0;
    }

    std::uint64_t due() const {
        long double offset = static_cast<long double>(k_) * 1e9L / rateHz_;
        return anchor_ + static_cast<std::uint64_t>(llroundl(offset));
    }

    void advance() { ++k_; }

    void reanchor(std::uint64_t emittedAt, double newRateHz) {
        anchor_ = emittedAt;
        rateHz_ = newRateHz;
        k_ = 1;
    }

private:
    std::uint64_t anchor_ = 0;
    std::uint64_t k_ = 0;
    double rateHz_ = 1.0;
};

double secondsOf(std::uint64_t nanos) {
    return static_cast<double>(nanos) * 1e-9;
}

/// Clock-driven synthetic sensor: subclasses provide the payload as a pure
/// function of session time and tick index.
class ContinuousDriver : public Driver {
public:
    ContinuousDriver(SensorType type, SensorConfig config)
        : type_(type), config_(std::move(config)) {}

    SensorType sensorType() const override { return type_; }

    void start(std::uint64_t sessionNanos) override {
        pending_.reset();
        schedule_.startAt(sessionNanos, *config_.sampleRateHz);
        started_ = true;
    }

    std::optional<std::uint64_t> nextDueNanos() const override {
        if (!started_ || !emitting())
            return std::nullopt;
        return schedule_.due();
    }

    SensorSample produce() override {
        std::uint64_t ts = schedule_.due();
        if (pending_) {
            config_ = *pending_;
            pending_.reset();
            schedule_.reanchor(ts, *config_.sampleRateHz);
        } else {
            schedule_.advance();
        }
        SensorSample sample;
        sample.sensorType = type_;
        sample.timestampNanos = ts;
        sample.payload = payloadAt(ts, tick_++);
        return sample;
    }

    void reconfigure(const SensorConfig& config) override {
        if (started_)
            pending_ = config;
        else
            config_ = config;
    }

protected:
    const SensorConfig& config() const { return config_; }

    /// Whether the stream currently yields samples; beacon sensors in a
    /// broadcast-only role advertise without producing sightings.
    virtual bool emitting() const { return true; }

    virtual Payload payloadAt(std::uint64_t sessionNanos, std::uint64_t tick) = 0;

private:
    SensorType type_;
    SensorConfig config_;
    std::optional<SensorConfig> pending_;
    RateSchedule schedule_;
    std::uint64_t tick_ = 0;
    bool started_ = false;
};

class AccelerometerDriver final : public ContinuousDriver {
public:
    AccelerometerDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::Accelerometer, std::move(config)) {
        std::mt19937_64 rng(seed);
        mx_ = SignalMix(rng, 0.2, 3.0);
        my_ = SignalMix(rng, 0.2, 3.0);
        mz_ = SignalMix(rng, 0.2, 3.0);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        double t = secondsOf(nanos);
        AccelerometerPayload p;
        p.x = quantize6(0.05 * mx_.value(t));
        p.y = quantize6(0.05 * my_.value(t));
        p.z = quantize6(1.0 + 0.05 * mz_.value(t));
        return p;
    }

private:
    SignalMix mx_, my_, mz_;
};

class GyroscopeDriver final : public ContinuousDriver {
public:
    GyroscopeDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::Gyroscope, std::move(config)) {
        std::mt19937_64 rng(seed);
        mx_ = SignalMix(rng, 0.2, 3.0);
        my_ = SignalMix(rng, 0.2, 3.0);
        mz_ = SignalMix(rng, 0.2, 3.0);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        double t = secondsOf(nanos);
        GyroscopePayload p;
        p.x = quantize6(0.8 * mx_.value(t));
        p.y = quantize6(0.8 * my_.value(t));
        p.z = quantize6(0.8 * mz_.value(t));
        return p;
    }

private:
    SignalMix mx_, my_, mz_;
};

class MagnetometerDriver final : public ContinuousDriver {
public:
    MagnetometerDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::Magnetometer, std::move(config)) {
        std::mt19937_64 rng(seed);
        mx_ = SignalMix(rng, 0.1, 1.5);
        my_ = SignalMix(rng, 0.1, 1.5);
        mz_ = SignalMix(rng, 0.1, 1.5);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        double t = secondsOf(nanos);
        MagnetometerPayload p;
        p.x = quantize6(22.0 + 3.0 * mx_.value(t));
        p.y = quantize6(5.0 + 3.0 * my_.value(t));
        p.z = quantize6(-42.0 + 3.0 * mz_.value(t));
        return p;
    }

private:
    SignalMix mx_, my_, mz_;
};

/// One slowly tumbling orientation trajectory shared by the three fused
/// sensors. Gravity, LinearAcceleration and Rotation drivers built from the
/// same seed see the same motion, mirroring one underlying device-motion
/// unit.
class DeviceMotionModel {
public:
    explicit DeviceMotionModel(std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        roll_ = SignalMix(rng, 0.05, 0.6);
        pitch_ = SignalMix(rng, 0.05, 0.6);
        yaw_ = SignalMix(rng, 0.02, 0.3);
        linX_ = SignalMix(rng, 0.3, 3.0);
        linY_ = SignalMix(rng, 0.3, 3.0);
        linZ_ = SignalMix(rng, 0.3, 3.0);
    }

    RotationPayload rotationAt(double t) const {
        double roll = 0.5 * roll_.value(t);
        double pitch = 0.5 * pitch_.value(t);
        double yaw = 1.2 * yaw_.value(t);
        double cr = std::cos(roll / 2), sr = std::sin(roll / 2);
        double cp = std::cos(pitch / 2), sp = std::sin(pitch / 2);
        double cy = std::cos(yaw / 2), sy = std::sin(yaw / 2);
        RotationPayload q;
        q.w = cr * cp * cy + sr * sp * sy;
        q.x = sr * cp * cy - cr * sp * sy;
        q.y = cr * sp * cy + sr * cp * sy;
        q.z = cr * cp * sy - sr * sp * cy;
        double norm = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z + q.w * q.w);
        q.x /= norm;
        q.y /= norm;
        q.z /= norm;
        q.w /= norm;
        return q;
    }

    GravityPayload gravityAt(double t) const {
        RotationPayload q = rotationAt(t);
        GravityPayload g;
        g.x = quantize6(2.0 * (q.x * q.z - q.w * q.y));
        g.y = quantize6(2.0 * (q.y * q.z + q.w * q.x));
        g.z = quantize6(1.0 - 2.0 * (q.x * q.x + q.y * q.y));
        return g;
    }

    LinearAccelerationPayload linearAt(double t) const {
        LinearAccelerationPayload a;
        a.x = quantize6(0.1 * linX_.value(t));
        a.y = quantize6(0.1 * linY_.value(t));
        a.z = quantize6(0.1 * linZ_.value(t));
        return a;
    }

private:
    SignalMix roll_, pitch_, yaw_, linX_, linY_, linZ_;
};

class DeviceMotionDriver final : public ContinuousDriver {
public:
    DeviceMotionDriver(SensorType type, SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(type, std::move(config)), model_(seed) {}

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        double t = secondsOf(nanos);
        switch (sensorType()) {
        case SensorType::Gravity:
            return model_.gravityAt(t);
        case SensorType::LinearAcceleration:
            return model_.linearAt(t);
        default:
            return model_.rotationAt(t);
        }
    }

private:
    DeviceMotionModel model_;
};

class AltimeterDriver final : public ContinuousDriver {
public:
    AltimeterDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::Altimeter, std::move(config)) {
        std::mt19937_64 rng(seed);
        alt_ = SignalMix(rng, 0.02, 0.3);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        double altitude = 3.0 * alt_.value(secondsOf(nanos));
        AltimeterPayload p;
        p.relativeAltitudeMeters = quantize6(altitude);
        // Near sea level pressure falls roughly 0.012 kPa per meter climbed.
        p.pressureKPa = quantize6(101.325 - 0.012 * altitude);
        return p;
    }

private:
    SignalMix alt_;
};

class HumidityDriver final : public ContinuousDriver {
public:
    HumidityDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::Humidity, std::move(config)) {
        std::mt19937_64 rng(seed);
        mix_ = SignalMix(rng, 0.01, 0.2);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        HumidityPayload p;
        p.percent = quantize6(clampTo(47.0 + 12.0 * mix_.value(secondsOf(nanos)), 0.0, 100.0));
        return p;
    }

private:
    SignalMix mix_;
};

class LightDriver final : public ContinuousDriver {
public:
    LightDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::Light, std::move(config)) {
        std::mt19937_64 rng(seed);
        mix_ = SignalMix(rng, 0.05, 0.8);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        LightPayload p;
        p.lux = quantize6(std::max(0.0, 320.0 + 300.0 * mix_.value(secondsOf(nanos))));
        return p;
    }

private:
    SignalMix mix_;
};

class AmbientTemperatureDriver final : public ContinuousDriver {
public:
    AmbientTemperatureDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::AmbientTemperature, std::move(config)) {
        std::mt19937_64 rng(seed);
        mix_ = SignalMix(rng, 0.005, 0.1);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        AmbientTemperaturePayload p;
        p.celsius = quantize6(21.5 + 2.5 * mix_.value(secondsOf(nanos)));
        return p;
    }

private:
    SignalMix mix_;
};

/// Seeded pedestrian walk: velocity components bounded by 1.3 m/s each, so
/// ground speed stays under 2 m/s; the path is the analytic integral of the
/// velocity mixes.
class LocationDriver final : public ContinuousDriver {
public:
    LocationDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::Location, std::move(config)) {
        std::mt19937_64 rng(seed);
        east_ = SignalMix(rng, 0.01, 0.15);
        north_ = SignalMix(rng, 0.01, 0.15);
        alt_ = SignalMix(rng, 0.01, 0.1);
        std::uniform_real_distribution<double> offset(-0.01, 0.01);
        baseLatitude_ = 51.5246 + offset(rng);
        baseLongitude_ = -0.0401 + offset(rng);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t) override {
        double t = secondsOf(nanos);
        double eastMeters = 1.3 * east_.integral(t);
        double northMeters = 1.3 * north_.integral(t);
        LocationPayload p;
        p.latitude = quantize6(baseLatitude_ + northMeters / 111320.0);
        p.longitude = quantize6(baseLongitude_ +
                                eastMeters / (111320.0 * std::cos(baseLatitude_ * kPi / 180.0)));
        p.altitudeMeters = quantize6(12.0 + 2.0 * alt_.value(t));
        p.horizontalAccuracyMeters = accuracyMeters();
        return p;
    }

private:
    double accuracyMeters() const {
        switch (config().accuracyMode.value_or(AccuracyMode::Best)) {
        case AccuracyMode::Best:
            return 5.0;
        case AccuracyMode::Balanced:
            return 15.0;
        default:
            return 50.0;
        }
    }

    SignalMix east_, north_, alt_;
    double baseLatitude_ = 0;
    double baseLongitude_ = 0;
};

class MicrophoneDriver final : public ContinuousDriver {
public:
    MicrophoneDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::Microphone, std::move(config)) {
        std::mt19937_64 rng(seed);
        mix_ = SignalMix(rng, 0.5, 4.0);
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t tick) override {
        MicrophonePayload p;
        p.frameIndex = tick;
        p.rmsAmplitude = quantize6(clampTo(0.5 + 0.45 * mix_.value(secondsOf(nanos)), 0.0, 1.0));
        return p;
    }

private:
    SignalMix mix_;
};

class BluetoothClassicDriver final : public ContinuousDriver {
public:
    BluetoothClassicDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::BluetoothClassic, std::move(config)) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < kNearbyDevices; ++i) {
            devices_[i].address = rng() & 0xFFFFFFFFFFFFULL;
            char name[16];
            std::snprintf(name, sizeof(name), "BT-%04X",
                          static_cast<unsigned>(rng() & 0xFFFF));
            devices_[i].name = name;
            devices_[i].range = SignalMix(rng, 0.05, 0.5);
        }
    }

protected:
    Payload payloadAt(std::uint64_t nanos, std::uint64_t tick) override {
        const NearbyDevice& device = devices_[tick % kNearbyDevices];
        BluetoothClassicPayload p;
        p.deviceAddress = device.address;
        p.deviceName = device.name;
        double level = 0.5 + 0.5 * device.range.value(secondsOf(nanos));
        p.rssi = static_cast<int>(clampTo(std::round(-55.0 - 25.0 * level), -120.0, 0.0));
        return p;
    }

private:
    static constexpr std::size_t kNearbyDevices = 3;
    struct NearbyDevice {
        std::uint64_t address = 0;
        std::string name;
        SignalMix range;
    };
    std::array<NearbyDevice, kNearbyDevices> devices_;
};

int rssiAtDistance(double distanceMeters, double referencePower) {
    double rssi = referencePower - 20.0 * std::log10(distanceMeters);
    return static_cast<int>(clampTo(std::round(rssi), -120.0, 0.0));
}

/// Scans a small synthetic population of nearby iBeacons drifting around
/// within a couple of meters. In a broadcast-only role the driver advertises
/// without producing sightings.
class IBeaconScanDriver final : public ContinuousDriver {
public:
    IBeaconScanDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::IBeaconProximity, std::move(config)) {
        std::mt19937_64 rng(seed);
        for (Neighbor& neighbor : neighbors_) {
            for (std::uint8_t& byte : neighbor.frame.uuid)
                byte = static_cast<std::uint8_t>(rng());
            neighbor.frame.major = static_cast<std::uint16_t>(1 + rng() % 100);
            neighbor.frame.minor = static_cast<std::uint16_t>(1 + rng() % 1000);
            neighbor.frame.measuredPower = -59;
            neighbor.distance = SignalMix(rng, 0.02, 0.4);
        }
    }

protected:
    bool emitting() const override { return config().roles.scan; }

    Payload payloadAt(std::uint64_t nanos, std::uint64_t tick) override {
        const Neighbor& neighbor = neighbors_[tick % neighbors_.size()];
        double distance = 1.6 + 1.3 * neighbor.distance.value(secondsOf(nanos));
        IBeaconProximityPayload p;
        p.frame = neighbor.frame;
        p.rssi = rssiAtDistance(distance, neighbor.frame.measuredPower);
        return p;
    }

private:
    struct Neighbor {
        beacon::IBeaconFrame frame;
        SignalMix distance;
    };
    std::array<Neighbor, 2> neighbors_;
};

/// Cycles UID, URL and TLM frames from a synthetic Eddystone neighborhood.
/// TLM temperatures stay on the 1/64 degC lattice so both the 8.8 wire
/// format and the 6-decimal CSV column reproduce them exactly.
class EddystoneScanDriver final : public ContinuousDriver {
public:
    EddystoneScanDriver(SensorConfig config, std::uint64_t seed)
        : ContinuousDriver(SensorType::EddystoneProximity, std::move(config)) {
        std::mt19937_64 rng(seed);
        for (std::uint8_t& byte : uid_.namespaceId)
            byte = static_cast<std::uint8_t>(rng());
        for (std::uint8_t& byte : uid_.instanceId)
            byte = static_cast<std::uint8_t>(rng());
        uid_.txPowerAt0m = -18;
        url_.txPowerAt0m = -18;
        url_.url = "http://www.example.com/";
        baseAdvCount_ = static_cast<std::uint32_t>(rng() % 100000);
        batteryMilliVolts_ = static_cast<std::uint16_t>(2900 + rng() % 200);
        distance_ = SignalMix(rng, 0.02, 0.4);
    }

protected:
    bool emitting() const override { return config().roles.scan; }

    Payload payloadAt(std::uint64_t nanos, std::uint64_t tick) override {
        double t = secondsOf(nanos);
        double distance = 1.6 + 1.3 * distance_.value(t);
        EddystoneProximityPayload p;
        switch (tick % 3) {
        case 0:
            p.frame = uid_;
            break;
        case 1:
            p.frame = url_;
            break;
        default: {
            beacon::EddystoneTlm tlm;
            tlm.batteryMilliVolts = batteryMilliVolts_;
            tlm.temperatureC = 21.0 + static_cast<double>(tick % 128) / 64.0;
            tlm.advCount = baseAdvCount_ + static_cast<std::uint32_t>(tick);
            tlm.uptimeDeciseconds = static_cast<std::uint32_t>(nanos / 100'000'000ULL);
            p.frame = tlm;
            break;
        }
        }
        p.rssi = rssiAtDistance(distance, uid_.txPowerAt0m - beacon::kEddystone0mTo1mDb);
        return p;
    }

private:
    beacon::EddystoneUid uid_;
    beacon::EddystoneUrl url_;
    std::uint32_t baseAdvCount_ = 0;
    std::uint16_t batteryMilliVolts_ = 3000;
    SignalMix distance_;
};

/// Event-driven base: emits the current state at start, then re-emits every
/// time the seeded change process fires. Dwell times are exponential with a
/// 30-second mean.
class EventDriver : public Driver {
public:
    EventDriver(SensorType type, SensorConfig config, std::uint64_t seed)
        : type_(type), config_(std::move(config)), rng_(seed) {}

    SensorType sensorType() const override { return type_; }

    void start(std::uint64_t sessionNanos) override {
        nextDue_ = sessionNanos;
        initialEmitted_ = false;
    }

    std::optional<std::uint64_t> nextDueNanos() const override { return nextDue_; }

    SensorSample produce() override {
        std::uint64_t ts = *nextDue_;
        if (initialEmitted_)
            transition();
        initialEmitted_ = true;
        SensorSample sample;
        sample.sensorType = type_;
        sample.timestampNanos = ts;
        sample.payload = statePayload(ts);
        nextDue_ = ts + dwellNanos();
        return sample;
    }

    void reconfigure(const SensorConfig& config) override { config_ = config; }

protected:
    /// Advances the underlying state machine by one change.
    virtual void transition() = 0;
    virtual Payload statePayload(std::uint64_t sessionNanos) = 0;

    std::mt19937_64& rng() { return rng_; }

private:
    std::uint64_t dwellNanos() {
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        double dwellSeconds = -30.0 * std::log1p(-uniform(rng_));
        dwellSeconds = std::max(dwellSeconds, 0.001);
        return static_cast<std::uint64_t>(llround(dwellSeconds * 1e9));
    }

    SensorType type_;
    SensorConfig config_;
    std::mt19937_64 rng_;
    std::optional<std::uint64_t> nextDue_;
    bool initialEmitted_ = false;
};

class MotionActivityDriver final : public EventDriver {
public:
    MotionActivityDriver(SensorConfig config, std::uint64_t seed)
        : EventDriver(SensorType::MotionActivity, std::move(config), seed) {
        activity_ = static_cast<ActivityClass>(rng()() % 5);
    }

protected:
    void transition() override {
        // Uniform jump to one of the other four classes.
        auto current = static_cast<std::uint64_t>(activity_);
        activity_ = static_cast<ActivityClass>((current + 1 + rng()() % 4) % 5);
        confidence_ = static_cast<ActivityConfidence>(rng()() % 3);
    }

    Payload statePayload(std::uint64_t) override {
        return MotionActivityPayload{activity_, confidence_};
    }

private:
    ActivityClass activity_ = ActivityClass::Stationary;
    ActivityConfidence confidence_ = ActivityConfidence::Medium;
};

class ScreenStatusDriver final : public EventDriver {
public:
    ScreenStatusDriver(SensorConfig config, std::uint64_t seed)
        : EventDriver(SensorType::ScreenStatus, std::move(config), seed) {}

protected:
    void transition() override {
        status_ = status_ == ScreenState::On ? ScreenState::Off : ScreenState::On;
    }

    Payload statePayload(std::uint64_t) override { return ScreenStatusPayload{status_}; }

private:
    ScreenState status_ = ScreenState::On;
};

class PedometerDriver final : public EventDriver {
public:
    PedometerDriver(SensorConfig config, std::uint64_t seed)
        : EventDriver(SensorType::Pedometer, std::move(config), seed) {}

protected:
    void transition() override { stepCount_ += 20 + rng()() % 80; }

    Payload statePayload(std::uint64_t) override {
        PedometerPayload p;
        p.stepCount = stepCount_;
        p.distanceMeters = static_cast<double>(stepCount_) * 0.75;
        return p;
    }

private:
    std::uint64_t stepCount_ = 0;
};

/// Battery stream backed by a discharge series: the starting level at start,
/// then one sample per 1% boundary crossing. The exact-empty point is not
/// emitted; at 0% the device is off.
class DischargeBatteryDriver final : public Driver {
public:
    explicit DischargeBatteryDriver(const energy::DischargeSeries& series) {
        validate(series);
        buildEvents(series);
    }

    SensorType sensorType() const override { return SensorType::Battery; }

    void start(std::uint64_t sessionNanos) override {
        start_ = sessionNanos;
        next_ = 0;
    }

    std::optional<std::uint64_t> nextDueNanos() const override {
        if (next_ >= events_.size())
            return std::nullopt;
        return start_ + events_[next_].offsetNanos;
    }

    SensorSample produce() override {
        const Event& event = events_[next_++];
        SensorSample sample;
        sample.sensorType = SensorType::Battery;
        sample.timestampNanos = start_ + event.offsetNanos;
        sample.payload = BatteryPayload{event.level, BatteryState::Unplugged};
        return sample;
    }

    void reconfigure(const SensorConfig&) override {}

private:
    struct Event {
        std::uint64_t offsetNanos = 0;
        double level = 1.0;
    };

    static void validate(const energy::DischargeSeries& series) {
        if (series.points.empty())
            raise(ErrorKind::InvalidSeries, "discharge series is empty");
        for (std::size_t i = 0; i < series.points.size(); ++i) {
            const auto& point = series.points[i];
            if (point.level < 0.0 || point.level > 1.0)
                raise(ErrorKind::InvalidSeries, "discharge level outside [0, 1]");
            if (i > 0) {
                if (point.timeHours <= series.points[i - 1].timeHours)
                    raise(ErrorKind::InvalidSeries, "discharge times must increase");
                if (point.level > series.points[i - 1].level)
                    raise(ErrorKind::InvalidSeries, "discharge level increased");
            }
        }
    }

    static std::uint64_t nanosOfHours(double hours) {
        return static_cast<std::uint64_t>(llroundl(static_cast<long double>(hours) * 3.6e12L));
    }

    void buildEvents(const energy::DischargeSeries& series) {
        const auto& points = series.points;
        double startLevel = points.front().level;
        events_.push_back({nanosOfHours(points.front().timeHours), startLevel});

        // Highest whole-percent boundary strictly below the starting level.
        int boundary = static_cast<int>(std::floor(startLevel * 100.0 - 1e-9));
        std::size_t segment = 1;
        for (; boundary >= 1; --boundary) {
            double level = boundary / 100.0;
            while (segment < points.size() && points[segment].level > level)
                ++segment;
            if (segment >= points.size())
                break;
            const auto& hi = points[segment - 1];
            const auto& lo = points[segment];
            double fraction = hi.level > lo.level ? (hi.level - level) / (hi.level - lo.level) : 1.0;
            double crossingHours = hi.timeHours + fraction * (lo.timeHours - hi.timeHours);
            events_.push_back({nanosOfHours(crossingHours), level});
        }
    }

    std::vector<Event> events_;
    std::uint64_t start_ = 0;
    std::size_t next_ = 0;
};

class ReplayDriver final : public Driver {
public:
    ReplayDriver(SensorType type, TraceFile trace) : trace_(std::move(trace)) {
        if (trace_.sensorType != type)
            raise(ErrorKind::SchemaMismatch,
                  "trace holds " + std::string(canonicalName(trace_.sensorType)) +
                      " samples, driver expects " + std::string(canonicalName(type)));
        std::uint64_t last = 0;
        for (std::size_t i = 0; i < trace_.samples.size(); ++i) {
            const SensorSample& sample = trace_.samples[i];
            if (sample.sensorType != type || !payloadMatchesType(sample.payload, type))
                raise(ErrorKind::CorruptTrace, "trace record has a mismatched payload");
            if (i > 0 && sample.timestampNanos < last)
                raise(ErrorKind::CorruptTrace, "trace records are not sorted by timestamp");
            last = sample.timestampNanos;
        }
    }

    SensorType sensorType() const override { return trace_.sensorType; }

    void start(std::uint64_t sessionNanos) override {
        start_ = sessionNanos;
        next_ = 0;
    }

    std::optional<std::uint64_t> nextDueNanos() const override {
        if (next_ >= trace_.samples.size())
            return std::nullopt;
        return start_ + offsetOf(next_);
    }

    SensorSample produce() override {
        SensorSample sample = trace_.samples[next_];
        sample.timestampNanos = start_ + offsetOf(next_);
        ++next_;
        return sample;
    }

    void reconfigure(const SensorConfig&) override {}

private:
    std::uint64_t offsetOf(std::size_t index) const {
        return trace_.samples[index].timestampNanos - trace_.samples.front().timestampNanos;
    }

    TraceFile trace_;
    std::uint64_t start_ = 0;
    std::size_t next_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t driverSeed(std::uint64_t sessionSeed, SensorType type) {
    // The fused motion sensors share the Gravity stream id so that all three
    // views are cut from the same trajectory.
    SensorType streamId = type;
    if (type == SensorType::LinearAcceleration || type == SensorType::Rotation)
        streamId = SensorType::Gravity;
    return splitmix64(sessionSeed ^ (static_cast<std::uint64_t>(streamId) + 1) * 0x9E3779B97F4A7C15ULL);
}

std::unique_ptr<Driver> createSyntheticDriver(SensorType type, const SensorConfig& config,
                                              std::uint64_t seed) {
    if (config.sensorType != type)
        raise(ErrorKind::InvalidConfig,
              "config names " + std::string(canonicalName(config.sensorType)) +
                  " but the driver is for " + std::string(canonicalName(type)));
    validateConfig(config);

    switch (type) {
    case SensorType::Accelerometer:
        return std::make_unique<AccelerometerDriver>(config, seed);
    case SensorType::Gravity:
    case SensorType::LinearAcceleration:
    case SensorType::Rotation:
        return std::make_unique<DeviceMotionDriver>(type, config, seed);
    case SensorType::Gyroscope:
        return std::make_unique<GyroscopeDriver>(config, seed);
    case SensorType::Magnetometer:
        return std::make_unique<MagnetometerDriver>(config, seed);
    case SensorType::Pedometer:
        return std::make_unique<PedometerDriver>(config, seed);
    case SensorType::Altimeter:
        return std::make_unique<AltimeterDriver>(config, seed);
    case SensorType::Humidity:
        return std::make_unique<HumidityDriver>(config, seed);
    case SensorType::Light:
        return std::make_unique<LightDriver>(config, seed);
    case SensorType::AmbientTemperature:
        return std::make_unique<AmbientTemperatureDriver>(config, seed);
    case SensorType::Location:
        return std::make_unique<LocationDriver>(config, seed);
    case SensorType::MotionActivity:
        return std::make_unique<MotionActivityDriver>(config, seed);
    case SensorType::Battery:
        return batteryDriverFromDischarge(
            energy::simulateDischarge(energy::builtinIphone5s(), {}, 1.0));
    case SensorType::ScreenStatus:
        return std::make_unique<ScreenStatusDriver>(config, seed);
    case SensorType::Microphone:
        return std::make_unique<MicrophoneDriver>(config, seed);
    case SensorType::BluetoothClassic:
        return std::make_unique<BluetoothClassicDriver>(config, seed);
    case SensorType::IBeaconProximity:
        return std::make_unique<IBeaconScanDriver>(config, seed);
    case SensorType::EddystoneProximity:
        return std::make_unique<EddystoneScanDriver>(config, seed);
    }
    raise(ErrorKind::InvalidConfig, "unhandled sensor type");
}

std::unique_ptr<Driver> createReplayDriver(SensorType type, TraceFile trace) {
    return std::make_unique<ReplayDriver>(type, std::move(trace));
}

std::unique_ptr<Driver> batteryDriverFromDischarge(const energy::DischargeSeries& series) {
    return std::make_unique<DischargeBatteryDriver>(series);
}

} // namespace sensekit
