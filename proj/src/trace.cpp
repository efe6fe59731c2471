#include "sensekit/trace.hpp"

#include <fstream>
#include <sstream>

#include "sensekit/errors.hpp"
#include "sensekit/serialization.hpp"

namespace sensekit {

void writeTrace(std::ostream& out, const TraceFile& trace) {
    out << kTraceHeaderPrefix << canonicalName(trace.sensorType) << "\n";
    out << csvHeader(trace.sensorType) << "\n";
    for (const SensorSample& sample : trace.samples) {
        if (sample.sensorType != trace.sensorType ||
            !payloadMatchesType(sample.payload, trace.sensorType))
            raise(ErrorKind::SchemaMismatch,
                  "trace sample type does not match trace sensor type");
        out << csvRow(sample) << "\n";
    }
}

void writeTraceFile(const std::string& path, const TraceFile& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        raise(ErrorKind::ParseError, "cannot open trace for writing: " + path);
    writeTrace(out, trace);
}

TraceFile readTrace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        raise(ErrorKind::CorruptTrace, "trace is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line.rfind(kTraceHeaderPrefix, 0) != 0)
        raise(ErrorKind::CorruptTrace, "bad trace version line: '" + line + "'");

    TraceFile trace;
    std::string typeName = line.substr(kTraceHeaderPrefix.size());
    std::optional<SensorType> type = sensorTypeFromName(typeName);
    if (!type)
        raise(ErrorKind::CorruptTrace, "unknown sensor type in trace header: '" + typeName + "'");
    trace.sensorType = *type;

    if (!std::getline(in, line))
        raise(ErrorKind::CorruptTrace, "trace has no column header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != csvHeader(trace.sensorType))
        raise(ErrorKind::SchemaMismatch,
              "trace column header does not match " + std::string(canonicalName(trace.sensorType)));

    int lineNo = 2;
    std::uint64_t lastTimestamp = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        SensorSample sample;
        try {
            sample = parseCsvRow(trace.sensorType, line);
        } catch (const SensingError& e) {
            raise(ErrorKind::CorruptTrace,
                  "trace line " + std::to_string(lineNo) + ": " + e.what());
        }
        if (sample.timestampNanos < lastTimestamp)
            raise(ErrorKind::CorruptTrace,
                  "trace line " + std::to_string(lineNo) + ": timestamps go backwards");
        lastTimestamp = sample.timestampNanos;
        trace.samples.push_back(std::move(sample));
    }
    return trace;
}

TraceFile readTraceFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::ParseError, "cannot open trace: " + path);
    return readTrace(in);
}

} // namespace sensekit
