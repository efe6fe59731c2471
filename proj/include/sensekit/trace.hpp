#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sensekit/payload.hpp"

namespace sensekit {

/// A recorded single-sensor stream that a replay driver can feed back into a
/// session. The data rows reuse the CSV sample schema; the first line pins
/// the format version and the sensor type so a file can't silently be
/// replayed as the wrong stream.
struct TraceFile {
    SensorType sensorType = SensorType::Accelerometer;
    std::vector<SensorSample> samples;
};

inline constexpr std::string_view kTraceHeaderPrefix = "#sensekit-trace v1 ";

/// Serializes the trace: version+type line, CSV column header, one row per
/// sample. Raises SchemaMismatch if a sample's payload disagrees with the
/// trace's sensor type.
void writeTrace(std::ostream& out, const TraceFile& trace);
void writeTraceFile(const std::string& path, const TraceFile& trace);

/// Parses a trace. Raises CorruptTrace for a bad version line, header or
/// row; raises SchemaMismatch if the column header doesn't match the type
/// named on the first line. Timestamps must be non-decreasing.
TraceFile readTrace(std::istream& in);
TraceFile readTraceFile(const std::string& path);

} // namespace sensekit
