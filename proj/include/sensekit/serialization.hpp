#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sensekit/payload.hpp"
#include "sensekit/sensor_type.hpp"

namespace sensekit {

/// Version line at the top of every session CSV file. Column orders,
/// precisions and JSON key names are fixed for this version.
inline constexpr std::string_view kCsvFileHeader = "#sensekit v1";

/// Header line for a sensor's CSV schema: `timestampNanos,relativeSeconds`
/// followed by the payload columns in schema order.
std::string csvHeader(SensorType type);

/// One CSV data row. relativeSeconds is rendered with 9 fixed decimals,
/// payload decimals with 6; URL and device-name fields are double-quoted.
/// Raises SchemaMismatch when the payload does not belong to the sample's
/// sensor type.
std::string csvRow(const SensorSample& sample);

/// Inverse of csvRow for a data row of the given sensor. Raises ParseError
/// with a character position on malformed input.
SensorSample parseCsvRow(SensorType type, std::string_view line);

/// Compact single-line JSON object:
/// {"sensorType":...,"timestampNanos":...,"relativeSeconds":...,"data":{...}}
std::string toJson(const SensorSample& sample);

/// Inverse of toJson. Raises ParseError (bad JSON, unknown sensorType,
/// missing or mistyped keys).
SensorSample fromJson(std::string_view text);

/// Whole-file forms used for session output and trace storage. CSV files
/// carry the `#sensekit v1` line plus the column header; JSONL files hold
/// one toJson() object per line.
void writeSamplesCsv(std::ostream& out, SensorType type,
                     std::span<const SensorSample> samples);
std::vector<SensorSample> readSamplesCsv(std::istream& in, SensorType type);

void writeSamplesJsonl(std::ostream& out, std::span<const SensorSample> samples);
std::vector<SensorSample> readSamplesJsonl(std::istream& in, SensorType type);

namespace detail {

/// Fixed-precision, locale-independent decimal rendering.
std::string fixedDecimal(double value, int precision);

/// Splits one CSV line honoring double-quoted fields. Raises ParseError on
/// unterminated quotes.
std::vector<std::string> splitCsvLine(std::string_view line);

std::string formatMacAddress(std::uint64_t address48);

} // namespace detail

} // namespace sensekit
