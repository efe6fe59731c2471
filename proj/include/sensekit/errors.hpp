#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sensekit {

/// Every failure the library reports carries one of these kinds. The CLI
/// prints the kind name and maps it onto its exit-code discipline.
enum class ErrorKind {
    // registry / lifecycle
    SensorNotAvailable,
    AlreadyRegistered,
    InvalidConfig,
    UnknownHandle,
    WrongState,
    TypeMismatch,
    Reentrancy,
    ClockRegression,

    // drivers / traces
    SchemaMismatch,
    CorruptTrace,
    InvalidSeries,

    // beacon codecs and estimation
    BadLength,
    BadCompanyId,
    BadBeaconType,
    UnknownFrameType,
    UrlTooLong,
    BadUrlEncoding,
    InvalidExponent,

    // serialization / profiles
    ParseError,
    UnknownMode,
    InvariantViolation,
    UnknownProfile,
};

std::string_view errorKindName(ErrorKind kind);

class SensingError : public std::runtime_error {
public:
    SensingError(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(errorKindName(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    std::string_view kindName() const { return errorKindName(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw SensingError(kind, message);
}

} // namespace sensekit
