#include "sensekit/errors.hpp"

namespace sensekit {

std::string_view errorKindName(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SensorNotAvailable: return "SensorNotAvailable";
    case ErrorKind::AlreadyRegistered: return "AlreadyRegistered";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::UnknownHandle: return "UnknownHandle";
    case ErrorKind::WrongState: return "WrongState";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::Reentrancy: return "Reentrancy";
    case ErrorKind::ClockRegression: return "ClockRegression";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::CorruptTrace: return "CorruptTrace";
    case ErrorKind::InvalidSeries: return "InvalidSeries";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::BadCompanyId: return "BadCompanyId";
    case ErrorKind::BadBeaconType: return "BadBeaconType";
    case ErrorKind::UnknownFrameType: return "UnknownFrameType";
    case ErrorKind::UrlTooLong: return "UrlTooLong";
    case ErrorKind::BadUrlEncoding: return "BadUrlEncoding";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownMode: return "UnknownMode";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::UnknownProfile: return "UnknownProfile";
    }
    return "UnknownError";
}

} // namespace sensekit
