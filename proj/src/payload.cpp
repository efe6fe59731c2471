#include "sensekit/payload.hpp"

namespace sensekit {

std::string_view activityClassName(ActivityClass activity) {
    switch (activity) {
    case ActivityClass::Stationary: return "Stationary";
    case ActivityClass::Walking: return "Walking";
    case ActivityClass::Running: return "Running";
    case ActivityClass::Driving: return "Driving";
    case ActivityClass::Cycling: return "Cycling";
    }
    return "?";
}

std::optional<ActivityClass> activityClassFromName(std::string_view name) {
    if (name == "Stationary") return ActivityClass::Stationary;
    if (name == "Walking") return ActivityClass::Walking;
    if (name == "Running") return ActivityClass::Running;
    if (name == "Driving") return ActivityClass::Driving;
    if (name == "Cycling") return ActivityClass::Cycling;
    return std::nullopt;
}

std::string_view activityConfidenceName(ActivityConfidence confidence) {
    switch (confidence) {
    case ActivityConfidence::Low: return "Low";
    case ActivityConfidence::Medium: return "Medium";
    case ActivityConfidence::High: return "High";
    }
    return "?";
}

std::optional<ActivityConfidence> activityConfidenceFromName(std::string_view name) {
    if (name == "Low") return ActivityConfidence::Low;
    if (name == "Medium") return ActivityConfidence::Medium;
    if (name == "High") return ActivityConfidence::High;
    return std::nullopt;
}

std::string_view batteryStateName(BatteryState state) {
    switch (state) {
    case BatteryState::Unplugged: return "Unplugged";
    case BatteryState::Charging: return "Charging";
    case BatteryState::Full: return "Full";
    }
    return "?";
}

std::optional<BatteryState> batteryStateFromName(std::string_view name) {
    if (name == "Unplugged") return BatteryState::Unplugged;
    if (name == "Charging") return BatteryState::Charging;
    if (name == "Full") return BatteryState::Full;
    return std::nullopt;
}

std::string_view screenStateName(ScreenState state) {
    switch (state) {
    case ScreenState::On: return "On";
    case ScreenState::Off: return "Off";
    }
    return "?";
}

std::optional<ScreenState> screenStateFromName(std::string_view name) {
    if (name == "On") return ScreenState::On;
    if (name == "Off") return ScreenState::Off;
    return std::nullopt;
}

} // namespace sensekit
