#pragma once

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace sensekit::testsupport {

struct CommandResult {
    int exitCode = -1;
    std::string output; // stdout and stderr combined
};

/// Runs a shell command, capturing combined output and the exit code.
inline CommandResult runCommand(const std::string& command) {
    std::string wrapped = command + " 2>&1";
    FILE* pipe = popen(wrapped.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("popen failed for: " + command);

    CommandResult result;
    std::array<char, 4096> buffer;
    size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);

    int status = pclose(pipe);
    result.exitCode = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string cliPath() {
    return SENSEKIT_CLI_PATH;
}

/// First line of a command's output, without the newline.
inline std::string firstLine(const std::string& text) {
    auto pos = text.find('\n');
    return pos == std::string::npos ? text : text.substr(0, pos);
}

} // namespace sensekit::testsupport
