#pragma once

#include <stdexcept>
#include <string>

namespace mea {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed text/GXL input. `line` is 1-based, 0 when unknown.
struct ParseError : Error {
    int line = 0;
    explicit ParseError(const std::string& what, int line_number = 0)
        : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + what : what),
          line(line_number) {}
};

// Corrupt, truncated, or incompatible archive bytes.
struct ArchiveError : Error {
    using Error::Error;
};

}  // namespace mea
