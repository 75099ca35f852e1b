#pragma once

#include <stdexcept>
#include <string>

namespace pint {

/// Error type for every contract violation and numeric failure in the
/// library. The message carries the diagnostic; there are no error codes.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pint
