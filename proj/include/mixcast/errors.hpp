#pragma once

#include <stdexcept>
#include <string>

namespace mixcast {

// Requested object exceeds the configured qubit ceiling.
struct SizeLimitError : std::length_error {
    explicit SizeLimitError(const std::string& what) : std::length_error(what) {}
};

// The scalar relation cannot determine a shrinking factor (bloch_r ~ 0).
struct DegenerateInputError : std::domain_error {
    explicit DegenerateInputError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace mixcast
