#pragma once

#include <stdexcept>
#include <string>

namespace phi4 {

// Argument outside the mathematical domain of an operation (branch range,
// holomorphicity region, cut hit). The message names the violated boundary.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// An iteration or adaptive scheme did not reach its tolerance within its
// budget. The message carries the last achieved error.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace phi4
