#pragma once

#include <stdexcept>
#include <string>

namespace fhidep {

// Invalid or out-of-range user input (bad parameter value, malformed request).
struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Potential denominator within tolerance of zero.
struct singularity_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A square root that must be real has a negative argument
// (C - A - L + 1/4 < 0, or A + M > 0).
struct realness_violation : std::domain_error {
    using std::domain_error::domain_error;
};

// No branch of the reduction satisfies the selection rules.
struct branch_selection_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The reduction admits no real k roots (no closed form).
struct no_closed_form_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative numerics failed to converge; message carries diagnostics.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed registry/config text.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable or unwritable file.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fhidep
