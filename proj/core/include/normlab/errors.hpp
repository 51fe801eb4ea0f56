#pragma once

#include <stdexcept>
#include <string>

namespace normlab {

/// Invalid parameters, malformed specs, out-of-range exponents.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numeric procedure failed to converge; the message carries solver state.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs for which the requested certificate is meaningless (e.g. x = y = 0).
class degenerate_input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace normlab
