#pragma once

#include <stdexcept>
#include <string>

namespace ghz {

// A model broke a structural invariant (weights, response range, bad spec string).
struct MalformedModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A model or operation was evaluated at settings it does not define.
struct UnsupportedSettings : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation's precondition does not hold for the given inputs.
struct PreconditionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric parameter is outside its admissible range.
struct InvalidParam : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ghz
