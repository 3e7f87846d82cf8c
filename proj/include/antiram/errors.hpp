#pragma once

#include <stdexcept>

namespace antiram {

// Malformed input text (trn/clr files).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A hard cap of the toolkit was exceeded (enumeration order, canonical-form order).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace antiram
