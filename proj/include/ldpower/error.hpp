#pragma once

#include <stdexcept>
#include <string>

namespace ldpower {

// Bad arguments or violated preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well-formed but carries no information for a fit (constant samples, one class).
class DegenerateInput : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Exhaustive enumeration refused because the game exceeds the configured cap.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dataset parse or integrity failure. The message names the file and row.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ldpower
