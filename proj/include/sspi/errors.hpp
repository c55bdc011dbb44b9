#pragma once

#include <stdexcept>
#include <string>

namespace sspi {

// Thrown when an enumeration would exceed its configured size cap. There is
// deliberately no sampling fallback: callers must raise the cap explicitly.
class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an input file does not match the documented schema. The message
// names the offending field or position.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sspi
