#pragma once

#include <stdexcept>
#include <string>

namespace mscr {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid field specification (non-prime order, reducible polynomial,
// non-generator omega, ...).
struct FieldError : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

// Construction-time validation found a singular recovery or coordination
// system; the caller must pick a larger field or a different generator.
struct FieldUnsuitable : Error {
    using Error::Error;
};

struct SingularInterference : Error {
    using Error::Error;
};

struct NoAlignedCoordination : Error {
    using Error::Error;
};

struct SingularRecovery : Error {
    using Error::Error;
};

struct SearchSpaceTooLarge : Error {
    using Error::Error;
};

}  // namespace mscr
