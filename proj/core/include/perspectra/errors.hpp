#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perspectra {

// Exception hierarchy. The CLI maps these onto its exit codes
// (ParseError -> 1, PreconditionError -> 2, CapExceeded -> 3).

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation's precondition does not hold (non-summand input,
/// non-isomorphic pair, dimension mismatch, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An exhaustive enumeration would exceed its configured cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, long long cap)
        : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
    long long cap() const noexcept { return cap_; }

private:
    long long cap_;
};

/// Integer arithmetic left the machine-word range.
class OverflowError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace perspectra
