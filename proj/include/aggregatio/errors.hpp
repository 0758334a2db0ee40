#pragma once

#include <stdexcept>
#include <string>

namespace aggregatio {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A constructor or operation received an argument outside its domain.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Conditioning was requested on an event of probability zero.
class ZeroProbabilityEvent : public Error {
public:
    using Error::Error;
};

/// Two measures that must share an outcome list do not.
class MismatchedOutcomeSpaces : public Error {
public:
    using Error::Error;
};

/// A candidate belief puts mass where the dominating measure has none.
class NotAbsolutelyContinuous : public Error {
public:
    using Error::Error;
};

/// The tail bracket is degenerate for the requested (n, p, alpha).
class InvalidBracket : public Error {
public:
    using Error::Error;
};

/// An exhaustive enumeration was requested beyond its size cap.
class TooLarge : public Error {
public:
    using Error::Error;
};

/// The discrete search cap cannot certify an interior maximum.
class KMaxTooSmall : public Error {
public:
    using Error::Error;
};

/// The closed-form eigensystem failed to reproduce the transition matrix.
class ReconstructionFailure : public Error {
public:
    using Error::Error;
};

}  // namespace aggregatio
