#ifndef DECLAB_ERRORS_HPP
#define DECLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace declab {

/// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- construction / precondition failures ---------------------------------

class ValidationError : public Error {
public:
    using Error::Error;
};

class NonHermitianError : public Error {
public:
    using Error::Error;
};

class DimensionTooLargeError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class CutoffTooSmallError : public Error {
public:
    using Error::Error;
};

class SupportMismatchError : public Error {
public:
    using Error::Error;
};

// --- field / kinetic-solver errors -----------------------------------------

class GeometryMismatchError : public Error {
public:
    using Error::Error;
};

class NegativeDensityError : public Error {
public:
    using Error::Error;
};

class NeutralityViolationError : public Error {
public:
    using Error::Error;
};

class NonNeutralSourceError : public Error {
public:
    using Error::Error;
};

class SingularTimeError : public Error {
public:
    using Error::Error;
};

class VelocityOverflowError : public Error {
public:
    using Error::Error;
};

class CflViolationError : public Error {
public:
    using Error::Error;
};

// --- fitting / harness errors ----------------------------------------------

class FitFailedError : public Error {
public:
    using Error::Error;
};

class InsufficientPointsError : public Error {
public:
    using Error::Error;
};

class NonPositiveInputError : public Error {
public:
    using Error::Error;
};

class NonFiniteValueError : public Error {
public:
    using Error::Error;
};

class MultipleSweepAxesError : public Error {
public:
    using Error::Error;
};

class UnknownExperimentError : public Error {
public:
    using Error::Error;
};

class MissingKeyError : public Error {
public:
    explicit MissingKeyError(const std::string& key)
        : Error("missing required key: " + key), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

} // namespace declab

#endif
