#ifndef TOPOTONE_ERROR_HPP
#define TOPOTONE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace topotone {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed file contents (bad WAV header, truncated chunk, ...).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that this library does not handle (compressed audio,
/// sample rate too low for the requested analysis, ...).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Text input that failed to parse; message carries the line number.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input is valid but too short/small for the requested operation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Caller passed arguments violating an operation's preconditions.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Internal structural invariant violated (e.g. a filtration that is not
/// face-closed).
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure; message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

/// A training window failed the pipeline; message names the window.
class TrainingError : public Error {
public:
    using Error::Error;
};

} // namespace topotone

#endif
