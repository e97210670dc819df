#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustcf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A dataset or manifest line could not be parsed.
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A rating fell outside the configured rating scale.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Duplicates, self-trust, stale trust stores, dataset-count drift.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// Mean requested for a user without ratings.
class UndefinedMeanError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read, written or renamed.
class IoError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration (out-of-range numeric field, unknown method, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace trustcf
