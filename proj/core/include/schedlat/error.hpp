#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schedlat {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A workload or load list carried no tasks.
class NoWorkError : public Error {
public:
    using Error::Error;
};

/// Invalid numeric parameter (distribution bounds, bundle size, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Lookup by name failed. The message lists the valid options.
class UnknownNameError : public Error {
public:
    using Error::Error;
};

/// The power-law fit has too few usable points or a single distinct n.
class FitInfeasibleError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid input file content. line() is 1-based, 0 if not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what)
        , line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace schedlat
