#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input values that violate a type invariant (non-positive length, n_a <= n_i, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A formula evaluated outside its domain (f <= 0, log/acosh singularities).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Singular or degenerate nodal system.
class NetworkError : public Error {
public:
    NetworkError(const std::string& what, double frequency_hz)
        : Error(what + " at f = " + std::to_string(frequency_hz) + " Hz"), frequency_(frequency_hz)
    {
    }
    double frequency() const { return frequency_; }

private:
    double frequency_;
};

/// Z<->S conversion against an ill-conditioned matrix.
class ConversionError : public Error {
public:
    ConversionError(const std::string& what, double condition_number)
        : Error(what + " (condition number " + std::to_string(condition_number) + ")"),
          condition_(condition_number)
    {
    }
    double condition_number() const { return condition_; }

private:
    double condition_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Spur estimate requested outside the narrowband FM regime.
class ModelValidityError : public Error {
public:
    using Error::Error;
};

} // namespace tsv
