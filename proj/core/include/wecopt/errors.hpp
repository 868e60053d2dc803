#pragma once

#include <stdexcept>
#include <string>

namespace wecopt {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Two distinct buoys share a position.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

// Singular or ill-conditioned frequency-domain system.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double omega, double beta)
        : Error(what), omega_(omega), beta_(beta) {}

    double omega() const noexcept { return omega_; }
    double beta() const noexcept { return beta_; }

private:
    double omega_;
    double beta_;
};

class BudgetExhaustedError : public Error {
public:
    using Error::Error;
};

// A position lies outside the farm square.
class BoundsError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}

    // 1-based line number, 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// The sampling sector admits no usable point inside the farm.
class PlacementInfeasibleError : public Error {
public:
    using Error::Error;
};

// Surrogate table without any variation; no sector can be extracted.
class DegenerateLandscapeError : public Error {
public:
    using Error::Error;
};

}  // namespace wecopt
