#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonSquareError : public Error {
public:
    using Error::Error;
};

class DegenerateOrderError : public Error {
public:
    explicit DegenerateOrderError(std::size_t n)
        : Error("matrix order " + std::to_string(n) + " is below the supported minimum of 3"),
          n_(n) {}
    std::size_t order() const noexcept { return n_; }

private:
    std::size_t n_;
};

class NonPositiveEntryError : public Error {
public:
    NonPositiveEntryError(std::size_t i, std::size_t j)
        : Error("entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                ") is not strictly positive"),
          row_(i), col_(j) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_, col_;
};

class ReciprocityViolationError : public Error {
public:
    ReciprocityViolationError(std::size_t i, std::size_t j, double residual)
        : Error("reciprocity violation: entries (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                ") and their mirror are not reciprocal: |a_ij * a_ji - 1| = " +
                std::to_string(residual)),
          row_(i), col_(j), residual_(residual) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t row_, col_;
    double residual_;
};

class NonPositiveWeightError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class EmptyListError : public Error {
public:
    using Error::Error;
};

class NoConvergenceError : public Error {
public:
    NoConvergenceError(int iterations, double residual)
        : Error("power iteration did not converge after " + std::to_string(iterations) +
                " iterations (residual " + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}
    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

class MissingRiError : public Error {
public:
    explicit MissingRiError(std::size_t n)
        : Error("random index table has no entry for n = " + std::to_string(n)), n_(n) {}
    std::size_t order() const noexcept { return n_; }

private:
    std::size_t n_;
};

class EmptyBinError : public Error {
public:
    using Error::Error;
};

/// Malformed text input (matrix files, config files, RI tables, CSV).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace pcm
