#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace icn {

/// Argument outside an operation's domain: out-of-range element, shape
/// mismatch, malformed instance.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public DomainError {
public:
    DivisionByZero() : DomainError("division by zero in finite field") {}
};

class SingularMatrix : public std::runtime_error {
public:
    explicit SingularMatrix(std::size_t rank)
        : std::runtime_error("matrix is singular (rank " + std::to_string(rank) + ")"), rank_(rank) {}
    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

/// Exhaustive work exceeded its configured budget. Never a nonexistence proof.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t visited)
        : std::runtime_error(what + " (visited " + std::to_string(visited) + ")"), visited_(visited) {}
    std::uint64_t visited() const noexcept { return visited_; }

private:
    std::uint64_t visited_;
};

/// A transport's input violated the precondition of the construction
/// (e.g. an index code that is not perfect).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A code failed one of the constraints the equivalence proofs derive.
class InvalidCode : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A witness handed to a report did not verify.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file does not parse or does not match its schema.
class MalformedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace icn
