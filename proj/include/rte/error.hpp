#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rte {

/// Machine-readable error categories; the CLI maps these to exit codes.
enum class ErrorCode {
    InvalidArgument = 2,
    InvalidMesh = 3,
    Stability = 4,
    NonConvergence = 5,
    Cycle = 6,
    AssumptionViolation = 7,
    Io = 8,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

class InvalidMesh : public Error {
public:
    explicit InvalidMesh(const std::string& what) : Error(ErrorCode::InvalidMesh, what) {}
};

/// Singular or ill-conditioned element system.
class StabilityError : public Error {
public:
    StabilityError(const std::string& what, int element, int direction)
        : Error(ErrorCode::Stability, what), element_(element), direction_(direction) {}
    int element() const noexcept { return element_; }
    int direction() const noexcept { return direction_; }

private:
    int element_;
    int direction_;
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, std::vector<double> history)
        : Error(ErrorCode::NonConvergence, what), history_(std::move(history)) {}
    const std::vector<double>& residual_history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

/// Sweep dependency graph is not acyclic.
class CycleError : public Error {
public:
    CycleError(const std::string& what, std::vector<int> elements)
        : Error(ErrorCode::Cycle, what), elements_(std::move(elements)) {}
    const std::vector<int>& elements() const noexcept { return elements_; }

private:
    std::vector<int> elements_;
};

class AssumptionViolation : public Error {
public:
    explicit AssumptionViolation(const std::string& what)
        : Error(ErrorCode::AssumptionViolation, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace rte
