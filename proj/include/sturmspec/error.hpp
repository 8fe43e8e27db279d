#pragma once

#include <stdexcept>
#include <string>

namespace sturmspec {

/// Broad failure classes. The CLI maps them onto exit codes.
enum class ErrorKind {
    invalid_input,      // bad word, bad coefficient, out-of-range knob
    window,             // requested range/length does not fit the data
    depth,              // continued fraction or tower not deep enough
    numeric,            // overflow, non-finite values, precision limits
    resolution,         // band search failed to resolve the expected structure
    boundary_ambiguity, // orbit point too close to an interval endpoint
    certificate,        // stability check called without its preconditions
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, std::string parameter, const std::string& what)
        : std::runtime_error(module + ": " + what + (parameter.empty() ? "" : " [" + parameter + "]")),
          kind_(kind), module_(std::move(module)), parameter_(std::move(parameter)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }
    const std::string& parameter() const noexcept { return parameter_; }

private:
    ErrorKind kind_;
    std::string module_;
    std::string parameter_;
};

/// Thrown when an orbit point lands within the guard distance of 0 or 1-beta.
class BoundaryAmbiguity : public Error {
public:
    BoundaryAmbiguity(long long index, const std::string& what)
        : Error(ErrorKind::boundary_ambiguity, "circlemap", "n=" + std::to_string(index), what),
          index_(index) {}
    long long index() const noexcept { return index_; }

private:
    long long index_;
};

inline int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::numeric:
    case ErrorKind::resolution:
        return 3;
    case ErrorKind::boundary_ambiguity:
        return 4;
    case ErrorKind::io:
        return 1;
    default:
        return 2;
    }
}

} // namespace sturmspec
