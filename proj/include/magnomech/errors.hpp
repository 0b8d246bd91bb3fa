#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magnomech {

/// Invalid input to a model operation (violated precondition or invariant).
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A denominator of the steady-state elimination vanishes (e.g. i*Delta_a2 + kappa_2 = 0).
class SingularConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The magnon-population cubic has no real nonnegative root.
class EmptySolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The probe response is unbounded at the requested frequency.
///
/// Raised by the linear-response solvers when the closed-form denominator
/// cancels or the 4x4 system is numerically singular. The diagnostics locate
/// the nearest eigenvalue mu of the drift matrix: the response has a pole on
/// the real probe axis at delta = -Im(mu) whenever Re(mu) = 0.
class PoleError : public std::runtime_error {
public:
    PoleError(const std::string& what, double delta, double condition,
              double nearest_pole_delta, double nearest_pole_growth)
        : std::runtime_error(what),
          delta_(delta),
          condition_(condition),
          nearest_pole_delta_(nearest_pole_delta),
          nearest_pole_growth_(nearest_pole_growth) {}

    double delta() const noexcept { return delta_; }
    double condition() const noexcept { return condition_; }
    double nearest_pole_delta() const noexcept { return nearest_pole_delta_; }
    double nearest_pole_growth() const noexcept { return nearest_pole_growth_; }

private:
    double delta_;
    double condition_;
    double nearest_pole_delta_;
    double nearest_pole_growth_;
};

/// Configuration document could not be parsed; line is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::string key)
        : std::runtime_error(format(message, line, key)), line_(line), key_(std::move(key)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    static std::string format(const std::string& message, std::size_t line, const std::string& key) {
        std::string out = "config";
        if (line > 0) out += ":" + std::to_string(line);
        if (!key.empty()) out += ": key '" + key + "'";
        return out + ": " + message;
    }

    std::size_t line_;
    std::string key_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace magnomech
