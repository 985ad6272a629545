// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace mtdd {

/// Process exit status used by the command-line tool.
enum class ExitCode : int { ok = 0, usage = 2, data = 3, numerical = 4 };

/// Argument outside an operation's contract (bad flag, invalid parameters).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data that cannot be used: malformed CSV, too few points, missing columns.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(line ? what + " (line " + std::to_string(*line) + ")" : what),
          line_(line) {}

    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> line_;
};

/// Iterative method exhausted its budget before reaching tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Option price outside the no-arbitrage bounds, so no implied volatility exists.
class price_out_of_bounds : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Zero total variance: the lognormal law collapses to a point mass.
class degenerate_law : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace mtdd
