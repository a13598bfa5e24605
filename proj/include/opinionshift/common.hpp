#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace opinionshift {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using NodeId = int;

// Raised on malformed input, broken preconditions, or invalid configuration.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a computation fails numerically (singular system, divergence,
// iteration cap). The CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Default absolute-plus-relative comparison tolerance.
inline constexpr double kTol = 1e-8;

// Relative singular-value cutoff for pseudoinverse rank decisions.
inline constexpr double kRankCutoff = 1e-12;

// Pivot / denominator magnitude below which rank-1 update formulas bail out.
inline constexpr double kPivotTol = 1e-12;

inline bool approx_equal(double a, double b, double tol = kTol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace opinionshift
