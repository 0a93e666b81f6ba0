#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace nhsym {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

// Error taxonomy. The CLI maps these onto distinct exit codes, so library
// code should throw the most specific type that applies.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A model (or a requested check) violates a mathematical hypothesis, e.g.
// the sector condition fails and the h-based quantities are undefined.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: quadrature did not converge, non-finite coefficient
// evaluation, evaluation outside a tabulated domain, and the like.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Norm { Max, Euclidean };

inline double norm_of(const Vector& v, Norm n) {
    return n == Norm::Max ? v.lpNorm<Eigen::Infinity>() : v.norm();
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace nhsym
