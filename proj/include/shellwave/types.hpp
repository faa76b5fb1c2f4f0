#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace shellwave {

using real = double;
using cplx = std::complex<double>;

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;

inline constexpr real pi = 3.141592653589793238462643383279502884;
inline constexpr real euler_gamma = 0.577215664901532860606512090082402431;
inline constexpr cplx I{0.0, 1.0};

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a discrete problem is numerically singular or a solver fails to converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace shellwave
