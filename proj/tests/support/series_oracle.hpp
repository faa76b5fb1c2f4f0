#pragma once

// cos(A/2)^{-1} exp(-i Q A) by truncated power series, for the layer-matrix check.

#include <complex>

#include <Eigen/Dense>

namespace oracle {

inline Eigen::MatrixXcd series_cos_half(const Eigen::MatrixXcd& a, int terms = 40)
{
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(a.rows(), a.cols()), term = sum;
    const Eigen::MatrixXcd h2 = 0.25 * a * a;
    for (int k = 1; k < terms; ++k) {
        term = (-term * h2 / double((2 * k - 1) * (2 * k))).eval();
        sum += term;
    }
    return sum;
}

inline Eigen::MatrixXcd series_exp(const Eigen::MatrixXcd& a, int terms = 40)
{
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(a.rows(), a.cols()), term = sum;
    for (int k = 1; k < terms; ++k) {
        term = (term * a / double(k)).eval();
        sum += term;
    }
    return sum;
}

// A = (alpha.nu) f V
inline Eigen::MatrixXcd layer_series(const Eigen::MatrixXcd& a, double Q, int terms = 40)
{
    return series_cos_half(a, terms).inverse() * series_exp(std::complex<double>(0.0, -Q) * a, terms);
}

}  // namespace oracle
