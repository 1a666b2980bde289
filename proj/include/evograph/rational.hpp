// SPDX-License-Identifier: Apache-2.0
// Exact scalars and dense matrices.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "evograph/error.hpp"

namespace evograph {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p", "-p" and "p/q".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Exact d-th root of q when one exists in the rationals.
bool rational_root(const Rational& q, unsigned d, Rational& root);

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<Rational>;

// Fraction-free elimination; the input must be square.
BigInt bareiss_determinant(Matrix<BigInt> m);
Rational determinant(const ExactMatrix& m);
std::size_t rank(ExactMatrix m);

// Division-free determinant over any commutative ring (Berkowitz).
template <class R>
R berkowitz_determinant(const Matrix<R>& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    if (n == 0) return R(1);
    // c holds the characteristic polynomial coefficients of the leading r x r block.
    std::vector<R> c{R(1), R(0) - a(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // Toeplitz column: 1, -a_rr, -R S, -R A S, ...
        std::vector<R> col(r + 2, R(0));
        col[0] = R(1);
        col[1] = R(0) - a(r, r);
        std::vector<R> s(r);
        for (std::size_t i = 0; i < r; ++i) s[i] = a(i, r);
        for (std::size_t k = 2; k < r + 2; ++k) {
            R acc(0);
            for (std::size_t j = 0; j < r; ++j) acc += a(r, j) * s[j];
            col[k] = R(0) - acc;
            std::vector<R> next(r, R(0));
            for (std::size_t i = 0; i < r; ++i) {
                R v(0);
                for (std::size_t j = 0; j < r; ++j) v += a(i, j) * s[j];
                next[i] = v;
            }
            s = std::move(next);
        }
        std::vector<R> nc(r + 2, R(0));
        for (std::size_t i = 0; i < r + 2; ++i) {
            R v(0);
            for (std::size_t j = 0; j <= i && j < c.size(); ++j) v += col[i - j] * c[j];
            nc[i] = v;
        }
        c = std::move(nc);
    }
    R det = c[n];
    if (n % 2 == 1) det = R(0) - det;
    return det;
}

}  // namespace evograph
