#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "enantio/errors.hpp"

namespace enantio::linalg {

template<std::size_t N>
using Vector = std::array<std::complex<double>, N>;

template<std::size_t N>
using Matrix = std::array<Vector<N>, N>;

template<std::size_t N>
Vector<N> multiply(const Matrix<N>& m, const Vector<N>& v)
{
    Vector<N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        std::complex<double> acc = 0;
        for (std::size_t j = 0; j < N; ++j)
            acc += m[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

template<std::size_t N>
double norm_inf(const Vector<N>& v)
{
    double r = 0;
    for (const auto& x : v)
        r = std::max(r, std::abs(x));
    return r;
}

template<std::size_t N>
double norm2(const Vector<N>& v)
{
    double r = 0;
    for (const auto& x : v)
        r += std::norm(x);
    return std::sqrt(r);
}

template<std::size_t N>
double norm1(const Matrix<N>& m)
{
    double r = 0;
    for (std::size_t j = 0; j < N; ++j) {
        double col = 0;
        for (std::size_t i = 0; i < N; ++i)
            col += std::abs(m[i][j]);
        r = std::max(r, col);
    }
    return r;
}

template<std::size_t N>
double norm_inf(const Matrix<N>& m)
{
    double r = 0;
    for (std::size_t i = 0; i < N; ++i) {
        double row = 0;
        for (std::size_t j = 0; j < N; ++j)
            row += std::abs(m[i][j]);
        r = std::max(r, row);
    }
    return r;
}

/*!
 * LU factorization with partial (row) pivoting, PA = LU.
 *
 * L is unit lower triangular and stored below the diagonal of `lu`. A zero
 * pivot throws SingularMatrixError with an infinite condition estimate.
 */
template<std::size_t N>
class LuDecomposition
{
  public:
    explicit LuDecomposition(const Matrix<N>& m) : lu_(m), norm1_(norm1(m))
    {
        for (std::size_t i = 0; i < N; ++i)
            perm_[i] = i;

        for (std::size_t k = 0; k < N; ++k) {
            std::size_t piv = k;
            double best = std::abs(lu_[k][k]);
            for (std::size_t i = k + 1; i < N; ++i) {
                if (std::abs(lu_[i][k]) > best) {
                    best = std::abs(lu_[i][k]);
                    piv = i;
                }
            }
            if (best == 0)
                throw SingularMatrixError("matrix is exactly singular",
                                          std::numeric_limits<double>::infinity());
            if (piv != k) {
                std::swap(lu_[piv], lu_[k]);
                std::swap(perm_[piv], perm_[k]);
            }
            for (std::size_t i = k + 1; i < N; ++i) {
                const auto l = lu_[i][k] / lu_[k][k];
                lu_[i][k] = l;
                for (std::size_t j = k + 1; j < N; ++j)
                    lu_[i][j] -= l * lu_[k][j];
            }
        }
    }

    Vector<N> solve(const Vector<N>& b) const
    {
        Vector<N> x{};
        for (std::size_t i = 0; i < N; ++i) {
            auto acc = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j)
                acc -= lu_[i][j] * x[j];
            x[i] = acc;
        }
        for (std::size_t ii = N; ii-- > 0;) {
            auto acc = x[ii];
            for (std::size_t j = ii + 1; j < N; ++j)
                acc -= lu_[ii][j] * x[j];
            x[ii] = acc / lu_[ii][ii];
        }
        return x;
    }

    // kappa_1 = |A|_1 |A^-1|_1, with the inverse formed column by column.
    double condition() const
    {
        double inv_norm = 0;
        for (std::size_t j = 0; j < N; ++j) {
            Vector<N> e{};
            e[j] = 1;
            const auto col = solve(e);
            double s = 0;
            for (const auto& x : col)
                s += std::abs(x);
            inv_norm = std::max(inv_norm, s);
        }
        return norm1_ * inv_norm;
    }

  private:
    Matrix<N> lu_;
    std::array<std::size_t, N> perm_{};
    double norm1_;
};

}  // namespace enantio::linalg
