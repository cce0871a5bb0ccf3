#ifndef EINROL_UNFOLDING_HPP
#define EINROL_UNFOLDING_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "einrol/dense_tensor.hpp"
#include "einrol/error.hpp"
#include "einrol/mode_shape.hpp"

namespace einrol
{

/// Dense complex matrix, row-major.
class DenseMatrix
{
public:
    DenseMatrix() : rows_(1), cols_(1), data_(1) {}

    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(checked_size(rows, cols))
    {
    }

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != checked_size(rows, cols))
        {
            throw Error(Errc::length_mismatch, "matrix entry count mismatch");
        }
    }

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t k = 0; k < n; ++k)
            m(k, k) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    Complex& operator()(std::size_t r, std::size_t c)
    {
        return data_[r * cols_ + c];
    }
    const Complex& operator()(std::size_t r, std::size_t c) const
    {
        return data_[r * cols_ + c];
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    static std::size_t checked_size(std::size_t rows, std::size_t cols)
    {
        if (rows < 1 || cols < 1)
            throw Error(Errc::invalid_argument, "matrix dimensions must be >= 1");
        if (rows > std::numeric_limits<std::size_t>::max() / cols)
            throw Error(Errc::invalid_argument, "matrix size overflows");
        return rows * cols;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
{
    if (a.cols() != b.rows())
    {
        throw Error(Errc::shape_mismatch,
                    "matrix product " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " by " +
                        std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
    }
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t p = 0; p < a.cols(); ++p)
        {
            const Complex aip = a(i, p);
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aip * b(p, j);
        }
    return c;
}

inline DenseMatrix conj_transpose(const DenseMatrix& a)
{
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = std::conj(a(i, j));
    return t;
}

inline double frobenius_norm(const DenseMatrix& a)
{
    double s = 0.0;
    for (const Complex& z : a.entries())
        s += std::norm(z);
    return std::sqrt(s);
}

//
// Matricization: row tuple -> row index, column tuple -> column index, both
// last-index-fastest. With the storage convention of DenseTensor this is a
// straight copy, and dematricize(matricize(A), shape) reproduces A bitwise.
//
inline DenseMatrix matricize(const DenseTensor& a)
{
    const auto e = a.entries();
    return DenseMatrix(a.rows(), a.cols(),
                       std::vector<Complex>(e.begin(), e.end()));
}

inline DenseTensor dematricize(const DenseMatrix& m, const ModeShape& shape)
{
    if (m.rows() != shape.row_count() || m.cols() != shape.col_count())
    {
        throw Error(Errc::shape_mismatch,
                    "matrix " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) +
                        " does not unfold shape " + shape.to_string());
    }
    const auto e = m.entries();
    return DenseTensor(shape, std::vector<Complex>(e.begin(), e.end()));
}

struct MatrixSvd
{
    DenseMatrix u;             // rows x rows, unitary
    std::vector<double> sigma; // min(rows, cols) values, nonincreasing
    DenseMatrix v;             // cols x cols, unitary
    int sweeps = 0;
};

struct JacobiOptions
{
    int max_sweeps = 30;
    // A column pair is considered orthogonal when
    // |<g_i, g_j>| <= tol * ||g_i|| * ||g_j||.
    double tol = 1e-14;
};

namespace detail
{

// Column-major working copy for the Jacobi sweeps.
using Columns = std::vector<std::vector<Complex>>;

inline Complex dot(const std::vector<Complex>& x, const std::vector<Complex>& y)
{
    Complex s;
    for (std::size_t k = 0; k < x.size(); ++k)
        s += std::conj(x[k]) * y[k];
    return s;
}

inline double norm2(const std::vector<Complex>& x)
{
    double s = 0.0;
    for (const Complex& z : x)
        s += std::norm(z);
    return s;
}

//
// Right-multiply columns (x, y) by diag(1, phase) * [[cs, sn], [-sn, cs]].
//
inline void rotate(std::vector<Complex>& x, std::vector<Complex>& y, double cs,
                   double sn, Complex phase)
{
    for (std::size_t k = 0; k < x.size(); ++k)
    {
        const Complex xk = x[k];
        const Complex yk = y[k] * phase;
        x[k] = cs * xk - sn * yk;
        y[k] = sn * xk + cs * yk;
    }
}

// Subtract the projection of v onto each column of basis (twice, for
// stability) and return the remaining norm.
inline double orthogonalize(std::vector<Complex>& v, const Columns& basis)
{
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis)
        {
            const Complex c = dot(q, v);
            for (std::size_t k = 0; k < v.size(); ++k)
                v[k] -= c * q[k];
        }
    return std::sqrt(norm2(v));
}

// Extend an orthonormal set to `n` columns of dimension `dim` using the
// coordinate vector with the largest residual at each step.
inline void complete_basis(Columns& basis, std::size_t dim, std::size_t n)
{
    while (basis.size() < n)
    {
        std::vector<Complex> best;
        double best_norm = -1.0;
        for (std::size_t k = 0; k < dim; ++k)
        {
            std::vector<Complex> e(dim);
            e[k] = 1.0;
            const double r = orthogonalize(e, basis);
            if (r > best_norm)
            {
                best_norm = r;
                best = std::move(e);
            }
        }
        for (auto& z : best)
            z /= best_norm;
        basis.push_back(std::move(best));
    }
}

inline DenseMatrix from_columns(const Columns& cols, std::size_t rows)
{
    DenseMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    return m;
}

// One-sided Jacobi on a matrix with rows >= cols.
inline MatrixSvd jacobi_svd_tall(const DenseMatrix& m, const JacobiOptions& opt)
{
    const std::size_t rows = m.rows();
    const std::size_t n = m.cols();

    Columns g(n, std::vector<Complex>(rows));
    Columns v(n, std::vector<Complex>(n));
    for (std::size_t j = 0; j < n; ++j)
    {
        for (std::size_t i = 0; i < rows; ++i)
            g[j][i] = m(i, j);
        v[j][j] = 1.0;
    }

    int sweep = 0;
    bool rotated = true;
    while (rotated)
    {
        if (sweep == opt.max_sweeps)
        {
            throw Error(Errc::non_convergence,
                        "Jacobi SVD did not converge after " +
                            std::to_string(sweep) + " sweeps");
        }
        ++sweep;
        rotated = false;
        for (std::size_t j = 1; j < n; ++j)
        {
            for (std::size_t i = 0; i < j; ++i)
            {
                const double a = norm2(g[i]);
                const double b = norm2(g[j]);
                const Complex c = dot(g[i], g[j]);
                const double abs_c = std::abs(c);
                if (a == 0.0 || b == 0.0 ||
                    abs_c <= opt.tol * std::sqrt(a) * std::sqrt(b))
                {
                    continue;
                }
                rotated = true;
                // Phase makes the off-diagonal entry real, then a real
                // symmetric Jacobi rotation annihilates it.
                const Complex phase = std::conj(c) / abs_c;
                const double zeta = (b - a) / (2.0 * abs_c);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::hypot(1.0, zeta));
                const double cs = 1.0 / std::hypot(1.0, t);
                const double sn = cs * t;
                rotate(g[i], g[j], cs, sn, phase);
                rotate(v[i], v[j], cs, sn, phase);
            }
        }
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j)
        sigma[j] = std::sqrt(norm2(g[j]));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t p, std::size_t q) {
                         return sigma[p] > sigma[q];
                     });

    MatrixSvd out;
    out.sweeps = sweep;
    out.sigma.resize(n);
    Columns u_cols;
    Columns v_sorted;
    const double sigma_max = n > 0 ? sigma[order[0]] : 0.0;
    // Below this the normalized column carries no usable direction.
    const double floor = sigma_max * static_cast<double>(rows) *
                         std::numeric_limits<double>::epsilon();
    bool null_reached = false;
    for (std::size_t k = 0; k < n; ++k)
    {
        const std::size_t j = order[k];
        out.sigma[k] = sigma[j];
        v_sorted.push_back(v[j]);
        if (null_reached || !(sigma[j] > floor && sigma[j] > 0.0))
        {
            // Null direction: left to basis completion.
            null_reached = true;
            continue;
        }
        std::vector<Complex> u = g[j];
        for (auto& z : u)
            z /= sigma[j];
        const double r = orthogonalize(u, u_cols);
        if (r <= 0.5)
        {
            null_reached = true;
            continue;
        }
        for (auto& z : u)
            z /= r;
        u_cols.push_back(std::move(u));
    }
    complete_basis(u_cols, rows, rows);
    out.u = from_columns(u_cols, rows);
    out.v = from_columns(v_sorted, n);
    return out;
}

} // namespace detail

//
// Full SVD M = U diag(sigma) V^* by one-sided Jacobi on the columns of M (or of
// M^* when M is wide). U and V are square unitary; sigma has min(rows, cols)
// nonincreasing entries. Throws Errc::non_convergence past the sweep cap.
//
inline MatrixSvd matrix_svd(const DenseMatrix& m, const JacobiOptions& opt = {})
{
    if (m.rows() >= m.cols())
        return detail::jacobi_svd_tall(m, opt);
    MatrixSvd t = detail::jacobi_svd_tall(conj_transpose(m), opt);
    std::swap(t.u, t.v);
    return t;
}

} // namespace einrol

#endif // EINROL_UNFOLDING_HPP
