#ifndef EINROL_TENSOR_OPS_HPP
#define EINROL_TENSOR_OPS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "einrol/dense_tensor.hpp"
#include "einrol/error.hpp"
#include "einrol/mode_shape.hpp"
#include "einrol/numeric_policy.hpp"

namespace einrol
{

//
// Unit tensor with row_dims = col_dims = dims, entry prod_k delta(i_k, j_k).
//
inline DenseTensor identity(const Dims& dims)
{
    if (dims.empty())
    {
        throw Error(Errc::invalid_argument, "identity needs at least one mode");
    }
    ModeShape shape(dims, dims);
    std::vector<Complex> e(shape.size());
    const std::size_t n = shape.row_count();
    for (std::size_t k = 0; k < n; ++k)
        e[k * n + k] = 1.0;
    return DenseTensor(std::move(shape), std::move(e));
}

//
// Diagonal tensor: values[k] at flattened position (k, k), zero elsewhere.
//
inline DenseTensor diagonal_from(const Dims& row_dims, const Dims& col_dims,
                                 std::span<const Complex> values)
{
    ModeShape shape(row_dims, col_dims);
    const std::size_t n = std::min(shape.row_count(), shape.col_count());
    if (values.size() != n)
    {
        throw Error(Errc::length_mismatch,
                    "diagonal of shape " + shape.to_string() + " needs " +
                        std::to_string(n) + " values, got " +
                        std::to_string(values.size()));
    }
    std::vector<Complex> e(shape.size());
    for (std::size_t k = 0; k < n; ++k)
        e[k * shape.col_count() + k] = values[k];
    return DenseTensor(std::move(shape), std::move(e));
}

inline DenseTensor diagonal_from(const Dims& row_dims, const Dims& col_dims,
                                 std::initializer_list<Complex> values)
{
    return diagonal_from(row_dims, col_dims,
                         std::span<const Complex>(values.begin(),
                                                  values.size()));
}

//
// Einstein product: contracts the column modes of `a` against the row modes of
// `b`. In the flattened layout this is exactly a matrix product.
//
inline DenseTensor einstein_product(const DenseTensor& a, const DenseTensor& b)
{
    if (a.shape().col_dims() != b.shape().row_dims())
    {
        throw Error(Errc::shape_mismatch,
                    "cannot contract " + a.shape().to_string() + " with " +
                        b.shape().to_string());
    }
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    const std::size_t n = b.cols();
    const auto ae = a.entries();
    const auto be = b.entries();
    std::vector<Complex> c(m * n);
    for (std::size_t i = 0; i < m; ++i)
    {
        Complex* ci = c.data() + i * n;
        for (std::size_t p = 0; p < k; ++p)
        {
            const Complex aip = ae[i * k + p];
            if (aip == Complex())
                continue;
            const Complex* bp = be.data() + p * n;
            for (std::size_t j = 0; j < n; ++j)
                ci[j] += aip * bp[j];
        }
    }
    return DenseTensor(ModeShape(a.shape().row_dims(), b.shape().col_dims()),
                       std::move(c));
}

inline DenseTensor conj_transpose(const DenseTensor& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const auto ae = a.entries();
    std::vector<Complex> t(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[j * m + i] = std::conj(ae[i * n + j]);
    return DenseTensor(a.shape().transposed(), std::move(t));
}

// alpha * a + beta * b, entrywise.
inline DenseTensor add_scale(Complex alpha, const DenseTensor& a, Complex beta,
                             const DenseTensor& b)
{
    if (!(a.shape() == b.shape()))
    {
        throw Error(Errc::shape_mismatch,
                    "cannot add " + a.shape().to_string() + " and " +
                        b.shape().to_string());
    }
    const auto ae = a.entries();
    const auto be = b.entries();
    std::vector<Complex> r(ae.size());
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] = alpha * ae[k] + beta * be[k];
    return DenseTensor(a.shape(), std::move(r));
}

inline DenseTensor operator*(const DenseTensor& a, const DenseTensor& b)
{
    return einstein_product(a, b);
}

inline DenseTensor operator*(Complex s, const DenseTensor& a)
{
    return add_scale(s, a, 0.0, a);
}

inline DenseTensor operator+(const DenseTensor& a, const DenseTensor& b)
{
    return add_scale(1.0, a, 1.0, b);
}

inline DenseTensor operator-(const DenseTensor& a, const DenseTensor& b)
{
    return add_scale(1.0, a, -1.0, b);
}

inline Complex trace(const DenseTensor& a)
{
    if (!a.shape().is_square())
    {
        throw Error(Errc::shape_mismatch,
                    "trace needs row modes equal to column modes, got " +
                        a.shape().to_string());
    }
    Complex t;
    for (std::size_t k = 0; k < a.rows(); ++k)
        t += a(k, k);
    return t;
}

//
// Kronecker product. Result modes are a.rows ++ b.rows by a.cols ++ b.cols, so
// the flattened row of (i, k) is i * b.rows + k.
//
inline DenseTensor kronecker(const DenseTensor& a, const DenseTensor& b)
{
    Dims rows = a.shape().row_dims();
    rows.insert(rows.end(), b.shape().row_dims().begin(),
                b.shape().row_dims().end());
    Dims cols = a.shape().col_dims();
    cols.insert(cols.end(), b.shape().col_dims().begin(),
                b.shape().col_dims().end());
    ModeShape shape(std::move(rows), std::move(cols));

    const std::size_t br = b.rows();
    const std::size_t bc = b.cols();
    const std::size_t nc = shape.col_count();
    std::vector<Complex> e(shape.size());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
        {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l)
                    e[(i * br + k) * nc + (j * bc + l)] = aij * b(k, l);
        }
    return DenseTensor(std::move(shape), std::move(e));
}

inline double frobenius_norm(const DenseTensor& a)
{
    // Scaled accumulation keeps the sum from overflowing for huge entries.
    double scale = 0.0;
    for (const Complex& z : a.entries())
        scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
    if (scale == 0.0)
        return 0.0;
    double sum = 0.0;
    for (const Complex& z : a.entries())
    {
        const double re = z.real() / scale;
        const double im = z.imag() / scale;
        sum += re * re + im * im;
    }
    return scale * std::sqrt(sum);
}

//
// <A, B> = tr(A^* B). Summed entrywise, which equals the trace of the
// contracted product for any identical pair of shapes.
//
inline Complex inner_product(const DenseTensor& a, const DenseTensor& b)
{
    if (!(a.shape() == b.shape()))
    {
        throw Error(Errc::shape_mismatch,
                    "inner product of " + a.shape().to_string() + " and " +
                        b.shape().to_string());
    }
    Complex s;
    const auto ae = a.entries();
    const auto be = b.entries();
    for (std::size_t k = 0; k < ae.size(); ++k)
        s += std::conj(ae[k]) * be[k];
    return s;
}

// ||x - y|| / max(1, ||x||, ||y||)
inline double relative_residual(const DenseTensor& x, const DenseTensor& y)
{
    const double scale =
        std::max({1.0, frobenius_norm(x), frobenius_norm(y)});
    return frobenius_norm(x - y) / scale;
}

// Size of x relative to a caller-supplied operand scale (floored at 1).
inline double zero_residual(const DenseTensor& x, double scale)
{
    return frobenius_norm(x) / std::max(1.0, scale);
}

inline double hermitian_residual(const DenseTensor& x)
{
    if (!x.shape().is_square())
    {
        throw Error(Errc::shape_mismatch,
                    "Hermitian test needs a square split, got " +
                        x.shape().to_string());
    }
    return relative_residual(x, conj_transpose(x));
}

inline bool approx_equal(const DenseTensor& x, const DenseTensor& y,
                         const NumericPolicy& policy = {})
{
    return x.shape() == y.shape() &&
           relative_residual(x, y) <= policy.eq_tol;
}

struct TensorClass
{
    bool square = false;
    // Set when square-only flags were skipped.
    std::string_view reason;

    bool hermitian = false;
    bool skew_hermitian = false;
    bool unitary = false;
    bool idempotent = false;
    bool diagonal = false;
    bool normal = false;

    double hermitian_residual = 0.0;
    double skew_hermitian_residual = 0.0;
    double unitary_residual = 0.0;
    double idempotent_residual = 0.0;
    double diagonal_residual = 0.0;
    double normal_residual = 0.0;
};

inline TensorClass classify(const DenseTensor& a,
                            const NumericPolicy& policy = {})
{
    TensorClass c;
    const double tol = policy.eq_tol;
    const double norm = frobenius_norm(a);

    double off = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j)
                off += std::norm(a(i, j));
    c.diagonal_residual = std::sqrt(off) / std::max(1.0, norm);
    c.diagonal = c.diagonal_residual <= tol;

    c.square = a.shape().is_square();
    if (!c.square)
    {
        c.reason = "not_square";
        return c;
    }

    const DenseTensor ah = conj_transpose(a);
    const DenseTensor eye = identity(a.shape().row_dims());
    c.hermitian_residual = relative_residual(a, ah);
    c.skew_hermitian_residual = frobenius_norm(a + ah) / std::max(1.0, norm);
    const DenseTensor aah = a * ah;
    const DenseTensor aha = ah * a;
    c.unitary_residual =
        std::max(relative_residual(aah, eye), relative_residual(aha, eye));
    c.idempotent_residual = relative_residual(a * a, a);
    c.normal_residual = relative_residual(aah, aha);

    c.hermitian = c.hermitian_residual <= tol;
    c.skew_hermitian = c.skew_hermitian_residual <= tol;
    c.unitary = c.unitary_residual <= tol;
    c.idempotent = c.idempotent_residual <= tol;
    c.normal = c.normal_residual <= tol;
    return c;
}

inline bool is_unitary(const DenseTensor& a, const NumericPolicy& policy = {})
{
    return a.shape().is_square() && classify(a, policy).unitary;
}

} // namespace einrol

#endif // EINROL_TENSOR_OPS_HPP
