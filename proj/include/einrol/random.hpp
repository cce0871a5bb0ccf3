#ifndef EINROL_RANDOM_HPP
#define EINROL_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "einrol/dense_tensor.hpp"
#include "einrol/mp_inverse.hpp"
#include "einrol/tensor_ops.hpp"
#include "einrol/unfolding.hpp"

namespace einrol
{

using Rng = std::mt19937_64;

// Independent, reproducible substream for trial `index` of a seeded run.
inline Rng substream(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

inline DenseTensor random_tensor(const ModeShape& shape, Rng& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Complex> e(shape.size());
    for (auto& z : e)
    {
        const double re = n(rng);
        z = Complex(re, n(rng));
    }
    return DenseTensor(shape, std::move(e));
}

inline DenseTensor random_real_tensor(const ModeShape& shape, Rng& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Complex> e(shape.size());
    for (auto& z : e)
        z = n(rng);
    return DenseTensor(shape, std::move(e));
}

// Haar-like unitary from Gram-Schmidt on a Gaussian matrix.
inline DenseTensor random_unitary(const Dims& dims, Rng& rng)
{
    const ModeShape shape(dims, dims);
    const std::size_t n = shape.row_count();
    const DenseTensor g = random_tensor(shape, rng);
    detail::Columns q;
    for (std::size_t j = 0; j < n; ++j)
    {
        std::vector<Complex> col(n);
        for (std::size_t i = 0; i < n; ++i)
            col[i] = g(i, j);
        const double r = detail::orthogonalize(col, q);
        for (auto& z : col)
            z /= r;
        q.push_back(std::move(col));
    }
    return dematricize(detail::from_columns(q, n), shape);
}

//
// Tensor of the given rank with singular values drawn from [0.5, 2], so the
// kept and dropped parts of the spectrum are far apart.
//
inline DenseTensor random_with_rank(const ModeShape& shape, std::size_t rank,
                                    Rng& rng)
{
    const std::size_t n = std::min(shape.row_count(), shape.col_count());
    rank = std::min(rank, n);
    std::uniform_real_distribution<double> s(0.5, 2.0);
    std::vector<double> sigma(n);
    for (std::size_t k = 0; k < rank; ++k)
        sigma[k] = s(rng);
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    std::vector<Complex> d(sigma.begin(), sigma.end());
    const DenseTensor u = random_unitary(shape.row_dims().empty()
                                             ? Dims{1}
                                             : shape.row_dims(),
                                         rng);
    const DenseTensor v = random_unitary(shape.col_dims().empty()
                                             ? Dims{1}
                                             : shape.col_dims(),
                                         rng);
    const DenseMatrix m = matricize(u) *
                          matricize(diagonal_from(shape.row_dims(),
                                                  shape.col_dims(), d)) *
                          conj_transpose(matricize(v));
    return dematricize(m, shape);
}

// Diagonal tensor with each diagonal entry zero with probability 1/2.
inline DenseTensor random_diagonal(const ModeShape& shape, Rng& rng)
{
    const std::size_t n = std::min(shape.row_count(), shape.col_count());
    std::normal_distribution<double> g(0.0, 1.0);
    std::bernoulli_distribution keep(0.5);
    std::vector<Complex> d(n);
    for (auto& z : d)
    {
        const double re = g(rng);
        const double im = g(rng);
        z = keep(rng) ? Complex(re, im) : Complex();
    }
    return diagonal_from(shape.row_dims(), shape.col_dims(), d);
}

// I + 0.1 R, redrawn until its smallest singular value is at least 0.5.
inline DenseTensor random_invertible(const Dims& dims, Rng& rng)
{
    const ModeShape shape(dims, dims);
    for (;;)
    {
        const DenseTensor b =
            identity(dims) + Complex(0.1) * random_tensor(shape, rng);
        const MatrixSvd s = matrix_svd(matricize(b));
        if (s.sigma.back() >= 0.5)
            return b;
    }
}

} // namespace einrol

#endif // EINROL_RANDOM_HPP
