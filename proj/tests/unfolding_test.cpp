#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace einrol;
using namespace einrol::test;

namespace
{

double unitarity_residual(const DenseMatrix& u)
{
    const DenseMatrix g = conj_transpose(u) * u;
    double s = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            s += std::norm(g(i, j) - (i == j ? 1.0 : 0.0));
    return std::sqrt(s);
}

DenseMatrix reconstruct(const MatrixSvd& s, std::size_t rows, std::size_t cols)
{
    DenseMatrix d(rows, cols);
    for (std::size_t k = 0; k < s.sigma.size(); ++k)
        d(k, k) = s.sigma[k];
    return s.u * d * conj_transpose(s.v);
}

double diff(const DenseMatrix& a, const DenseMatrix& b)
{
    double s = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        s += std::norm(a.entries()[k] - b.entries()[k]);
    return std::sqrt(s);
}

DenseMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng)
{
    return matricize(random_tensor(ModeShape({r}, {c}), rng));
}

TEST(Matricize, MatrixTensorIsItself)
{
    const DenseMatrix m = matricize(matrix2(1, 2, 3, 4));
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(m(0, 1), Complex(2.0));
    EXPECT_EQ(m(1, 0), Complex(3.0));
}

TEST(Matricize, GoldenTensorImageIsInvertible)
{
    const DenseMatrix m = matricize(golden_a());
    std::vector<std::vector<std::int64_t>> ints(4, std::vector<std::int64_t>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            ints[i][j] = static_cast<std::int64_t>(m(i, j).real());
    // Exact integer elimination; value cross-checked with numpy.
    EXPECT_EQ(bareiss_determinant(ints), -1);
}

TEST(Matricize, ProductHomomorphismOnPermutationTriple)
{
    const DenseTensor a = perm_a();
    const DenseTensor b = perm_b();
    const DenseMatrix lhs = matricize(naive_einstein(a, b));
    const DenseMatrix rhs = matricize(a) * matricize(b);
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(matricize(a * b), rhs);
}

TEST(Matricize, HomomorphismRandom)
{
    Rng rng(101);
    for (int t = 0; t < 100; ++t)
    {
        const DenseTensor a = random_tensor(ModeShape({2, 3}, {2, 2}), rng);
        const DenseTensor b = random_tensor(ModeShape({2, 2}, {3}), rng);
        const double scale = std::max(
            1.0, frobenius_norm(a) * frobenius_norm(b));
        EXPECT_LE(diff(matricize(naive_einstein(a, b)),
                       matricize(a) * matricize(b)),
                  1e-13 * scale);
    }
}

TEST(Matricize, AdjointAndTraceCommute)
{
    Rng rng(103);
    const DenseTensor a = random_tensor(ModeShape({2, 2}, {2, 2}), rng);
    EXPECT_EQ(matricize(conj_transpose(a)), conj_transpose(matricize(a)));
    const DenseMatrix m = matricize(a);
    Complex t;
    for (std::size_t k = 0; k < m.rows(); ++k)
        t += m(k, k);
    EXPECT_EQ(trace(a), t);
}

TEST(Dematricize, RoundTripIsBitExact)
{
    Rng rng(107);
    for (const ModeShape& s : property_shapes())
    {
        const DenseTensor a = random_tensor(s, rng);
        EXPECT_EQ(dematricize(matricize(a), s), a);
    }
    EXPECT_EQ(dematricize(matricize(golden_a()), golden_a().shape()), golden_a());
}

TEST(Dematricize, IdentityMatrixUnfoldsToUnitTensor)
{
    EXPECT_EQ(dematricize(DenseMatrix::identity(4), ModeShape({2, 2}, {2, 2})),
              identity({2, 2}));
}

TEST(Dematricize, DimensionMismatch)
{
    try
    {
        dematricize(DenseMatrix::identity(3), ModeShape({2}, {2}));
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::shape_mismatch);
    }
}

TEST(MatrixSvd, Diagonal)
{
    const MatrixSvd s = matrix_svd(matricize(diagonal_from({2}, {2}, {3.0, 2.0})));
    ASSERT_EQ(s.sigma.size(), 2u);
    EXPECT_DOUBLE_EQ(s.sigma[0], 3.0);
    EXPECT_DOUBLE_EQ(s.sigma[1], 2.0);
    EXPECT_LE(diff(reconstruct(s, 2, 2),
                   matricize(diagonal_from({2}, {2}, {3.0, 2.0}))),
              1e-15);
}

TEST(MatrixSvd, SortsAscendingInput)
{
    const MatrixSvd s =
        matrix_svd(matricize(diagonal_from({3}, {3}, {1.0, 5.0, 2.0})));
    EXPECT_DOUBLE_EQ(s.sigma[0], 5.0);
    EXPECT_DOUBLE_EQ(s.sigma[1], 2.0);
    EXPECT_DOUBLE_EQ(s.sigma[2], 1.0);
}

TEST(MatrixSvd, ZeroMatrix)
{
    const MatrixSvd s = matrix_svd(DenseMatrix(3, 2));
    for (double x : s.sigma)
        EXPECT_EQ(x, 0.0);
    EXPECT_LE(unitarity_residual(s.u), 1e-14);
    EXPECT_LE(unitarity_residual(s.v), 1e-14);
}

TEST(MatrixSvd, RandomTallAndWideResiduals)
{
    Rng rng(109);
    for (auto [r, c] : {std::pair{4, 3}, std::pair{3, 4}, std::pair{6, 6},
                        std::pair{1, 5}, std::pair{5, 1}})
    {
        const DenseMatrix m = random_matrix(r, c, rng);
        const MatrixSvd s = matrix_svd(m);
        EXPECT_EQ(s.u.rows(), std::size_t(r));
        EXPECT_EQ(s.v.rows(), std::size_t(c));
        EXPECT_LE(diff(reconstruct(s, r, c), m),
                  1e-12 * std::max(1.0, frobenius_norm(m)));
        EXPECT_LE(unitarity_residual(s.u), 1e-12);
        EXPECT_LE(unitarity_residual(s.v), 1e-12);
        for (std::size_t k = 0; k + 1 < s.sigma.size(); ++k)
            EXPECT_GE(s.sigma[k], s.sigma[k + 1]);
        EXPECT_GE(s.sigma.back(), 0.0);
    }
}

TEST(MatrixSvd, RankDeficientKeepsFullUnitaryFactors)
{
    Rng rng(113);
    const DenseTensor a = random_with_rank(ModeShape({3, 2}, {2, 2}), 2, rng);
    const DenseMatrix m = matricize(a);
    const MatrixSvd s = matrix_svd(m);
    EXPECT_LE(unitarity_residual(s.u), 1e-12);
    EXPECT_LE(unitarity_residual(s.v), 1e-12);
    EXPECT_LE(diff(reconstruct(s, 6, 4), m), 1e-12 * frobenius_norm(m));
    EXPECT_LT(s.sigma[2], 1e-13);
    EXPECT_GT(s.sigma[1], 0.4);
}

TEST(MatrixSvd, GoldenTensorSingularValues)
{
    // numpy.linalg.svd of the 4x4 image gives 2cos(pi/7), 2cos(2pi/7), 1,
    // 2cos(3pi/7).
    const double pi = std::numbers::pi;
    const MatrixSvd s = matrix_svd(matricize(golden_a()));
    EXPECT_NEAR(s.sigma[0], 2 * std::cos(pi / 7), 1e-13);
    EXPECT_NEAR(s.sigma[1], 2 * std::cos(2 * pi / 7), 1e-13);
    EXPECT_NEAR(s.sigma[2], 1.0, 1e-13);
    EXPECT_NEAR(s.sigma[3], 2 * std::cos(3 * pi / 7), 1e-13);
}

TEST(MatrixSvd, SingularValuesInvariantUnderUnitaryMultiplication)
{
    Rng rng(127);
    for (int t = 0; t < 20; ++t)
    {
        const DenseMatrix m = random_matrix(4, 3, rng);
        const DenseMatrix p = matricize(random_unitary({4}, rng));
        const DenseMatrix q = matricize(random_unitary({3}, rng));
        const MatrixSvd a = matrix_svd(m);
        const MatrixSvd b = matrix_svd(p * m * q);
        for (std::size_t k = 0; k < 3; ++k)
            EXPECT_NEAR(a.sigma[k], b.sigma[k], 1e-10);
    }
}

TEST(MatrixSvd, NonConvergenceReportsSweeps)
{
    Rng rng(131);
    const DenseMatrix m = random_matrix(5, 5, rng);
    try
    {
        matrix_svd(m, JacobiOptions{1, 1e-14});
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::non_convergence);
        EXPECT_NE(std::string(e.what()).find("1 sweeps"), std::string::npos);
    }
}

} // namespace
