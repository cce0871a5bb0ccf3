#ifndef EINROL_MP_INVERSE_HPP
#define EINROL_MP_INVERSE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "einrol/dense_tensor.hpp"
#include "einrol/error.hpp"
#include "einrol/numeric_policy.hpp"
#include "einrol/tensor_ops.hpp"
#include "einrol/unfolding.hpp"

namespace einrol
{

//
// A = u * d * v^*, with u (I x I) and v (J x J) unitary and d (I x J) diagonal,
// nonnegative and nonincreasing along the flattened diagonal.
//
struct SvdFactors
{
    DenseTensor u;
    DenseTensor d;
    DenseTensor v;

    std::vector<double> singular_values() const
    {
        const std::size_t n = std::min(d.rows(), d.cols());
        std::vector<double> s(n);
        for (std::size_t k = 0; k < n; ++k)
            s[k] = d(k, k).real();
        return s;
    }
};

inline SvdFactors tsvd(const DenseTensor& a)
{
    const ModeShape& shape = a.shape();
    MatrixSvd m = matrix_svd(matricize(a));
    std::vector<Complex> diag(m.sigma.begin(), m.sigma.end());
    return SvdFactors{
        dematricize(m.u, ModeShape(shape.row_dims(), shape.row_dims())),
        diagonal_from(shape.row_dims(), shape.col_dims(), diag),
        dematricize(m.v, ModeShape(shape.col_dims(), shape.col_dims())),
    };
}

// Number of singular values kept: sigma_k >= rank_tol * sigma_max, sigma_k > 0.
inline std::size_t numerical_rank(std::span<const double> sigma,
                                  const NumericPolicy& policy)
{
    if (sigma.empty() || sigma[0] <= 0.0)
        return 0;
    const double cut = policy.rank_tol * sigma[0];
    std::size_t r = 0;
    while (r < sigma.size() && sigma[r] >= cut && sigma[r] > 0.0)
        ++r;
    return r;
}

//
// Moore-Penrose inverse v * d^+ * u^*, where d^+ reciprocates the kept singular
// values. The zero tensor maps to the zero tensor of transposed shape.
//
inline DenseTensor pinv(const DenseTensor& a, const NumericPolicy& policy = {})
{
    const SvdFactors f = tsvd(a);
    const std::vector<double> sigma = f.singular_values();
    const std::size_t rank = numerical_rank(sigma, policy);
    std::vector<Complex> inv(sigma.size());
    for (std::size_t k = 0; k < rank; ++k)
        inv[k] = 1.0 / sigma[k];
    const DenseTensor d_plus =
        diagonal_from(a.shape().col_dims(), a.shape().row_dims(), inv);
    return f.v * d_plus * conj_transpose(f.u);
}

struct PenroseResiduals
{
    double r1 = 0.0; // A X A = A
    double r2 = 0.0; // X A X = X
    double r3 = 0.0; // (A X)^* = A X
    double r4 = 0.0; // (X A)^* = X A

    double max() const { return std::max({r1, r2, r3, r4}); }
    bool holds(double tol) const { return max() <= tol; }
};

inline PenroseResiduals penrose_residuals(const DenseTensor& a,
                                          const DenseTensor& x)
{
    if (!(x.shape() == a.shape().transposed()))
    {
        throw Error(Errc::shape_mismatch,
                    "candidate inverse of " + a.shape().to_string() +
                        " must have shape " +
                        a.shape().transposed().to_string() + ", got " +
                        x.shape().to_string());
    }
    const DenseTensor ax = a * x;
    const DenseTensor xa = x * a;
    return PenroseResiduals{
        relative_residual(ax * a, a),
        relative_residual(xa * x, x),
        hermitian_residual(ax),
        hermitian_residual(xa),
    };
}

//
// Residuals of the standard pseudoinverse identities, keyed by a short label
// naming the identity. All of them vanish for every A.
//
struct IdentitySuite
{
    std::map<std::string, double> residuals;
    bool normal = false;
    bool ep = false;

    double max_residual() const
    {
        double m = 0.0;
        for (const auto& [name, r] : residuals)
            m = std::max(m, r);
        return m;
    }
};

inline IdentitySuite identity_suite(const DenseTensor& a,
                                    const NumericPolicy& policy = {})
{
    const DenseTensor ah = conj_transpose(a);
    const DenseTensor ap = pinv(a, policy);
    const DenseTensor ahp = conj_transpose(ap); // (A^*)^+ = (A^+)^*
    const DenseTensor aha = ah * a;
    const DenseTensor aah = a * ah;
    // Gram inverses come from their own SVDs so the product rules below are
    // real checks rather than restatements.
    const DenseTensor aha_p = pinv(aha, policy);
    const DenseTensor aah_p = pinv(aah, policy);

    IdentitySuite s;
    auto& r = s.residuals;
    r["A* = A+ A A*"] = relative_residual(ah, ap * a * ah);
    r["A* = A* A A+"] = relative_residual(ah, ah * a * ap);
    r["A = A A* (A*)+"] = relative_residual(a, aah * ahp);
    r["A = (A*)+ A* A"] = relative_residual(a, ahp * aha);
    r["A+ = (A*A)+ A*"] = relative_residual(ap, aha_p * ah);
    r["A+ = A* (AA*)+"] = relative_residual(ap, ah * aah_p);
    r["(A*A)+ = A+ (A*)+"] = relative_residual(aha_p, ap * ahp);
    r["(AA*)+ = (A*)+ A+"] = relative_residual(aah_p, ahp * ap);
    r["(A*A)+ = A+ (AA*)+ A"] = relative_residual(aha_p, ap * aah_p * a);
    r["(A*A)+ = A* (AA*)+ (A*)+"] =
        relative_residual(aha_p, ah * aah_p * ahp);
    r["A+ A = A* A (A*A)+"] = relative_residual(ap * a, aha * aha_p);
    r["A+ A = (A*A)+ A* A"] = relative_residual(ap * a, aha_p * aha);

    if (a.shape().is_square())
    {
        s.normal = relative_residual(aah, aha) <= policy.eq_tol;
        s.ep = relative_residual(a * ap, ap * a) <= policy.eq_tol;
    }
    return s;
}

//
// Pseudoinverse of a sum of mutually orthogonal parts (A_i A_j^* = O and
// A_i^* A_j = O for i != j) as the sum of the parts' pseudoinverses.
//
inline DenseTensor pinv_sum(std::span<const DenseTensor> parts,
                            const NumericPolicy& policy = {})
{
    if (parts.empty())
        throw Error(Errc::invalid_argument, "pinv_sum needs at least one part");
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        if (!(parts[i].shape() == parts[0].shape()))
        {
            throw Error(Errc::shape_mismatch,
                        "part " + std::to_string(i) + " has shape " +
                            parts[i].shape().to_string(),
                        i);
        }
    }
    std::vector<double> norms;
    for (const auto& p : parts)
        norms.push_back(frobenius_norm(p));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
        {
            const double scale = norms[i] * norms[j];
            const double left =
                zero_residual(parts[i] * conj_transpose(parts[j]), scale);
            const double right =
                zero_residual(conj_transpose(parts[i]) * parts[j], scale);
            const double worst = std::max(left, right);
            if (worst > policy.eq_tol)
            {
                throw Error(Errc::not_orthogonal,
                            "parts " + std::to_string(i) + " and " +
                                std::to_string(j) +
                                " are not orthogonal (residual " +
                                std::to_string(worst) + ")",
                            i);
            }
        }
    DenseTensor sum = pinv(parts[0], policy);
    for (std::size_t i = 1; i < parts.size(); ++i)
        sum = sum + pinv(parts[i], policy);
    return sum;
}

struct IdempotentFactors
{
    DenseTensor left;  // C C^+
    DenseTensor right; // C^+ C
};

//
// For idempotent C, returns the Hermitian idempotents A = C C^+ and
// B = C^+ C, which satisfy (B A)^+ = C.
//
inline IdempotentFactors idempotent_factorization(const DenseTensor& c,
                                                  const NumericPolicy& policy = {})
{
    if (!c.shape().is_square())
    {
        throw Error(Errc::shape_mismatch,
                    "idempotent factorization needs a square split, got " +
                        c.shape().to_string());
    }
    const double r = relative_residual(c * c, c);
    if (r > policy.eq_tol)
    {
        throw Error(Errc::not_idempotent,
                    "C * C differs from C (residual " + std::to_string(r) +
                        ")");
    }
    const DenseTensor cp = pinv(c, policy);
    return IdempotentFactors{c * cp, cp * c};
}

//
// Minimum-norm least-squares solution X = A^+ B of A X = B.
//
inline DenseTensor min_norm_solve(const DenseTensor& a, const DenseTensor& b,
                                  const NumericPolicy& policy = {})
{
    if (a.shape().row_dims() != b.shape().row_dims())
    {
        throw Error(Errc::shape_mismatch,
                    "right-hand side " + b.shape().to_string() +
                        " does not match rows of " + a.shape().to_string());
    }
    return pinv(a, policy) * b;
}

} // namespace einrol

#endif // EINROL_MP_INVERSE_HPP
