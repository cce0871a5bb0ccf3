#ifndef EINROL_ROL_HPP
#define EINROL_ROL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "einrol/dense_tensor.hpp"
#include "einrol/error.hpp"
#include "einrol/mp_inverse.hpp"
#include "einrol/numeric_policy.hpp"
#include "einrol/random.hpp"
#include "einrol/tensor_ops.hpp"

namespace einrol
{

struct Condition
{
    double residual = 0.0;
    bool holds = false;
};

inline Condition make_condition(double residual, const NumericPolicy& policy)
{
    return Condition{residual, residual <= policy.eq_tol};
}

//
// Every characterization of (A B)^+ = B^+ A^+ evaluated on one pair. The
// groups direct, range, hermitian, combined and product_projector are
// equivalent; direct implies projector_commute but not conversely.
//
struct RolReport
{
    // (A B)^+ = B^+ A^+
    Condition direct;
    // A^+ A B B^* A^* = B B^* A^*
    Condition left_range;
    // B B^+ A^* A B = A^* A B
    Condition right_range;
    // A^+ A B B^* is Hermitian
    Condition left_hermitian;
    // A^* A B B^+ is Hermitian
    Condition right_hermitian;
    // A^+ A B B^* A^* A B B^+ = B B^* A^* A
    Condition combined;
    // A^+ A B = B (A B)^+ A B
    Condition left_product_projector;
    // B B^+ A^* = A^* A B (A B)^+
    Condition right_product_projector;
    // A^+ A and B B^+ commute
    Condition projector_commute;

    bool range_pair() const { return left_range.holds && right_range.holds; }
    bool hermitian_pair() const
    {
        return left_hermitian.holds && right_hermitian.holds;
    }
    bool product_projector_pair() const
    {
        return left_product_projector.holds && right_product_projector.holds;
    }

    // The five equivalent groups, in the order above.
    std::array<bool, 5> groups() const
    {
        return {direct.holds, range_pair(), hermitian_pair(), combined.holds,
                product_projector_pair()};
    }

    bool groups_agree() const
    {
        const auto g = groups();
        return std::all_of(g.begin(), g.end(),
                           [&](bool b) { return b == g[0]; });
    }

    bool implies_commute() const
    {
        return !direct.holds || projector_commute.holds;
    }

    bool consistent() const { return groups_agree() && implies_commute(); }

    template <typename F>
    void for_each(F&& f) const
    {
        f("direct", direct);
        f("left_range", left_range);
        f("right_range", right_range);
        f("left_hermitian", left_hermitian);
        f("right_hermitian", right_hermitian);
        f("combined", combined);
        f("left_product_projector", left_product_projector);
        f("right_product_projector", right_product_projector);
        f("projector_commute", projector_commute);
    }
};

namespace detail
{
inline void require_conforming(const DenseTensor& a, const DenseTensor& b)
{
    if (a.shape().col_dims() != b.shape().row_dims())
    {
        throw Error(Errc::shape_mismatch,
                    "A " + a.shape().to_string() + " and B " +
                        b.shape().to_string() + " do not conform");
    }
}
} // namespace detail

inline RolReport rol_report(const DenseTensor& a, const DenseTensor& b,
                            const NumericPolicy& policy = {})
{
    detail::require_conforming(a, b);
    const DenseTensor ab = a * b;
    const DenseTensor ap = pinv(a, policy);
    const DenseTensor bp = pinv(b, policy);
    const DenseTensor abp = pinv(ab, policy);
    const DenseTensor ah = conj_transpose(a);
    const DenseTensor bh = conj_transpose(b);

    const DenseTensor apa = ap * a;  // projector onto range(A^*)
    const DenseTensor bbp = b * bp;  // projector onto range(B)
    const DenseTensor bbh = b * bh;
    const DenseTensor aha = ah * a;

    auto cond = [&](double r) { return make_condition(r, policy); };

    RolReport r;
    r.direct = cond(relative_residual(abp, bp * ap));
    r.left_range = cond(relative_residual(apa * bbh * ah, bbh * ah));
    r.right_range = cond(relative_residual(bbp * aha * b, aha * b));
    r.left_hermitian = cond(hermitian_residual(apa * bbh));
    r.right_hermitian = cond(hermitian_residual(aha * bbp));
    r.combined = cond(relative_residual(apa * bbh * aha * bbp, bbh * aha));
    r.left_product_projector = cond(relative_residual(apa * b, b * abp * ab));
    r.right_product_projector =
        cond(relative_residual(bbp * ah, aha * b * abp));
    r.projector_commute = cond(relative_residual(apa * bbp, bbp * apa));
    return r;
}

//
// (A B)^+ through a unitary factor: B^* A^+ when B is unitary, otherwise
// B^+ A^* when A is unitary.
//
inline DenseTensor unitary_rol(const DenseTensor& a, const DenseTensor& b,
                               const NumericPolicy& policy = {})
{
    detail::require_conforming(a, b);
    if (is_unitary(b, policy))
        return conj_transpose(b) * pinv(a, policy);
    if (is_unitary(a, policy))
        return pinv(b, policy) * conj_transpose(a);
    throw Error(Errc::not_unitary, "neither factor is unitary");
}

// (B A C)^+ = C^* A^+ B^* for unitary B and C.
inline DenseTensor sandwich_pinv(const DenseTensor& b, const DenseTensor& a,
                                 const DenseTensor& c,
                                 const NumericPolicy& policy = {})
{
    detail::require_conforming(b, a);
    detail::require_conforming(a, c);
    if (!is_unitary(b, policy))
        throw Error(Errc::not_unitary, "left factor is not unitary", 0);
    if (!is_unitary(c, policy))
        throw Error(Errc::not_unitary, "right factor is not unitary", 1);
    return conj_transpose(c) * pinv(a, policy) * conj_transpose(b);
}

struct ZeroConditions
{
    Condition annihilates_pinv;      // B A^+ = O
    Condition annihilates_adjoint;   // B A^* = O
    Condition annihilates_projector; // B A^+ A = O

    bool consistent() const
    {
        return annihilates_pinv.holds == annihilates_adjoint.holds &&
               annihilates_adjoint.holds == annihilates_projector.holds;
    }
};

inline ZeroConditions zero_equivalence(const DenseTensor& b,
                                       const DenseTensor& a,
                                       const NumericPolicy& policy = {})
{
    if (b.shape().col_dims() != a.shape().col_dims())
    {
        throw Error(Errc::shape_mismatch,
                    "B " + b.shape().to_string() +
                        " cannot multiply the inverse of A " +
                        a.shape().to_string());
    }
    const DenseTensor ap = pinv(a, policy);
    const DenseTensor apa = ap * a;
    const double nb = frobenius_norm(b);
    return ZeroConditions{
        make_condition(zero_residual(b * ap, nb * frobenius_norm(ap)), policy),
        make_condition(
            zero_residual(b * conj_transpose(a), nb * frobenius_norm(a)),
            policy),
        make_condition(zero_residual(b * apa, nb * frobenius_norm(apa)),
                       policy),
    };
}

//
// Commutativity of the projectors A^+ A and B B^+ together with the
// conditions tied to it. `left_absorb` is equivalent to `commute`, and
// `right_absorb` to `dual_commute` (B^+ B with A A^+); the two commutations
// are independent in general.
//
struct CommuteReport
{
    // A^+ A B B^+ = B B^+ A^+ A
    Condition commute;
    // A^+ A B B^+ A^* = B B^+ A^*
    Condition left_absorb;
    // B^+ B A A^+ B^* = A A^+ B^*
    Condition right_absorb;
    // B^+ B A A^+ = A A^+ B^+ B
    Condition dual_commute;
    // A^+ A B B^* A^* = B B^* A^*
    Condition left_range;
    // (I - A^+ A) B B^* A^+ A = O, as B B^* A^+ A = A^+ A B B^* A^+ A
    Condition left_range_projected;
    // B B^+ A^* A B = A^* A B
    Condition right_range;
    // (I - B B^+) A^* A B B^+ = O, as A^* A B B^+ = B B^+ A^* A B B^+
    Condition right_range_projected;

    bool consistent() const
    {
        return commute.holds == left_absorb.holds &&
               dual_commute.holds == right_absorb.holds &&
               left_range.holds == left_range_projected.holds &&
               right_range.holds == right_range_projected.holds;
    }

    template <typename F>
    void for_each(F&& f) const
    {
        f("commute", commute);
        f("left_absorb", left_absorb);
        f("right_absorb", right_absorb);
        f("dual_commute", dual_commute);
        f("left_range", left_range);
        f("left_range_projected", left_range_projected);
        f("right_range", right_range);
        f("right_range_projected", right_range_projected);
    }
};

inline CommuteReport projector_commute_report(const DenseTensor& a,
                                              const DenseTensor& b,
                                              const NumericPolicy& policy = {})
{
    detail::require_conforming(a, b);
    detail::require_conforming(b, a);
    const DenseTensor ap = pinv(a, policy);
    const DenseTensor bp = pinv(b, policy);
    const DenseTensor ah = conj_transpose(a);
    const DenseTensor bh = conj_transpose(b);
    const DenseTensor apa = ap * a;
    const DenseTensor aap = a * ap;
    const DenseTensor bbp = b * bp;
    const DenseTensor bpb = bp * b;
    const DenseTensor bbh = b * bh;
    const DenseTensor aha = ah * a;

    auto cond = [&](double r) { return make_condition(r, policy); };
    CommuteReport r;
    r.commute = cond(relative_residual(apa * bbp, bbp * apa));
    r.left_absorb = cond(relative_residual(apa * bbp * ah, bbp * ah));
    r.right_absorb = cond(relative_residual(bpb * aap * bh, aap * bh));
    r.dual_commute = cond(relative_residual(bpb * aap, aap * bpb));
    r.left_range = cond(relative_residual(apa * bbh * ah, bbh * ah));
    r.left_range_projected =
        cond(relative_residual(bbh * apa, apa * bbh * apa));
    r.right_range = cond(relative_residual(bbp * aha * b, aha * b));
    r.right_range_projected =
        cond(relative_residual(aha * bbp, bbp * aha * bbp));
    return r;
}

enum class PairFamily
{
    dense,
    rank_deficient,
    unitary_factor,
    diagonal,
    orthogonal_sum,
};

inline constexpr std::array<PairFamily, 5> all_pair_families{
    PairFamily::dense, PairFamily::rank_deficient, PairFamily::unitary_factor,
    PairFamily::diagonal, PairFamily::orthogonal_sum};

constexpr std::string_view to_string(PairFamily f) noexcept
{
    switch (f)
    {
    case PairFamily::dense:
        return "dense";
    case PairFamily::rank_deficient:
        return "rank_deficient";
    case PairFamily::unitary_factor:
        return "unitary_factor";
    case PairFamily::diagonal:
        return "diagonal";
    case PairFamily::orthogonal_sum:
        return "orthogonal_sum";
    }
    return "unknown";
}

struct TensorPair
{
    DenseTensor a;
    DenseTensor b;
};

//
// Draws a pair (A: I x J, B: J x I) from the given family. unitary_factor
// needs a square split; for other shapes it falls back to dense.
//
inline TensorPair draw_pair(PairFamily family, const ModeShape& shape, Rng& rng)
{
    const ModeShape bshape = shape.transposed();
    const std::size_t n = std::min(shape.row_count(), shape.col_count());
    std::uniform_int_distribution<std::size_t> rank(1, n);
    switch (family)
    {
    case PairFamily::rank_deficient:
    {
        DenseTensor a = random_with_rank(shape, rank(rng), rng);
        DenseTensor b = random_with_rank(bshape, rank(rng), rng);
        return {std::move(a), std::move(b)};
    }
    case PairFamily::unitary_factor:
        if (shape.is_square())
        {
            DenseTensor a = random_with_rank(shape, rank(rng), rng);
            DenseTensor b = random_unitary(shape.col_dims(), rng);
            if (std::bernoulli_distribution(0.5)(rng))
                return {std::move(a), std::move(b)};
            // Unitary on the left instead.
            return {std::move(b), std::move(a)};
        }
        [[fallthrough]];
    case PairFamily::dense:
        return {random_tensor(shape, rng), random_tensor(bshape, rng)};
    case PairFamily::diagonal:
        return {random_diagonal(shape, rng), random_diagonal(bshape, rng)};
    case PairFamily::orthogonal_sum:
    {
        // B = (part inside range(A^*)) + (part inside its complement).
        const DenseTensor a = random_with_rank(shape, rank(rng), rng);
        const DenseTensor apa = pinv(a) * a;
        const DenseTensor inside =
            apa * random_with_rank(bshape, rank(rng), rng);
        const DenseTensor outside =
            (identity(bshape.row_dims().empty() ? Dims{1}
                                                : bshape.row_dims()) -
             apa) *
            random_with_rank(bshape, rank(rng), rng);
        return {a, inside + outside};
    }
    }
    throw Error(Errc::invalid_argument, "unknown pair family");
}

struct FuzzViolation
{
    std::size_t trial = 0;
    PairFamily family = PairFamily::dense;
    RolReport report;
    TensorPair pair;
};

struct FuzzSummary
{
    std::size_t trials = 0;
    std::size_t direct_true = 0;
    std::size_t direct_false = 0;
    std::size_t violations = 0;
    std::array<std::size_t, all_pair_families.size()> family_trials{};
    std::array<std::size_t, all_pair_families.size()> family_direct_true{};
    std::optional<FuzzViolation> first_violation;
    // Smallest distance from any residual to the decision threshold, in
    // decades. Large values mean every boolean was decided with margin.
    double min_margin_decades = 0.0;
};

//
// Seeded randomized search for pairs that break the equivalences in
// RolReport. Trial t draws family t mod 5 from substream(seed, t).
//
inline FuzzSummary fuzz_search(const ModeShape& shape, std::size_t trials,
                               std::uint64_t seed,
                               const NumericPolicy& policy = {},
                               std::optional<PairFamily> only = std::nullopt)
{
    if (trials < 1)
        throw Error(Errc::invalid_argument, "fuzz_search needs trials >= 1");
    if (shape.row_dims().empty() || shape.col_dims().empty())
    {
        throw Error(Errc::invalid_argument,
                    "fuzz shape needs row and column modes");
    }

    FuzzSummary s;
    s.trials = trials;
    s.min_margin_decades = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t)
    {
        const PairFamily family =
            only ? *only : all_pair_families[t % all_pair_families.size()];
        const auto fi = static_cast<std::size_t>(family);
        Rng rng = substream(seed, t);
        TensorPair pair = draw_pair(family, shape, rng);
        const RolReport r = rol_report(pair.a, pair.b, policy);

        ++s.family_trials[fi];
        if (r.direct.holds)
        {
            ++s.direct_true;
            ++s.family_direct_true[fi];
        }
        else
        {
            ++s.direct_false;
        }
        r.for_each([&](std::string_view, const Condition& c) {
            const double m =
                std::abs(std::log10(std::max(c.residual, 1e-300)) -
                         std::log10(policy.eq_tol));
            s.min_margin_decades = std::min(s.min_margin_decades, m);
        });
        if (!r.consistent())
        {
            ++s.violations;
            if (!s.first_violation)
                s.first_violation = FuzzViolation{t, family, r, std::move(pair)};
        }
    }
    return s;
}

} // namespace einrol

#endif // EINROL_ROL_HPP
