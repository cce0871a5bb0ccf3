#ifndef EINROL_NUMERIC_POLICY_HPP
#define EINROL_NUMERIC_POLICY_HPP

#include "einrol/error.hpp"

namespace einrol
{

/// Tolerances for every approximate decision in the library.
struct NumericPolicy
{
    /// Relative Frobenius tolerance for approximate equality.
    double eq_tol = 1e-10;
    /// Singular values below rank_tol * sigma_max are treated as zero.
    double rank_tol = 1e-12;

    void validate() const
    {
        if (!(eq_tol > 0.0 && eq_tol < 1.0))
            throw Error(Errc::invalid_argument, "eq_tol must lie in (0, 1)");
        if (!(rank_tol > 0.0 && rank_tol < 1.0))
            throw Error(Errc::invalid_argument, "rank_tol must lie in (0, 1)");
    }
};

} // namespace einrol

#endif // EINROL_NUMERIC_POLICY_HPP
