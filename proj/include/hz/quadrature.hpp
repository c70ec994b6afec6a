//---------------------------------------------------------------------------//
//! \file hz/quadrature.hpp
//! Adaptive integration of the radial first intensity.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <limits>

#include "kernel.hpp"

namespace hz
{
//---------------------------------------------------------------------------//
struct QuadratureResult
{
    double value{0};
    double abs_error_estimate{0};
    long evaluations{0};
    bool converged{false};
};

//! Kernel evaluations allowed per integral before giving up.
inline constexpr long kDefaultEvaluationBudget = 1'000'000;

//---------------------------------------------------------------------------//
/*!
 * Globally adaptive 7/15-point Gauss-Kronrod integration over (lo, hi).
 *
 * The interval with the largest error estimate is bisected until the sum of
 * estimates drops to \p tol or the evaluation budget runs out. Only interior
 * nodes are sampled, so integrable endpoint singularities are fine. The
 * result is a deterministic function of the inputs: subdivision ties are
 * broken by creation order and the final sum runs left to right.
 *
 * On budget exhaustion the best estimate is returned with converged=false.
 */
QuadratureResult integrate_adaptive(std::function<double(double)> const& f,
                                    double lo,
                                    double hi,
                                    double tol,
                                    long max_evaluations
                                    = kDefaultEvaluationBudget);

//! 1e-8 for n <= 1000, 1e-6 above.
double default_tolerance(DegreePair deg);

//! E N over the whole plane: (0, 1] in w plus (0, 1] in u = 1/w, each with
//! half of \p tol.
QuadratureResult expected_zeros(DegreePair deg, double tol);

//! Expected zeros in the annulus w_lo < |z|^2 < w_hi; w_hi may be infinite.
//! An empty interval yields an exact zero with no evaluations.
QuadratureResult
expected_zeros_annulus(DegreePair deg, double w_lo, double w_hi, double tol);

//---------------------------------------------------------------------------//
enum class ScalingMode
{
    fixed_m,
    diagonal,
};

struct ExpectationRow
{
    int n{0};
    int m{0};
    double expectation{0};
    double error{0};
    double ratio_n{0};
    //! E N / (n log n); NaN for n < 2
    double ratio_nlogn{std::numeric_limits<double>::quiet_NaN()};
    bool converged{false};
};

ExpectationRow make_row(DegreePair deg, QuadratureResult const& result);

//! E N / n (fixed_m) or E N / (n log n) (diagonal, requires n == m >= 2).
//! Throws std::runtime_error if the integral does not converge.
double scaled_expectation(DegreePair deg, ScalingMode mode, double tol);

//---------------------------------------------------------------------------//
}  // namespace hz
