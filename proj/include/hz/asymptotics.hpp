//---------------------------------------------------------------------------//
//! \file hz/asymptotics.hpp
//! Limit densities and large-degree diagnostics.
//---------------------------------------------------------------------------//
#pragma once

#include <span>
#include <vector>

#include "quadrature.hpp"

namespace hz
{
//---------------------------------------------------------------------------//
// Limit densities in t = n (|z|^2 - 1), fixed m
//---------------------------------------------------------------------------//

//! Below this |t| the limit densities switch to their Taylor series.
inline constexpr double kSeriesSwitch = 0.1;

//! f(t) = (e^{2t} - (t^2+2) e^t + 1) / (t^2 (e^t - 1)^2), even in t, with
//! f(0) = 1/12. Evaluated as 1/t^2 - 1/(4 sinh^2(t/2)).
double f_limit(double t);

//! g(t) = 2 f(t): limit of the dominating sequence.
double g_limit(double t);

//! F(t) = ((t-1) e^t + 1) / (t (e^t - 1)) = 1/(1 - e^{-t}) - 1/t, F' = f,
//! F(0) = 1/2, F(-inf) = 0, F(+inf) = 1.
double antiderivative_F(double t);

//! F(T) - F(-T) + 2/T: integral of f over the line from the antiderivative
//! plus the bound on both t^{-2} tails.
double integral_f_via_antiderivative(double T);

//---------------------------------------------------------------------------//
// Diagonal case n = m
//---------------------------------------------------------------------------//

//! Limit of radial_intensity(w)/n as n = m grows: 0 for w < 1 and
//! 1 / (2 (w-1) sqrt(w)) for w > 1. Throws std::domain_error at w = 1.
double limit_density_diag(double w);

//! 1 - e/(e-1)^2, the large-n floor of jacobian_term on w >= 1 + 1/n.
double alpha_constant();

//! sqrt(alpha) / (8 sqrt 2): lower constant of the n log n corridor.
double diagonal_lower_constant();

struct DiagonalBoundTerms
{
    double cn_ratio;       //!< c_n / (n^2 a_n)
    double jacobian_term;  //!< 1 - (n+1)^2 w^n / a_n^2
};

//! Both terms are evaluated directly from the sums; the latter satisfies
//! (a c - b^2) / (w a^2) = jacobian_term / (w - 1)^2.
DiagonalBoundTerms diagonal_bound_terms(double w, int n);

//---------------------------------------------------------------------------//
// Convergence and growth diagnostics
//---------------------------------------------------------------------------//

struct ConvergenceRow
{
    int n;
    double x;  //!< t (fixed m) or w (diagonal)
    double value;
    double limit;
    double deviation;
    //! Deviation grew relative to the previous n at the same x
    bool non_monotone;
};

struct ConvergenceTable
{
    std::vector<ConvergenceRow> rows;
    int violations{0};
};

//! |f_n(t) - f(t)| for each n in \p ns (ascending) and t in \p ts.
ConvergenceTable convergence_table_fixed_m(int m,
                                           std::span<int const> ns,
                                           std::span<double const> ts);

//! |radial_intensity(w)/n - limit_density_diag(w)| with n = m.
ConvergenceTable convergence_table_diagonal(std::span<int const> ns,
                                            std::span<double const> ws);

enum class GrowthModel
{
    linear_in_n,
    linear_in_nlogn,
};

struct GrowthFit
{
    GrowthModel model;
    double slope;
    //! Largest |E - slope x| / (slope x) over the rows
    double residual;
};

//! Least-squares slope through the origin of expectation against n or
//! n log n. Requires at least three rows.
GrowthFit growth_fit(std::span<ExpectationRow const> rows, GrowthModel model);

//! Integral of dominating_g over the real line by quadrature; the half-line
//! t > 0 is mapped onto u = n / (n + t) in (0, 1].
QuadratureResult dominating_g_integral(int n, int m, double tol);

//! 2 + m^3 pi / (2n) + 2 m^3 / (n (n - m)), from the branch limits of
//! dominating_g_antiderivative.
double dominating_g_integral_closed(int n, int m);

//---------------------------------------------------------------------------//
}  // namespace hz
