//---------------------------------------------------------------------------//
//! \file asymptotics.cpp
//---------------------------------------------------------------------------//
#include "hz/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <iterator>
#include <numbers>
#include <stdexcept>

namespace hz
{
namespace
{
double horner(std::initializer_list<double> coeffs, double x)
{
    double result = 0;
    for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it)
        result = result * x + *it;
    return result;
}

template<class Evaluate>
ConvergenceTable build_table(std::span<int const> ns,
                             std::span<double const> xs,
                             Evaluate&& eval)
{
    ConvergenceTable table;
    std::vector<double> previous(xs.size(), -1);
    for (int n : ns)
    {
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            auto [value, limit] = eval(n, xs[i]);
            ConvergenceRow row{n, xs[i], value, limit, std::fabs(value - limit),
                               false};
            if (previous[i] >= 0 && row.deviation > previous[i])
            {
                row.non_monotone = true;
                ++table.violations;
            }
            previous[i] = row.deviation;
            table.rows.push_back(row);
        }
    }
    return table;
}

}  // namespace

//---------------------------------------------------------------------------//
double f_limit(double t)
{
    double const at = std::fabs(t);
    if (at < kSeriesSwitch)
    {
        return horner({1.0 / 12,
                       -1.0 / 240,
                       1.0 / 6048,
                       -1.0 / 172800,
                       1.0 / 5322240},
                      t * t);
    }
    double const s = std::sinh(at / 2);
    return 1 / (t * t) - 1 / (4 * s * s);
}

double g_limit(double t)
{
    return 2 * f_limit(t);
}

double antiderivative_F(double t)
{
    if (std::fabs(t) < kSeriesSwitch)
    {
        double const t2 = t * t;
        return 0.5
               + t
                     * horner({1.0 / 12,
                               -1.0 / 720,
                               1.0 / 30240,
                               -1.0 / 1209600,
                               1.0 / 47900160},
                              t2);
    }
    return -1 / std::expm1(-t) - 1 / t;
}

double integral_f_via_antiderivative(double T)
{
    if (!(T > 0))
        throw std::invalid_argument("integral_f_via_antiderivative: T must "
                                    "be positive");
    return antiderivative_F(T) - antiderivative_F(-T) + 2 / T;
}

//---------------------------------------------------------------------------//
double limit_density_diag(double w)
{
    if (!(w > 0))
        throw std::invalid_argument("limit_density_diag: w must be positive");
    if (w == 1)
        throw std::domain_error("limit_density_diag: the one-sided limits "
                                "differ at w = 1");
    if (w < 1)
        return 0;
    return 1 / (2 * (w - 1) * std::sqrt(w));
}

double alpha_constant()
{
    constexpr double e = std::numbers::e;
    return 1 - e / ((e - 1) * (e - 1));
}

double diagonal_lower_constant()
{
    return std::sqrt(alpha_constant()) / (8 * std::numbers::sqrt2);
}

DiagonalBoundTerms diagonal_bound_terms(double w, int n)
{
    if (n < 1)
        throw std::invalid_argument("diagonal_bound_terms: n must be >= 1");
    auto const s = power_sums(w, n);
    double const nn = n;
    DiagonalBoundTerms result;
    result.cn_ratio = s.c / (nn * nn * s.a);
    // w^n / a^2 with a = a_s exp(L): exp(n log w - 2 L) / a_s^2
    double const ratio = std::exp(nn * std::log(w) - 2 * s.log_scale)
                         / (s.a * s.a);
    result.jacobian_term = 1 - (nn + 1) * (nn + 1) * ratio;
    return result;
}

//---------------------------------------------------------------------------//
ConvergenceTable convergence_table_fixed_m(int m,
                                           std::span<int const> ns,
                                           std::span<double const> ts)
{
    return build_table(ns, ts, [m](int n, double t) {
        return std::pair{scaled_integrand_t(t, n, m), f_limit(t)};
    });
}

ConvergenceTable convergence_table_diagonal(std::span<int const> ns,
                                            std::span<double const> ws)
{
    return build_table(ns, ws, [](int n, double w) {
        auto const deg = DegreePair::checked(n, n);
        return std::pair{radial_intensity(w, deg).density / n,
                         limit_density_diag(w)};
    });
}

//---------------------------------------------------------------------------//
GrowthFit growth_fit(std::span<ExpectationRow const> rows, GrowthModel model)
{
    if (rows.size() < 3)
        throw std::invalid_argument("growth_fit: needs at least three rows");

    auto abscissa = [model](ExpectationRow const& r) {
        double const n = r.n;
        return model == GrowthModel::linear_in_n ? n : n * std::log(n);
    };

    double sxy = 0;
    double sxx = 0;
    for (auto const& r : rows)
    {
        double const x = abscissa(r);
        sxy += x * r.expectation;
        sxx += x * x;
    }
    GrowthFit fit{model, sxy / sxx, 0};
    for (auto const& r : rows)
    {
        double const predicted = fit.slope * abscissa(r);
        fit.residual = std::max(
            fit.residual, std::fabs(r.expectation - predicted) / predicted);
    }
    return fit;
}

//---------------------------------------------------------------------------//
QuadratureResult dominating_g_integral(int n, int m, double tol)
{
    double const nn = n;
    auto negative = [n, m](double t) { return dominating_g(t, n, m); };
    // t = n (1/u - 1), dt = n du / u^2
    auto positive = [n, m, nn](double u) {
        return dominating_g(nn * (1 / u - 1), n, m) * nn / (u * u);
    };
    auto result = integrate_adaptive(negative, -nn, 0, tol / 2);
    auto const right = integrate_adaptive(positive, 0, 1, tol / 2);
    result.value += right.value;
    result.abs_error_estimate += right.abs_error_estimate;
    result.evaluations += right.evaluations;
    result.converged = result.converged && right.converged;
    return result;
}

double dominating_g_integral_closed(int n, int m)
{
    double const nn = n;
    double const m3 = static_cast<double>(m) * m * m;
    return 2 + m3 * std::numbers::pi / (2 * nn) + 2 * m3 / (nn * (n - m));
}

//---------------------------------------------------------------------------//
}  // namespace hz
