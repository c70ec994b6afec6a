//---------------------------------------------------------------------------//
//! \file quadrature.cpp
//---------------------------------------------------------------------------//
#include "hz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hz
{
namespace
{
//---------------------------------------------------------------------------//
struct Segment
{
    double lo;
    double hi;
    double value;
    double error;
    long id;
};

struct WorseFirst
{
    bool operator()(Segment const& x, Segment const& y) const
    {
        if (x.error != y.error)
            return x.error < y.error;
        return x.id > y.id;
    }
};

constexpr int kRuleSize = 15;

//! One Kronrod-15 / Gauss-7 panel on [lo, hi].
Segment
apply_rule(std::function<double(double)> const& f, double lo, double hi, long id)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, kRuleSize>;
    using gauss = boost::math::quadrature::gauss<double, (kRuleSize - 1) / 2>;
    auto const& x = kronrod::abscissa();
    auto const& wk = kronrod::weights();
    auto const& wg = gauss::weights();

    double const mid = 0.5 * (lo + hi);
    double const half = 0.5 * (hi - lo);

    double const f0 = f(mid);
    double k_sum = f0 * wk[0];
    double g_sum = f0 * wg[0];
    for (std::size_t i = 1; i < x.size(); ++i)
    {
        double const pair = f(mid + half * x[i]) + f(mid - half * x[i]);
        k_sum += pair * wk[i];
        if (i % 2 == 0)
            g_sum += pair * wg[i / 2];
    }
    double const value = half * k_sum;
    double const error = std::fabs(half * (k_sum - g_sum));
    return {lo, hi, value, error, id};
}

double inverse_or_zero(double w)
{
    return std::isinf(w) ? 0.0 : 1 / w;
}

void accumulate(QuadratureResult& total, QuadratureResult const& part)
{
    total.value += part.value;
    total.abs_error_estimate += part.abs_error_estimate;
    total.evaluations += part.evaluations;
    total.converged = total.converged && part.converged;
}

}  // namespace

//---------------------------------------------------------------------------//
QuadratureResult integrate_adaptive(std::function<double(double)> const& f,
                                    double lo,
                                    double hi,
                                    double tol,
                                    long max_evaluations)
{
    if (!(lo < hi))
        throw std::invalid_argument("integrate_adaptive: requires lo < hi");
    if (!(tol > 0))
        throw std::invalid_argument("integrate_adaptive: tol must be "
                                    "positive");

    // Max-heap on error estimate; ties go to the older segment
    std::vector<Segment> heap;
    WorseFirst const order;
    long next_id = 0;
    long evaluations = kRuleSize;

    heap.push_back(apply_rule(f, lo, hi, next_id++));
    double total_error = heap.front().error;

    auto exact_error = [&heap] {
        double sum = 0;
        for (auto const& s : heap)
            sum += s.error;
        return sum;
    };

    auto finish = [&](bool converged) {
        std::sort(heap.begin(), heap.end(), [](auto const& x, auto const& y) {
            return x.lo < y.lo;
        });
        QuadratureResult result;
        for (auto const& s : heap)
        {
            result.value += s.value;
            result.abs_error_estimate += s.error;
        }
        result.evaluations = evaluations;
        result.converged = converged && result.abs_error_estimate <= tol;
        return result;
    };

    while (true)
    {
        if (total_error <= tol)
        {
            // The running total drifts by rounding; confirm before stopping
            total_error = exact_error();
            if (total_error <= tol)
                return finish(true);
        }
        if (evaluations + 2 * kRuleSize > max_evaluations)
            return finish(false);

        Segment const worst = heap.front();
        double const mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi))
        {
            // Worst segment is at machine resolution; nothing left to refine
            return finish(false);
        }
        std::pop_heap(heap.begin(), heap.end(), order);
        heap.pop_back();

        for (auto const& [a, b] : {std::pair{worst.lo, mid},
                                   std::pair{mid, worst.hi}})
        {
            Segment const piece = apply_rule(f, a, b, next_id++);
            total_error += piece.error;
            heap.push_back(piece);
            std::push_heap(heap.begin(), heap.end(), order);
        }
        total_error -= worst.error;
        evaluations += 2 * kRuleSize;
    }
}

//---------------------------------------------------------------------------//
double default_tolerance(DegreePair deg)
{
    return deg.n <= 1000 ? 1e-8 : 1e-6;
}

QuadratureResult expected_zeros(DegreePair deg, double tol)
{
    return expected_zeros_annulus(
        deg, 0, std::numeric_limits<double>::infinity(), tol);
}

QuadratureResult
expected_zeros_annulus(DegreePair deg, double w_lo, double w_hi, double tol)
{
    if (!(w_lo >= 0) || std::isnan(w_hi) || w_hi < w_lo)
        throw std::invalid_argument("expected_zeros_annulus: requires "
                                    "0 <= w_lo <= w_hi");
    QuadratureResult total;
    total.converged = true;
    if (w_lo == w_hi)
        return total;

    bool const has_inner = w_lo < 1;
    bool const has_outer = w_hi > 1;
    double const part_tol = (has_inner && has_outer) ? tol / 2 : tol;

    if (has_inner)
    {
        auto inner = [deg](double w) {
            return radial_intensity(w, deg).density;
        };
        accumulate(total,
                   integrate_adaptive(inner, w_lo, std::min(w_hi, 1.0),
                                      part_tol));
    }
    if (has_outer)
    {
        auto outer = [deg](double u) {
            return inverted_radial_density(u, deg);
        };
        double const u_lo = inverse_or_zero(w_hi);
        double const u_hi = 1 / std::max(w_lo, 1.0);
        accumulate(total, integrate_adaptive(outer, u_lo, u_hi, part_tol));
    }
    return total;
}

//---------------------------------------------------------------------------//
ExpectationRow make_row(DegreePair deg, QuadratureResult const& result)
{
    ExpectationRow row;
    row.n = deg.n;
    row.m = deg.m;
    row.expectation = result.value;
    row.error = result.abs_error_estimate;
    row.ratio_n = result.value / deg.n;
    if (deg.n >= 2)
        row.ratio_nlogn = result.value / (deg.n * std::log(double(deg.n)));
    row.converged = result.converged;
    return row;
}

double scaled_expectation(DegreePair deg, ScalingMode mode, double tol)
{
    if (mode == ScalingMode::diagonal && !(deg.diagonal() && deg.n >= 2))
        throw std::invalid_argument("scaled_expectation: diagonal mode "
                                    "requires n == m >= 2");
    auto const result = expected_zeros(deg, tol);
    if (!result.converged)
        throw std::runtime_error("scaled_expectation: quadrature did not "
                                 "converge");
    auto const row = make_row(deg, result);
    return mode == ScalingMode::fixed_m ? row.ratio_n : row.ratio_nlogn;
}

//---------------------------------------------------------------------------//
}  // namespace hz
