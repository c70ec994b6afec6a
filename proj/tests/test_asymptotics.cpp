//---------------------------------------------------------------------------//
//! \file test_asymptotics.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "hz/asymptotics.hpp"

using namespace hz;
using doctest::Approx;

TEST_CASE("limit densities")
{
    double const e = std::numbers::e;
    CHECK(std::fabs(f_limit(0) - 1.0 / 12) <= 1e-15);
    CHECK(f_limit(1) == Approx((e * e - 3 * e + 1) / ((e - 1) * (e - 1))).epsilon(1e-14));
    CHECK(f_limit(1) == Approx(0.07932640579220768).epsilon(1e-14));
    CHECK(std::fabs(g_limit(0) - 1.0 / 6) <= 1e-15);

    // Even function; both branches agree at the series switch
    for (double t : {0.001, 0.05, 0.5, 3.0, 40.0, 700.0})
    {
        CHECK(f_limit(-t) == f_limit(t));
        CHECK(g_limit(t) == 2 * f_limit(t));
        CHECK(f_limit(t) >= 0);
    }
    double const below = f_limit(std::nextafter(kSeriesSwitch, 0.0));
    double const above = f_limit(kSeriesSwitch);
    CHECK(below == Approx(above).epsilon(1e-14));

    // Closed form of f = (e^{2t} - (t^2 + 2) e^t + 1) / (t^2 (e^t - 1)^2)
    for (double t : {0.2, 1.7, 6.0})
    {
        double const et = std::exp(t);
        double const closed = (et * et - (t * t + 2) * et + 1)
                              / (t * t * (et - 1) * (et - 1));
        CHECK(f_limit(t) == Approx(closed).epsilon(1e-12));
    }
}

TEST_CASE("antiderivative")
{
    CHECK(std::fabs(antiderivative_F(0) - 0.5) <= 1e-15);
    CHECK(antiderivative_F(50) == Approx(49.0 / 50).epsilon(1e-14));
    CHECK(std::fabs(antiderivative_F(1e10) - 1) <= 1e-9);
    CHECK(std::fabs(antiderivative_F(-1e10)) <= 1e-9);

    for (double t : {-20.0, -1.5, -0.05, 0.02, 0.7, 9.0})
    {
        double const h = 1e-5;
        double const slope
            = (antiderivative_F(t + h) - antiderivative_F(t - h)) / (2 * h);
        CHECK(slope == Approx(f_limit(t)).epsilon(1e-7));
    }

    double const total = integral_f_via_antiderivative(1e4);
    CHECK(std::fabs(total - 1) <= 1e-3);
    CHECK(std::fabs(2 * total - 2) <= 1e-3);
    CHECK_THROWS_AS(integral_f_via_antiderivative(0), std::invalid_argument);

    auto const direct = integrate_adaptive([](double t) { return f_limit(t); },
                                           -50, 50, 1e-11);
    CHECK(std::fabs(direct.value + 2.0 / 50 - 1) <= 1e-3);
}

TEST_CASE("diagonal limit density")
{
    CHECK(limit_density_diag(0.5) == 0);
    CHECK(limit_density_diag(2) == Approx(1 / (2 * std::numbers::sqrt2)).epsilon(1e-15));
    CHECK(limit_density_diag(4) == Approx(1.0 / 12).epsilon(1e-15));
    CHECK_THROWS_AS(limit_density_diag(1), std::domain_error);
    CHECK_THROWS_AS(limit_density_diag(0), std::invalid_argument);

    // Logarithmic growth of the mass near w = 1
    for (double delta : {1e-2, 1e-3, 1e-4})
    {
        auto const r = integrate_adaptive(
            [](double w) { return limit_density_diag(w); }, 1 + delta, 4, 1e-10);
        double const s = std::sqrt(1 + delta);
        double const closed = 0.5 * (std::log(1.0 / 3) - std::log((s - 1) / (s + 1)));
        CHECK(r.value == Approx(closed).epsilon(1e-8));
        double const growth = std::fabs(std::log(delta)) / 2;
        CHECK(std::fabs(r.value - growth) <= 0.1 * growth);
    }
}

TEST_CASE("constants")
{
    double const e = std::numbers::e;
    CHECK(alpha_constant() == Approx(1 - e / ((e - 1) * (e - 1))));
    CHECK(alpha_constant() == Approx(0.0793).epsilon(1e-3));
    CHECK(diagonal_lower_constant() == Approx(0.0249).epsilon(1e-2));
}

TEST_CASE("diagonal bound terms")
{
    for (int n : {5, 50, 400, 3000})
    {
        CAPTURE(n);
        double const start = 1 + 1.0 / n;
        double const min_term = diagonal_bound_terms(start, n).jacobian_term;
        for (double w : {0.05, 0.5, 0.97, 1.03, start, 1.5, 3.0, 20.0})
        {
            CAPTURE(w);
            auto const t = diagonal_bound_terms(w, n);
            CHECK(t.cn_ratio <= 1);
            CHECK(t.jacobian_term > 0);
            // 1 - (n+1)^2 w^n / a^2 rounds to 1 once the ratio drops below
            // half an ulp
            CHECK(t.jacobian_term <= 1);
            if (w >= start)
            {
                CHECK(t.cn_ratio >= 1.0 / 16);
                CHECK(t.jacobian_term >= min_term * (1 - 1e-12));
                if (n >= 50)
                    CHECK(t.jacobian_term >= alpha_constant() / 2);
            }
            if (std::fabs(w - 1) >= 0.05)
            {
                auto const s = power_sums(w, n);
                double const lhs = s.spread / (w * s.a * s.a);
                double const rhs = t.jacobian_term / ((w - 1) * (w - 1));
                CHECK(lhs == Approx(rhs).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("convergence tables")
{
    SUBCASE("fixed m")
    {
        std::vector<int> const ns{100, 1000, 10000};
        std::vector<double> const ts{1.0};
        auto const table = convergence_table_fixed_m(0, ns, ts);
        REQUIRE(table.rows.size() == 3);
        CHECK(table.violations == 0);
        CHECK(table.rows[2].deviation < table.rows[0].deviation);
        CHECK(table.rows[2].deviation < 1e-3);
    }
    SUBCASE("diagonal")
    {
        std::vector<int> const ns{2000};
        std::vector<double> const ws{0.5, 2.0};
        auto const table = convergence_table_diagonal(ns, ws);
        REQUIRE(table.rows.size() == 2);
        CHECK(table.rows[0].value < 0.01);
        CHECK(table.rows[1].value == Approx(0.3535534).epsilon(0.05));
    }
}

TEST_CASE("growth fit")
{
    std::vector<ExpectationRow> exact;
    for (int n : {10, 20, 40, 80})
        exact.push_back({n, 0, double(n), 0, 1, 0, true});
    auto const fit = growth_fit(exact, GrowthModel::linear_in_n);
    CHECK(fit.slope == Approx(1).epsilon(1e-15));
    CHECK(fit.residual <= 1e-15);
    CHECK_THROWS_AS(growth_fit(std::span(exact).first(2), GrowthModel::linear_in_n),
                    std::invalid_argument);

    std::vector<ExpectationRow> analytic;
    for (int n : {5, 10, 20, 40})
        analytic.push_back(make_row({n, 0}, expected_zeros({n, 0}, 1e-9)));
    CHECK(growth_fit(analytic, GrowthModel::linear_in_n).slope
          == Approx(1).epsilon(1e-6));

    std::vector<ExpectationRow> diagonal;
    for (int n : {64, 128, 256, 512})
        diagonal.push_back(make_row({n, n}, expected_zeros({n, n}, 1e-8)));
    double const slope = growth_fit(diagonal, GrowthModel::linear_in_nlogn).slope;
    CHECK(slope >= 0.02);
    CHECK(slope <= 1.0);
}

TEST_CASE("integral of the dominating function")
{
    for (auto [n, m] : {std::pair{10, 1}, std::pair{30, 2}, std::pair{100, 5}})
    {
        CAPTURE(n);
        auto const r = dominating_g_integral(n, m, 1e-10);
        CHECK(r.converged);
        CHECK(r.value == Approx(dominating_g_integral_closed(n, m)).epsilon(1e-7));
    }
    // The finite-n constant tends to 2
    CHECK(dominating_g_integral_closed(10, 0) == 2);
    CHECK(std::fabs(dominating_g_integral_closed(1'000'000, 2) - 2) < 1e-4);
    CHECK(dominating_g_integral(2000, 1, 1e-9).value == Approx(2).epsilon(1e-2));
}
