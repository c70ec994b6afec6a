//---------------------------------------------------------------------------//
//! \file test_montecarlo.cpp
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "hz/montecarlo.hpp"
#include "hz/quadrature.hpp"

using namespace hz;

namespace
{
bool contains(ZeroSet const& zs, Complex z, double tol)
{
    return std::any_of(zs.zeros.begin(), zs.zeros.end(), [&](Zero const& x) {
        return std::abs(x.location - z) <= tol;
    });
}

int orientation_at(ZeroSet const& zs, Complex z)
{
    for (auto const& x : zs.zeros)
    {
        if (std::abs(x.location - z) <= 1e-8)
            return x.orientation;
    }
    return 0;
}
}  // namespace

TEST_CASE("counter-based streams")
{
    CounterRng a(42, 7);
    CounterRng b(42, 7);
    CounterRng c(42, 8);
    CounterRng d(43, 7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i)
    {
        auto const x = a();
        CHECK(x == b());
        seen.insert(x);
        seen.insert(c());
        seen.insert(d());
    }
    CHECK(seen.size() == 3000);
}

TEST_CASE("coefficient moments")
{
    long const draws = 100000;
    double sum_sq = 0;
    Complex cross{0, 0};
    CounterRng rng(1234, 0);
    for (long i = 0; i < draws; ++i)
    {
        auto const poly = sample_polynomial({1, 0}, rng).poly;
        sum_sq += std::norm(poly.analytic[0]);
        cross += poly.analytic[0] * std::conj(poly.analytic[1]);
    }
    double const margin = 3 / std::sqrt(double(draws));
    CHECK(std::fabs(sum_sq / draws - 1) <= margin);
    CHECK(std::abs(cross / double(draws)) <= margin);
}

TEST_CASE("validity and inclusion radius")
{
    HarmonicPolynomial const good{{-1, 0, 1}, {0}};
    CHECK(good.invalid_reason().empty());
    CHECK(root_inclusion_radius(good) == 2);
    CHECK(root_inclusion_radius(HarmonicPolynomial{{0, 1}, {0}}) == 1);
    CHECK(root_inclusion_radius(HarmonicPolynomial{{0, 0, 1}, {0, 2}}) == 3);

    HarmonicPolynomial const tied{{1, Complex{0, 1}}, {0, 1}};
    CHECK_FALSE(tied.invalid_reason().empty());
    CHECK_THROWS_AS(root_inclusion_radius(tied), std::invalid_argument);
    CHECK_THROWS_AS(find_zeros(tied), std::invalid_argument);
    CHECK_FALSE(HarmonicPolynomial{{1, 0}, {0}}.invalid_reason().empty());
    CHECK_FALSE(HarmonicPolynomial{{1, 2}, {0, 0, 1}}.invalid_reason().empty());
}

TEST_CASE("linear oracle")
{
    HarmonicPolynomial const h{{1, 2}, {0, 1}};
    Complex const z = exact_linear_zero(h);
    CHECK(std::abs(z - Complex{-1.0 / 3, 0}) <= 1e-15);
    CHECK(std::abs(h(z)) <= 1e-15);
    CHECK(exact_linear_zero(HarmonicPolynomial{{0, 2}, {0, 1}}) == Complex{0, 0});

    for (std::uint64_t i = 0; i < 200; ++i)
    {
        CounterRng rng(99, i);
        auto const lin = sample_polynomial({1, 1}, rng).poly;
        Complex const root = exact_linear_zero(lin);
        CHECK(std::abs(lin(root)) <= 1e-12 * std::max(1.0, std::abs(root)));
        auto const zs = find_zeros(lin);
        REQUIRE(zs.count() == 1);
        CHECK(std::abs(zs.zeros[0].location - root)
              <= 1e-9 * std::max(1.0, std::abs(root)));
    }
}

TEST_CASE("hand-solved instances")
{
    SUBCASE("z^2 - 1")
    {
        auto const zs = find_zeros(HarmonicPolynomial{{-1, 0, 1}, {0}});
        CHECK(zs.complete());
        CHECK(zs.count() == 2);
        CHECK(contains(zs, 1.0, 1e-12));
        CHECK(contains(zs, -1.0, 1e-12));
        CHECK(zs.signed_count() == 2);
    }
    SUBCASE("z^2 + 2 conj(z)")
    {
        HarmonicPolynomial const h{{0, 0, 1}, {0, 2}};
        auto const zs = find_zeros(h);
        CHECK(zs.complete());
        REQUIRE(zs.count() == 4);
        Complex const w = std::polar(2.0, std::numbers::pi / 3);
        for (Complex z : {Complex{0, 0}, Complex{-2, 0}, w, std::conj(w)})
        {
            CAPTURE(z);
            CHECK(contains(zs, z, 1e-8));
            CHECK(std::abs(z) <= zs.inclusion_radius);
        }
        CHECK(orientation_at(zs, 0.0) == -1);
        CHECK(orientation_at(zs, -2.0) == 1);
        CHECK(orientation_at(zs, w) == 1);
        CHECK(zs.signed_count() == 2);
        CHECK(structural_violations(zs, h).empty());
    }
}

TEST_CASE("structural invariants on random samples")
{
    for (std::uint64_t i = 0; i < 300; ++i)
    {
        int const n = 1 + static_cast<int>(i % 6);
        int const m = static_cast<int>((i / 6) % (n + 1));
        CounterRng rng(2024, i);
        auto const draw = sample_polynomial({n, m}, rng);
        auto const zs = find_zeros(draw.poly);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(i);
        CHECK(zs.complete());
        CHECK(structural_violations(zs, draw.poly).empty());
        for (auto const& z : zs.zeros)
            CHECK(std::abs(z.location) <= zs.inclusion_radius);
        if (m == 0)
            CHECK(zs.count() == n);
    }
}

TEST_CASE("violations are reported")
{
    HarmonicPolynomial const h{{-1, 0, 1}, {0}};
    auto zs = find_zeros(h);
    zs.zeros.pop_back();
    auto const bad = structural_violations(zs, h);
    CHECK(std::find(bad.begin(), bad.end(), "parity") != bad.end());
    CHECK(std::find(bad.begin(), bad.end(), "signed_sum") != bad.end());
}

TEST_CASE("scale invariance")
{
    for (std::uint64_t i = 0; i < 50; ++i)
    {
        CounterRng rng(5, i);
        auto const h = sample_polynomial({4, 3}, rng).poly;
        auto h5 = h;
        for (auto& c : h5.analytic)
            c *= 5.0;
        for (auto& c : h5.coanalytic)
            c *= 5.0;
        auto const a = find_zeros(h);
        auto const b = find_zeros(h5);
        REQUIRE(a.count() == b.count());
        for (auto const& z : a.zeros)
            CHECK(contains(b, z.location, 1e-7 * a.inclusion_radius));
    }
}

TEST_CASE("Monte Carlo summaries")
{
    auto const lin = mc_expectation({1, 1}, 200, 17);
    CHECK(lin.mean == 1);
    CHECK(lin.std_error == 0);
    CHECK(lin.uncertified_samples == 0);

    auto const cubic = mc_expectation({3, 0}, 200, 17);
    CHECK(cubic.mean == 3);
    CHECK(cubic.std_error == 0);
    CHECK(cubic.histogram.size() == 1);

    auto const s = mc_expectation({2, 2}, 10000, 11);
    double const quad = expected_zeros({2, 2}, 1e-9).value;
    CHECK(s.uncertified_samples == 0);
    CHECK(s.structural_failures == 0);
    CHECK(std::fabs(s.mean - quad) <= 3 * s.std_error);
    CHECK(s.min >= 2);
    CHECK(s.max <= 4);
    CHECK(s.mean >= s.min);
    CHECK(s.mean <= s.max);

    CHECK_THROWS_AS(mc_expectation({2, 1}, 0, 1), std::invalid_argument);
}

TEST_CASE("determinism across thread counts")
{
    auto const a = mc_expectation({3, 2}, 120, 77, 1);
    auto const b = mc_expectation({3, 2}, 120, 77, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.histogram == b.histogram);
    CHECK(a.min == b.min);
    CHECK(a.max == b.max);
}
