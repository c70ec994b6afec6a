//---------------------------------------------------------------------------//
//! \file verify.cpp
//! Invariant groups behind the `verify` command.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "hz/asymptotics.hpp"
#include "hz/cli.hpp"
#include "hz/montecarlo.hpp"
#include "hz/properties.hpp"

namespace hz::cli
{
namespace
{
//---------------------------------------------------------------------------//
struct Group
{
    explicit Group(std::string name) : property(std::move(name)) {}

    std::string property;
    long cases{0};
    long failures{0};
    std::ostringstream detail;

    void check(bool ok, std::string const& what)
    {
        ++cases;
        if (!ok && failures++ == 0)
            detail << what;
    }

    VerifyResult finish()
    {
        return {property, failures == 0, cases, failures, detail.str()};
    }
};

std::string num(double x)
{
    return format_double(x);
}

//---------------------------------------------------------------------------//
VerifyResult exact_small_cases()
{
    Group g("exact_small_cases");
    auto const one = expected_zeros(DegreePair{1, 1}, 1e-10);
    g.check(std::fabs(one.value - 1) <= 1e-8, "E(1,1)=" + num(one.value));
    for (int n = 1; n <= 10; ++n)
    {
        auto const r = expected_zeros(DegreePair{n, 0}, 1e-8);
        g.check(std::fabs(r.value - n) <= 1e-6,
                "E(" + std::to_string(n) + ",0)=" + num(r.value));
    }
    return g.finish();
}

VerifyResult floor_ceiling()
{
    Group g("floor_ceiling");
    double const tol = 1e-8;
    for (int n = 1; n <= 8; ++n)
    {
        for (int m = 0; m <= n; ++m)
        {
            auto const r = expected_zeros(DegreePair{n, m}, tol);
            bool const ok = r.converged && r.value >= std::max(n, m) - 10 * tol
                            && r.value <= n * n + 10 * tol;
            g.check(ok, "E(" + std::to_string(n) + "," + std::to_string(m)
                            + ")=" + num(r.value));
        }
    }
    return g.finish();
}

VerifyResult annulus_additivity()
{
    Group g("annulus_additivity");
    double const tol = 1e-9;
    for (auto deg : {DegreePair{3, 2}, DegreePair{5, 0}, DegreePair{4, 4}})
    {
        double const cuts[] = {0.1, 0.7, 1.0, 1.6, 5.0};
        for (std::size_t i = 0; i + 2 < std::size(cuts); ++i)
        {
            double const left
                = expected_zeros_annulus(deg, cuts[i], cuts[i + 1], tol).value;
            double const right
                = expected_zeros_annulus(deg, cuts[i + 1], cuts[i + 2], tol)
                      .value;
            double const whole
                = expected_zeros_annulus(deg, cuts[i], cuts[i + 2], tol).value;
            g.check(std::fabs(left + right - whole) <= 2 * tol,
                    "split at " + num(cuts[i + 1]));
            g.check(whole >= left && whole >= right,
                    "monotonicity at " + num(cuts[i + 1]));
        }
    }
    return g.finish();
}

VerifyResult planar_consistency()
{
    Group g("planar_consistency");
    double const tol = 1e-9;
    for (auto deg : {DegreePair{2, 1}, DegreePair{3, 3}, DegreePair{6, 2}})
    {
        // E = int_0^inf 2 pi rho planar(rho) d rho, outer part with rho = 1/u
        auto inner = [deg](double rho) {
            return 2 * std::numbers::pi * rho * planar_intensity(rho, deg);
        };
        auto outer = [deg](double u) {
            double const rho = 1 / u;
            return 2 * std::numbers::pi * rho * planar_intensity(rho, deg)
                   / (u * u);
        };
        double const planar = integrate_adaptive(inner, 0, 1, tol / 2).value
                              + integrate_adaptive(outer, 0, 1, tol / 2).value;
        double const radial = expected_zeros(deg, tol).value;
        g.check(std::fabs(planar - radial) <= 10 * tol,
                "planar=" + num(planar) + " radial=" + num(radial));
    }
    return g.finish();
}

VerifyResult limit_integrals()
{
    Group g("limit_integrals");
    double const T = 1e4;
    double const int_f = integral_f_via_antiderivative(T);
    g.check(std::fabs(int_f - 1) <= 1e-3, "int f=" + num(int_f));
    g.check(std::fabs(2 * int_f - 2) <= 1e-3, "int g=" + num(2 * int_f));
    auto direct = integrate_adaptive([](double t) { return f_limit(t); }, -50,
                                     50, 1e-10);
    g.check(std::fabs(direct.value + 2.0 / 50 - 1) <= 1e-3,
            "direct int f=" + num(direct.value));
    g.check(std::fabs(f_limit(0) - 1.0 / 12) <= 1e-10, "f(0)");
    g.check(std::fabs(antiderivative_F(0) - 0.5) <= 1e-10, "F(0)");
    for (double t = -30; t <= 30; t += 0.37)
    {
        g.check(g_limit(t) == 2 * f_limit(t), "g=2f at " + num(t));
        g.check(f_limit(t) >= 0, "f>=0 at " + num(t));
    }
    return g.finish();
}

VerifyResult dominating_integral()
{
    Group g("dominating_integral");
    for (auto [n, m] : {std::pair{20, 1}, std::pair{50, 3}, std::pair{200, 2}})
    {
        auto const r = dominating_g_integral(n, m, 1e-9);
        double const closed = dominating_g_integral_closed(n, m);
        g.check(std::fabs(r.value - closed) <= 1e-6 * closed,
                "n=" + std::to_string(n) + " numeric=" + num(r.value)
                    + " closed=" + num(closed));
    }
    return g.finish();
}

VerifyResult quadrature_determinism()
{
    Group g("quadrature_determinism");
    auto const a = expected_zeros(DegreePair{7, 3}, 1e-9);
    auto const b = expected_zeros(DegreePair{7, 3}, 1e-9);
    g.check(a.value == b.value && a.abs_error_estimate == b.abs_error_estimate
                && a.evaluations == b.evaluations,
            "repeat differs");
    return g.finish();
}

//---------------------------------------------------------------------------//
VerifyResult mc_structural(long samples, std::uint64_t seed)
{
    Group g("mc_structural");
    std::mt19937_64 pick(seed ^ 0x5eedULL);
    std::uniform_int_distribution<int> degree(1, 6);
    for (long i = 0; i < samples; ++i)
    {
        int n = degree(pick);
        int m = degree(pick) - 1;
        if (m > n)
            std::swap(n, m);
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        auto const draw = sample_polynomial(DegreePair{n, m}, rng);
        auto const zs = find_zeros(draw.poly);
        auto const bad = structural_violations(zs, draw.poly);
        std::string what = "sample " + std::to_string(i) + " (" + std::to_string(n)
                           + "," + std::to_string(m) + ")";
        if (!zs.complete())
            what += " incomplete";
        for (auto const& b : bad)
            what += " " + b;
        g.check(zs.complete() && bad.empty(), what);
    }
    return g.finish();
}

VerifyResult mc_oracles(long samples, std::uint64_t seed)
{
    Group g("mc_oracles");
    for (long i = 0; i < samples; ++i)
    {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        auto const lin = sample_polynomial(DegreePair{1, 1}, rng).poly;
        auto const zs = find_zeros(lin);
        Complex const exact = exact_linear_zero(lin);
        double const scale = std::max(1.0, std::abs(exact));
        g.check(zs.count() == 1
                    && std::abs(zs.zeros.front().location - exact)
                           <= 1e-8 * scale,
                "linear sample " + std::to_string(i));

        int const n = 1 + static_cast<int>(i % 8);
        auto const analytic = sample_polynomial(DegreePair{n, 0}, rng).poly;
        g.check(find_zeros(analytic).count() == n,
                "analytic degree " + std::to_string(n));

        // Rescaling every coefficient leaves the zeros in place
        auto scaled = analytic;
        for (auto& c : scaled.analytic)
            c *= 5.0;
        for (auto& c : scaled.coanalytic)
            c *= 5.0;
        auto const z1 = find_zeros(analytic);
        auto const z5 = find_zeros(scaled);
        bool same = z1.count() == z5.count();
        for (std::size_t k = 0; same && k < z1.zeros.size(); ++k)
        {
            double best = INFINITY;
            for (auto const& z : z5.zeros)
                best = std::min(best, std::abs(z.location - z1.zeros[k].location));
            same = best <= 1e-7 * z1.inclusion_radius;
        }
        g.check(same, "scale invariance degree " + std::to_string(n));
    }
    return g.finish();
}

VerifyResult mc_determinism(std::uint64_t seed)
{
    Group g("mc_determinism");
    auto const a = mc_expectation(DegreePair{3, 2}, 40, seed, 1);
    auto const b = mc_expectation(DegreePair{3, 2}, 40, seed, 3);
    g.check(a.mean == b.mean && a.std_error == b.std_error
                && a.histogram == b.histogram
                && a.degenerate_resamples == b.degenerate_resamples,
            "thread count changed the summary");
    return g.finish();
}

VerifyResult hand_instance()
{
    Group g("hand_instance");
    // z^2 + 2 conj(z): zeros 0, -2, 2 e^{+-i pi/3}
    HarmonicPolynomial h{{0, 0, 1}, {0, 2}};
    auto const zs = find_zeros(h);
    std::vector<Complex> const expected{
        {0, 0}, {-2, 0}, std::polar(2.0, std::numbers::pi / 3),
        std::polar(2.0, -std::numbers::pi / 3)};
    g.check(zs.count() == 4 && zs.complete(),
            "count=" + std::to_string(zs.count()));
    for (auto const& e : expected)
    {
        bool found = false;
        for (auto const& z : zs.zeros)
            found = found || std::abs(z.location - e) <= 1e-8;
        g.check(found, "missing zero near " + num(e.real()) + "," + num(e.imag()));
    }
    g.check(zs.signed_count() == 2,
            "orientation sum " + std::to_string(zs.signed_count()));
    return g.finish();
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<VerifyResult> run_verify_suite(long samples, std::uint64_t seed)
{
    std::vector<VerifyResult> results;
    for (auto const& t : kernel_property_fuzz(100 * samples, seed))
    {
        std::string detail = t.first_failure;
        if (t.failures > 0)
            detail += " worst=" + format_double(t.worst);
        results.push_back({"kernel_" + t.name, t.failures == 0, t.cases,
                           t.failures, detail});
    }
    results.push_back(exact_small_cases());
    results.push_back(floor_ceiling());
    results.push_back(annulus_additivity());
    results.push_back(planar_consistency());
    results.push_back(quadrature_determinism());
    results.push_back(limit_integrals());
    results.push_back(dominating_integral());
    results.push_back(mc_structural(samples, seed));
    results.push_back(mc_oracles(std::max(1L, samples / 4), seed));
    results.push_back(mc_determinism(seed));
    results.push_back(hand_instance());
    return results;
}

//---------------------------------------------------------------------------//
}  // namespace hz::cli
