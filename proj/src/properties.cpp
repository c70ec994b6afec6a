//---------------------------------------------------------------------------//
//! \file properties.cpp
//---------------------------------------------------------------------------//
#include "hz/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "hz/kernel.hpp"

namespace hz
{
namespace
{
using real = long double;

class Tally
{
  public:
    explicit Tally(std::string name) { t_.name = std::move(name); }

    //! Record one case; \p excess > 0 means the property failed by that much
    template<class Describe>
    void record(double excess, Describe&& describe)
    {
        ++t_.cases;
        if (std::isnan(excess) || excess > 0)
        {
            if (t_.failures++ == 0)
                t_.first_failure = describe();
            t_.worst = std::isnan(excess) ? excess : std::max(t_.worst, excess);
        }
    }

    PropertyTally const& result() const { return t_; }

  private:
    PropertyTally t_;
};

//! Relative error beyond \p tol; an exact zero reference is measured
//! against \p fallback instead.
double rel_excess(real x, real reference, double tol, real fallback = 1e-300L)
{
    real const scale = reference != 0 ? std::fabs(reference) : fallback;
    return static_cast<double>(std::fabs(x - reference) / scale) - tol;
}

std::string describe(char const* fmt, double w, int n, int m)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, w, n, m);
    return buf;
}

//! w in (0, 8): half the draws uniform, the rest concentrated near 1.
double draw_w(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0, 1);
    double w;
    do
    {
        double const u = unit(rng);
        if (u < 0.5)
            w = 8 * unit(rng);
        else if (u < 0.8)
            w = 1 + 0.2 * (unit(rng) - 0.5);
        else
            w = std::exp(std::log(8.0) * (2 * unit(rng) - 1));
    } while (!(w > 0 && w < 8));
    return w;
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<PropertyTally> kernel_property_fuzz(long cases, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> degree(0, 200);
    std::uniform_real_distribution<double> unit(0, 1);

    Tally cauchy("cauchy_schwarz");
    Tally cross("cross_bound");
    Tally nonneg("nonnegativity");
    Tally closed("closed_vs_direct");
    Tally inversion("inversion");
    Tally diag("diagonal_path");
    Tally domination("domination");
    Tally ordering("ordering");

    for (long i = 0; i < cases; ++i)
    {
        double const w = draw_w(rng);
        int n = degree(rng);
        int m = degree(rng);
        if (n < m)
            std::swap(n, m);
        n = std::max(n, 1);

        auto const sn = power_sums(w, n);
        auto const sm = power_sums(w, m);
        auto const at = [&] { return describe("w=%.17g n=%d m=%d", w, n, m); };

        // Cauchy-Schwarz on the raw sums (scaled by a common factor)
        {
            real const ac = static_cast<real>(sn.a) * sn.c;
            real const bb = static_cast<real>(sn.b) * sn.b;
            cauchy.record(static_cast<double>((bb - ac) / std::max(ac, 1e-300L))
                              - 1e-13,
                          at);
        }

        real const rho = std::exp(static_cast<real>(sm.log_scale)
                                  - sn.log_scale);
        real const an = sn.a, bn = sn.b, cn = sn.c;
        real const am = rho * sm.a, bm = rho * sm.b, cm = rho * sm.c;

        {
            real const lhs = (an + am) * cn * cm;
            real const rhs = cn * bm * bm + cm * bn * bn;
            cross.record(static_cast<double>((rhs - lhs)
                                             / std::max(lhs, 1e-300L))
                             - 1e-12,
                         at);
        }
        {
            real const lhs = bn * cm;
            real const rhs = bm * cn;
            ordering.record(static_cast<double>((lhs - rhs)
                                                / std::max(rhs, 1e-300L))
                                - 1e-12,
                            at);
        }
        {
            auto const kt = kernel_terms(sn, sm);
            double const density = radial_intensity(w, DegreePair{n, m}).density;
            bool const ok = kt.r1 >= 0 && kt.r2 >= 0 && kt.cross >= 0
                            && std::isfinite(density) && density >= 0;
            nonneg.record(ok ? -1.0 : 1.0, at);
        }
        {
            double const a = radial_density_diagonal(w, n);
            double const b = radial_density_generic(w, DegreePair{n, n});
            diag.record(rel_excess(a, b, 1e-10), at);
        }

        // Closed forms against direct sums, away from w = 1, k up to 1000
        {
            double wc;
            do
            {
                wc = draw_w(rng);
            } while (std::fabs(wc - 1) < kClosedFormWindow);
            int const k = static_cast<int>(unit(rng) * 1001);
            auto const c = power_sums_closed(wc, k);
            auto const d = power_sums_direct(wc, k);
            double const err = std::max({rel_excess(c.a, d.a, 0),
                                         rel_excess(c.b, d.b, 0, d.a),
                                         rel_excess(c.c, d.c, 0, d.a)});
            closed.record(err - 1e-12,
                          [&] { return describe("w=%.17g k=%d (m=%d)", wc, k, 0); });
        }

        // w^k a_k(1/w) and its b, c counterparts
        {
            double const u = std::min(w, 1 / w);
            double const big = 1 / u;
            auto const su = power_sums(u, n);
            auto const sw = power_sums(big, n);
            real const k = n;
            real const a = su.a, b = su.b, c = su.c;
            double const err = std::max(
                {rel_excess(sw.a, a, 0),
                 rel_excess(sw.b, k * a - b, 0),
                 rel_excess(sw.c, k * k * a - 2 * k * b + c, 0)});
            inversion.record(err - 1e-12, at);
        }

        // Domination needs n > m and n > 1
        if (n > m && n > 1)
        {
            double const t = unit(rng) < 0.5 ? n * (5 * unit(rng) - 1)
                                              : 4 * (unit(rng) - 0.5);
            double const f = scaled_integrand_t(t, n, m);
            double const g = dominating_g(t, n, m);
            domination.record(
                (f - g) / std::max(std::fabs(g), 1e-300) - 1e-12, [&] {
                    return describe("t=%.17g n=%d m=%d", t, n, m);
                });
        }
    }

    return {cauchy.result(),
            cross.result(),
            nonneg.result(),
            closed.result(),
            inversion.result(),
            diag.result(),
            domination.result(),
            ordering.result()};
}

//---------------------------------------------------------------------------//
}  // namespace hz
