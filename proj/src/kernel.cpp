//---------------------------------------------------------------------------//
//! \file kernel.cpp
//---------------------------------------------------------------------------//
#include "hz/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hz
{
namespace
{
//---------------------------------------------------------------------------//
struct Moments
{
    double a;
    double b;
    double c;
    double spread;
};

//---------------------------------------------------------------------------//
/*!
 * Sums over weights x^i, i = 0..k, with x in (0, 1].
 *
 * The index attached to each weight is i (forward) or k - i (reversed). The
 * spread is the weighted second central moment times a, and is the same
 * for both orientations.
 */
Moments direct_moments(double x, int k, bool reversed)
{
    double a = 0;
    double b = 0;
    double c = 0;
    double xp = 1;
    int last = k;
    for (int i = 0; i <= k; ++i)
    {
        double const j = reversed ? k - i : i;
        a += xp;
        b += j * xp;
        c += j * j * xp;
        xp *= x;
        if (xp == 0)
        {
            last = i;
            break;
        }
    }

    double const mean = b / a;
    double central = 0;
    xp = 1;
    for (int i = 0; i <= last; ++i)
    {
        double const dj = (reversed ? k - i : i) - mean;
        central += dj * dj * xp;
        xp *= x;
    }
    return {a, b, c, a * central};
}

//---------------------------------------------------------------------------//
//! Closed forms as infinite sums minus their tails beyond k; requires x < 1.
Moments closed_moments(double x_in, int k, bool reversed)
{
    using real = long double;
    real const x = x_in;
    real const kp1 = static_cast<real>(k) + 1;
    real const log_x = std::log(x);
    real const q = std::exp(kp1 * log_x);
    real const one_minus_q = -std::expm1(kp1 * log_x);
    real const inv = 1 / (1 - x);
    real const inf_a = inv;
    real const inf_b = x * inv * inv;
    real const inf_c = x * (1 + x) * inv * inv * inv;

    real const a = one_minus_q * inv;
    real b = inf_b - q * (kp1 * inf_a + inf_b);
    real c = inf_c - q * (kp1 * kp1 * inf_a + 2 * kp1 * inf_b + inf_c);
    if (reversed)
    {
        real const kk = k;
        real const rb = kk * a - b;
        c = kk * kk * a - 2 * kk * b + c;
        b = rb;
    }

    real variance = inf_b - kp1 * kp1 * q / (one_minus_q * one_minus_q);
    if (variance < 0)
        variance = 0;

    return {static_cast<double>(a),
            static_cast<double>(b),
            static_cast<double>(c),
            static_cast<double>(a * a * variance)};
}

//---------------------------------------------------------------------------//
PowerSums assemble(double w, int k, double log_scale, Moments const& mom)
{
    PowerSums result;
    result.w = w;
    result.k = k;
    result.a = mom.a;
    result.b = mom.b;
    result.c = mom.c;
    result.spread = mom.spread;
    result.log_scale = log_scale;
    return result;
}

void check_sums_args(double w, int k)
{
    if (!(w > 0) || !std::isfinite(w))
        throw std::invalid_argument("power sums: w must be positive and "
                                    "finite, got "
                                    + std::to_string(w));
    if (k < 0)
        throw std::invalid_argument("power sums: negative degree "
                                    + std::to_string(k));
}

bool in_window(double w)
{
    return std::fabs(w - 1) < kClosedFormWindow;
}

//! Density from kernel terms; scale-free.
double density_from_terms(KernelTerms const& kt, double w)
{
    double const diff = kt.r1 - kt.r2;
    double const diff2 = diff * diff;
    double const den = kt.r3 * kt.r3 * std::sqrt(diff2 + 4 * kt.cross);
    if (!(den > 0))
        return 0;
    return (diff2 + 2 * kt.cross) / (w * den);
}

double diagonal_from_sums(PowerSums const& s)
{
    return std::sqrt(s.a * s.c * s.spread) / (2 * s.w * s.a * s.a);
}

//! Richardson extrapolation of the density to w = 0 from 1e-8 and 1e-9.
double small_w_limit(DegreePair deg)
{
    constexpr double h1 = 1e-8;
    constexpr double h2 = 1e-9;
    auto eval = [deg](double w) {
        return deg.diagonal() ? radial_density_diagonal(w, deg.n)
                              : radial_density_generic(w, deg);
    };
    double const v1 = eval(h1);
    double const v2 = eval(h2);
    return v2 - (v1 - v2) * h2 / (h1 - h2);
}

}  // namespace

//---------------------------------------------------------------------------//
DegreePair DegreePair::checked(int n, int m)
{
    if (n < 1)
        throw std::invalid_argument("degree n must be at least 1, got "
                                    + std::to_string(n));
    if (m < 0)
        throw std::invalid_argument("degree m must be nonnegative, got "
                                    + std::to_string(m));
    if (m > n)
        throw std::invalid_argument("degrees must satisfy n >= m, got n="
                                    + std::to_string(n)
                                    + ", m=" + std::to_string(m));
    return DegreePair{n, m};
}

double PowerSums::a_value() const
{
    return a * std::exp(log_scale);
}
double PowerSums::b_value() const
{
    return b * std::exp(log_scale);
}
double PowerSums::c_value() const
{
    return c * std::exp(log_scale);
}

//---------------------------------------------------------------------------//
PowerSums power_sums_direct(double w, int k)
{
    check_sums_args(w, k);
    if (w <= 1)
        return assemble(w, k, 0, direct_moments(w, k, false));
    return assemble(w, k, k * std::log(w), direct_moments(1 / w, k, true));
}

PowerSums power_sums_closed(double w, int k)
{
    check_sums_args(w, k);
    if (in_window(w))
        throw std::domain_error("power_sums_closed: w=" + std::to_string(w)
                                + " lies inside the direct-summation window");
    if (w < 1)
        return assemble(w, k, 0, closed_moments(w, k, false));
    return assemble(w, k, k * std::log(w), closed_moments(1 / w, k, true));
}

PowerSums power_sums(double w, int k)
{
    if (k < kDirectDegreeCutoff || in_window(w))
        return power_sums_direct(w, k);
    return power_sums_closed(w, k);
}

PowerSums power_sums_reciprocal(double u, int k)
{
    if (!(u > 0 && u <= 1))
        throw std::invalid_argument("power_sums_reciprocal: u must lie in "
                                    "(0, 1], got "
                                    + std::to_string(u));
    check_sums_args(u, k);
    double const w = 1 / u;
    double const log_scale = -k * std::log(u);
    if (k < kDirectDegreeCutoff || in_window(w) || u == 1)
        return assemble(w, k, log_scale, direct_moments(u, k, true));
    return assemble(w, k, log_scale, closed_moments(u, k, true));
}

//---------------------------------------------------------------------------//
KernelTerms kernel_terms(PowerSums const& sums_n, PowerSums const& sums_m)
{
    if (sums_n.w != sums_m.w)
        throw std::invalid_argument("kernel_terms: sums evaluated at "
                                    "different points");
    if (sums_n.k < sums_m.k)
        throw std::invalid_argument("kernel_terms: requires n >= m");

    // Bring the degree-m sums onto the degree-n scale
    double const rho = std::exp(sums_m.log_scale - sums_n.log_scale);
    double const am = rho * sums_m.a;
    double const bm = rho * sums_m.b;
    double const cm = rho * sums_m.c;
    double const dm = rho * rho * sums_m.spread;

    KernelTerms kt;
    kt.r3 = sums_n.a + am;
    kt.r1 = sums_n.spread + am * sums_n.c;
    kt.r2 = dm + sums_n.a * cm;
    kt.r12 = sums_n.b * bm;
    kt.cross = kt.r3 * (sums_n.c * dm + cm * sums_n.spread);
    kt.log_scale = sums_n.log_scale;
    return kt;
}

//---------------------------------------------------------------------------//
double radial_density_generic(double w, DegreePair deg)
{
    auto const kt = kernel_terms(power_sums(w, deg.n), power_sums(w, deg.m));
    return density_from_terms(kt, w);
}

double radial_density_diagonal(double w, int n)
{
    return diagonal_from_sums(power_sums(w, n));
}

IntensityValue radial_intensity(double w, DegreePair deg)
{
    if (!(w > 0))
        throw std::invalid_argument("radial_intensity: w must be positive");
    if (w < kSmallW)
        return {w, small_w_limit(deg)};
    double const density = deg.diagonal() ? radial_density_diagonal(w, deg.n)
                                          : radial_density_generic(w, deg);
    return {w, density};
}

double inverted_radial_density(double u, DegreePair deg)
{
    auto const sn = power_sums_reciprocal(u, deg.n);
    if (deg.diagonal())
    {
        // diagonal_from_sums divides by w; the Jacobian is w^2
        return diagonal_from_sums(sn) * sn.w * sn.w;
    }
    auto const kt = kernel_terms(sn, power_sums_reciprocal(u, deg.m));
    return density_from_terms(kt, sn.w) * sn.w * sn.w;
}

double planar_intensity(double rho, DegreePair deg)
{
    if (!(rho > 0))
        throw std::invalid_argument("planar_intensity: rho must be positive");
    return radial_intensity(rho * rho, deg).density / std::numbers::pi;
}

//---------------------------------------------------------------------------//
double scaled_integrand_t(double t, int n, int m)
{
    auto const deg = DegreePair::checked(n, m);
    if (t <= -n)
        return 0;
    double const w = 1 + t / n;
    return radial_intensity(w, deg).density / (static_cast<double>(n) * n);
}

double dominating_g(double t, int n, int m)
{
    auto const deg = DegreePair::checked(n, m);
    if (!(n > m && n > 1))
        throw std::invalid_argument("dominating_g: requires n > m and n > 1");
    if (t <= -n)
        return 0;

    double const nn = n;
    double const w = 1 + t / nn;
    auto const kt = kernel_terms(power_sums(w, deg.n), power_sums(w, deg.m));
    double const main
        = (2 * kt.r1 - kt.r2 - kt.r12) / (nn * nn * w * kt.r3 * kt.r3);

    double const m3 = static_cast<double>(m) * m * m;
    double tail;
    if (t < 0)
        tail = 2 * m3 / (nn * nn * (1 + w * w));
    else
        tail = 2 * m3 * std::exp(-(n - m + 1) * std::log(w)) / (nn * nn);
    return main + tail;
}

double dominating_g_antiderivative(double t, int n, int m)
{
    DegreePair::checked(n, m);
    if (!(n > m && n > 1))
        throw std::invalid_argument("dominating_g_antiderivative: requires "
                                    "n > m and n > 1");
    if (t <= -n)
        return 0;

    double const nn = n;
    double const w = 1 + t / nn;
    auto const sn = power_sums(w, n);
    auto const sm = power_sums(w, m);
    double const rho = std::exp(sm.log_scale - sn.log_scale);
    double const ratio = (2 * sn.b - rho * sm.b) / (sn.a + rho * sm.a);

    double const m3 = static_cast<double>(m) * m * m;
    double tail;
    if (t < 0)
        tail = 2 * m3 * std::atan(w);
    else
        tail = -2 * m3 / ((n - m) * std::exp((n - m) * std::log(w)));
    return (ratio + tail) / nn;
}

//---------------------------------------------------------------------------//
}  // namespace hz
