//---------------------------------------------------------------------------//
//! \file hz/kernel.hpp
//! First-intensity kernel for random harmonic polynomials
//! h(z) = p_n(z) + conj(q_m(z)) with i.i.d. standard complex Gaussian
//! coefficients.
//---------------------------------------------------------------------------//
#pragma once

namespace hz
{
//---------------------------------------------------------------------------//
/*!
 * Degrees of the analytic part (n) and the conjugated part (m).
 *
 * The convention n >= m is enforced; n >= 1.
 */
struct DegreePair
{
    int n{1};
    int m{0};

    //! Construct and validate, throwing std::invalid_argument on n < 1,
    //! m < 0 or m > n.
    static DegreePair checked(int n, int m);

    bool diagonal() const { return n == m; }
};

//---------------------------------------------------------------------------//
/*!
 * Weighted geometric sums at a point w > 0:
 *
 *   a = sum_{j=0..k} w^j,  b = sum_{j=1..k} j w^j,  c = sum_{j=1..k} j^2 w^j
 *
 * and the Cauchy-Schwarz gap spread = a*c - b^2 >= 0.
 *
 * For w > 1 the sums are stored relative to w^k: the true value of a (and
 * b, c) is \c a * exp(log_scale), and the true spread is
 * \c spread * exp(2*log_scale). For w <= 1, log_scale is zero. This keeps
 * every stored field finite for degrees up to 1e5 and beyond; the
 * intensity depends only on ratios, so the scale cancels.
 */
struct PowerSums
{
    double w{1};
    int k{0};
    double a{1};
    double b{0};
    double c{0};
    double spread{0};
    double log_scale{0};

    double a_value() const;
    double b_value() const;
    double c_value() const;
};

//! Half-width of the window around w = 1 where closed forms are rejected.
inline constexpr double kClosedFormWindow = 0.05;
//! Degrees below this always use direct summation in power_sums().
inline constexpr int kDirectDegreeCutoff = 32;

//! O(k) summation. For w > 1 the sums run over u = 1/w with reversed
//! weights, e.g. b = w^k * sum_i (k - i) u^i.
PowerSums power_sums_direct(double w, int k);

//! O(1) closed forms. Throws std::domain_error inside the window
//! |w - 1| < kClosedFormWindow.
PowerSums power_sums_closed(double w, int k);

//! Dispatcher used by the intensity: direct near w = 1 and for small k,
//! closed forms elsewhere.
PowerSums power_sums(double w, int k);

//! Sums at w = 1/u evaluated from u in (0, 1] without forming 1/u.
PowerSums power_sums_reciprocal(double u, int k);

//---------------------------------------------------------------------------//
/*!
 * The four kernel quantities
 *
 *   r3  = a_n + a_m
 *   r1  = r3 c_n - b_n^2
 *   r2  = r3 c_m - b_m^2
 *   r12 = b_n b_m
 *
 * plus \c cross = r1 r2 - r12^2, which is assembled from nonnegative parts
 * (r3 (c_n spread_m + c_m spread_n)) so it never cancels.
 *
 * Scaling: r3 carries exp(log_scale); r1, r2, r12 carry exp(2 log_scale);
 * cross carries exp(4 log_scale).
 */
struct KernelTerms
{
    double r1{0};
    double r2{0};
    double r12{0};
    double r3{1};
    double cross{0};
    double log_scale{0};
};

//! Combine sums of degree n and m at the same w. Throws
//! std::invalid_argument if the points differ or sums_n.k < sums_m.k.
KernelTerms kernel_terms(PowerSums const& sums_n, PowerSums const& sums_m);

//---------------------------------------------------------------------------//
//! Density of expected zeros with respect to w = |z|^2.
struct IntensityValue
{
    double w{0};
    double density{0};
};

//! Below this w the density is replaced by its extrapolated w -> 0 limit.
inline constexpr double kSmallW = 1e-12;

//! E N = integral_0^inf radial_intensity(w).density dw.
IntensityValue radial_intensity(double w, DegreePair deg);

//! Generic (r1, r2, r12, r3) formula, without the diagonal shortcut.
double radial_density_generic(double w, DegreePair deg);

//! Diagonal shortcut sqrt(a c (a c - b^2)) / (2 w a^2); requires n == m.
double radial_density_diagonal(double w, int n);

//! radial density at w = 1/u times the Jacobian 1/u^2, computed from u.
//! Integrating over u in (0, 1] gives the expected count in |z| > 1.
double inverted_radial_density(double u, DegreePair deg);

//! Density per unit area at |z| = rho: radial_intensity(rho^2) / pi.
double planar_intensity(double rho, DegreePair deg);

//! Normalized integrand in t = n (|z|^2 - 1): radial(1 + t/n) / n^2, zero
//! for t <= -n. Its integral over the real line is E N / n.
double scaled_integrand_t(double t, int n, int m);

//! Integrable majorant of scaled_integrand_t (requires n > m, n > 1).
double dominating_g(double t, int n, int m);

//! Closed antiderivative of dominating_g on each of the branches t < 0 and
//! t > 0 (zero for t <= -n).
double dominating_g_antiderivative(double t, int n, int m);

//---------------------------------------------------------------------------//
}  // namespace hz
