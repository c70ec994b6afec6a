//---------------------------------------------------------------------------//
//! \file montecarlo.cpp
//---------------------------------------------------------------------------//
#include "hz/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace hz
{
namespace
{
//---------------------------------------------------------------------------//
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::uint64_t splitmix64(std::uint64_t x)
{
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Complex horner(std::vector<Complex> const& c, Complex z)
{
    Complex result = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        result = result * z + *it;
    return result;
}

Complex horner_derivative(std::vector<Complex> const& c, Complex z)
{
    Complex result = 0;
    for (std::size_t j = c.size(); j-- > 1;)
        result = result * z + static_cast<double>(j) * c[j];
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * Taylor coefficients of a polynomial about z0, with a rounding bound.
 *
 * \c mag[k] is the k-th Taylor coefficient of sum |c_j| x^j about |z0|,
 * which dominates every term that contributes to coeff[k]; the rounding
 * error of coeff[k] is a small multiple of (degree + 2) eps mag[k].
 */
struct Shifted
{
    std::vector<Complex> coeff;
    std::vector<double> mag;
};

void taylor_shift(std::vector<Complex> const& c, Complex z0, Shifted& out)
{
    std::size_t const d = c.size() - 1;
    out.coeff = c;
    out.mag.resize(c.size());
    for (std::size_t j = 0; j <= d; ++j)
        out.mag[j] = std::abs(c[j]);
    double const r0 = std::abs(z0);
    for (std::size_t k = 0; k < d; ++k)
    {
        for (std::size_t j = d; j-- > k;)
        {
            out.coeff[j] += z0 * out.coeff[j + 1];
            out.mag[j] += r0 * out.mag[j + 1];
        }
    }
}

//---------------------------------------------------------------------------//
//! Solve A d + conj(B d) = -v for d.
Complex linear_solve(Complex A, Complex B, Complex v)
{
    double const det = std::norm(A) - std::norm(B);
    return (-v * std::conj(A) + std::conj(B) * std::conj(v)) / det;
}

//---------------------------------------------------------------------------//
//! Local expansion of h about a point, with rigorous-ish one-sided bounds.
class LocalModel
{
  public:
    LocalModel(HarmonicPolynomial const& h, Complex z0)
    {
        taylor_shift(h.analytic, z0, p_);
        taylor_shift(h.coanalytic, z0, q_);
        gamma_ = 8 * (h.n() + 2) * kEps;
        value_ = p_.coeff[0] + std::conj(q_.coeff[0]);
        value_err_ = gamma_ * (p_.mag[0] + q_.mag[0]);
    }

    Complex value() const { return value_; }
    double value_upper() const { return std::abs(value_) + value_err_; }
    double value_lower() const { return std::abs(value_) - value_err_; }

    //! Upper bound of |p_k| + |q_k|
    double coeff_upper(std::size_t k) const
    {
        double s = 0;
        if (k < p_.coeff.size())
            s += std::abs(p_.coeff[k]) + gamma_ * p_.mag[k];
        if (k < q_.coeff.size())
            s += std::abs(q_.coeff[k]) + gamma_ * q_.mag[k];
        return s;
    }

    //! sup |h(z0 + d) - h(z0)| over |d| <= r
    double variation(double r) const
    {
        double s = 0;
        double rk = r;
        for (std::size_t k = 1; k < degree_span(); ++k, rk *= r)
            s += coeff_upper(k) * rk;
        return s;
    }

    //! sup of the degree >= 2 part of h(z0 + d) over |d| <= r
    double tail_variation(double r) const
    {
        double s = 0;
        double rk = r * r;
        for (std::size_t k = 2; k < degree_span(); ++k, rk *= r)
            s += coeff_upper(k) * rk;
        return s;
    }

    //! Lower bound on min |h(z0 + d)| over |d| <= r from the linear model:
    //! |h0 + L d| = |L (d - s)| >= sigma (|s| - r) with s the Newton step
    double linear_lower(double r) const
    {
        double const sigma
            = std::fabs(std::abs(p_.coeff[1]) - linear_q());
        if (!(sigma > 0))
            return 0;
        double const step
            = std::abs(linear_solve(p_.coeff[1], linear_q_value(), value_))
              * (1 - 1e-12);
        return sigma * (step - r) - value_err_ - linear_err() * r;
    }

    //! sup |p'(z0 + d) - p'(z0)| + |q'(z0 + d) - q'(z0)| over |d| <= r
    double derivative_variation(double r) const
    {
        double s = 0;
        double rk = r;
        for (std::size_t k = 2; k < degree_span(); ++k, rk *= r)
            s += static_cast<double>(k) * coeff_upper(k) * rk;
        return s;
    }

    //! Lower bound on the smallest singular value of the linear part
    double sigma_lower() const
    {
        return std::max(0.0, std::fabs(std::abs(p_.coeff[1]) - linear_q())
                                 - linear_err());
    }

    int orientation() const
    {
        return std::abs(p_.coeff[1]) > linear_q() ? 1 : -1;
    }

    Complex linear_p() const { return p_.coeff[1]; }
    Complex linear_q_value() const
    {
        return q_.coeff.size() > 1 ? q_.coeff[1] : Complex{};
    }

  private:
    std::size_t degree_span() const
    {
        return std::max(p_.coeff.size(), q_.coeff.size());
    }
    double linear_q() const { return std::abs(linear_q_value()); }
    double linear_err() const
    {
        return gamma_ * (p_.mag[1] + (q_.mag.size() > 1 ? q_.mag[1] : 0));
    }

    Shifted p_;
    Shifted q_;
    double gamma_;
    Complex value_;
    double value_err_;
};


struct NewtonOutcome
{
    Complex z;
    bool converged;
};

NewtonOutcome
newton(HarmonicPolynomial const& h, Complex z, int iterations, double radius)
{
    for (int it = 0; it < iterations; ++it)
    {
        Complex const A = h.dp(z);
        Complex const B = h.dq(z);
        if (std::norm(A) == std::norm(B))
            return {z, false};
        Complex const step = linear_solve(A, B, h(z));
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
            return {z, false};
        z += step;
        if (std::abs(z) > 4 * radius + 1)
            return {z, false};
        if (std::abs(step) <= 4 * kEps * std::max(1.0, std::abs(z)))
            return {z, true};
    }
    return {z, false};
}

//! Contraction-mapping certificate at z: true if a unique zero lies in a
//! small disc around z. Returns the disc radius through \p radius.
bool certify_point(HarmonicPolynomial const& h, Complex z, double& radius)
{
    LocalModel const local(h, z);
    double const sigma = local.sigma_lower();
    if (!(sigma > 0))
        return false;
    double const rho
        = std::max(2 * local.value_upper() / sigma,
                   std::numeric_limits<double>::min());
    if (!(local.derivative_variation(rho) <= 0.5 * sigma))
        return false;
    radius = rho;
    return true;
}

double magnitude_polynomial(HarmonicPolynomial const& h, double r)
{
    double s = 0;
    double rj = 1;
    for (std::size_t j = 0; j < std::max(h.analytic.size(), h.coanalytic.size());
         ++j, rj *= r)
    {
        if (j < h.analytic.size())
            s += std::abs(h.analytic[j]) * rj;
        if (j < h.coanalytic.size())
            s += std::abs(h.coanalytic[j]) * rj;
    }
    return s;
}

struct Cell
{
    Complex center;
    double half;
};

//---------------------------------------------------------------------------//
class ZeroCollector
{
  public:
    ZeroCollector(HarmonicPolynomial const& h,
                  ZeroFinderOptions const& opts,
                  double radius)
        : h_(h)
        , opts_(opts)
        , radius_(radius)
        , merge_(opts.merge_radius * radius)
        , scale_(magnitude_polynomial(h, 1))
    {
    }

    //! Add a zero found by Newton; returns false if it fails certification
    bool add(Complex z)
    {
        double cert_radius = 0;
        double const residual_bound
            = opts_.residual_tol
              * std::max(scale_, magnitude_polynomial(h_, std::abs(z)));
        bool const certified = std::abs(h_(z)) <= residual_bound
                               && certify_point(h_, z, cert_radius);
        if (!certified)
            return false;
        if (std::abs(z) > radius_ * (1 + 1e-12))
            return false;

        for (auto const& existing : zeros_)
        {
            if (std::abs(existing.location - z) <= merge_)
                return true;
        }
        Zero zero;
        zero.location = z;
        zero.certified = true;
        zero.orientation = LocalModel(h_, z).orientation();
        zeros_.push_back(zero);
        return true;
    }

    std::vector<Zero> release() { return std::move(zeros_); }

  private:
    HarmonicPolynomial const& h_;
    ZeroFinderOptions const& opts_;
    double radius_;
    double merge_;
    double scale_;
    std::vector<Zero> zeros_;
};

//! Newton from the centre of a cell proven to hold exactly one zero in the
//! disc of radius \p ball; falls back to the frozen-Jacobian contraction.
Complex solve_in_ball(HarmonicPolynomial const& h,
                      LocalModel const& local,
                      Complex center,
                      double ball,
                      int iterations,
                      double radius)
{
    double const slack = ball * (1 + 1e-9) + 8 * kEps * std::abs(center);
    auto outcome = newton(h, center, iterations, radius);
    if (outcome.converged && std::abs(outcome.z - center) <= slack)
        return outcome.z;

    Complex const A = local.linear_p();
    Complex const B = local.linear_q_value();
    Complex z = center;
    for (int it = 0; it < 50 * iterations; ++it)
    {
        Complex const step = linear_solve(A, B, h(z));
        z += step;
        if (std::abs(step) <= 4 * kEps * std::max(1.0, std::abs(z)))
            break;
    }
    outcome = newton(h, z, 3, radius);
    if (outcome.converged && std::abs(outcome.z - center) <= slack)
        return outcome.z;
    return z;
}

}  // namespace

//---------------------------------------------------------------------------//
// HarmonicPolynomial
//---------------------------------------------------------------------------//
Complex HarmonicPolynomial::p(Complex z) const
{
    return horner(analytic, z);
}
Complex HarmonicPolynomial::q(Complex z) const
{
    return horner(coanalytic, z);
}
Complex HarmonicPolynomial::dp(Complex z) const
{
    return horner_derivative(analytic, z);
}
Complex HarmonicPolynomial::dq(Complex z) const
{
    return horner_derivative(coanalytic, z);
}

std::string HarmonicPolynomial::invalid_reason() const
{
    if (analytic.size() < 2)
        return "analytic degree must be at least 1";
    if (coanalytic.empty())
        return "coanalytic part needs at least a constant term";
    if (m() > n())
        return "requires n >= m";
    if (analytic.back() == Complex{})
        return "leading analytic coefficient is zero";
    if (n() == m() && std::abs(analytic.back()) == std::abs(coanalytic.back()))
        return "degenerate leading coefficients |a_n| = |b_n|";
    return {};
}

//---------------------------------------------------------------------------//
// Sampling
//---------------------------------------------------------------------------//
CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed) ^ (stream * kGolden + 1)))
{
}

CounterRng::result_type CounterRng::operator()()
{
    return splitmix64(key_ + kGolden * ++counter_);
}

SampleDraw sample_polynomial(DegreePair deg, CounterRng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    auto draw = [&] { return Complex{normal(rng), normal(rng)}; };

    SampleDraw result;
    auto& poly = result.poly;
    poly.analytic.resize(deg.n + 1);
    poly.coanalytic.resize(deg.m + 1);
    while (true)
    {
        for (auto& a : poly.analytic)
            a = draw();
        for (auto& b : poly.coanalytic)
            b = draw();
        if (poly.invalid_reason().empty())
            return result;
        ++result.degenerate_resamples;
    }
}

//---------------------------------------------------------------------------//
// Radius and linear oracle
//---------------------------------------------------------------------------//
double root_inclusion_radius(HarmonicPolynomial const& h)
{
    if (auto reason = h.invalid_reason(); !reason.empty())
        throw std::invalid_argument("root_inclusion_radius: " + reason);

    // |a_n z^n + conj(b_n z^n)| >= ||a_n| - |b_n|| |z|^n, with b_n = 0
    // when m < n
    int const n = h.n();
    double lead = std::abs(h.analytic[n]);
    double lower = 0;
    for (int j = 0; j < n; ++j)
        lower += std::abs(h.analytic[j]);
    for (int j = 0; j <= h.m(); ++j)
    {
        if (j == n)
            lead = std::fabs(lead - std::abs(h.coanalytic[j]));
        else
            lower += std::abs(h.coanalytic[j]);
    }
    return 1 + lower / lead;
}

Complex exact_linear_zero(HarmonicPolynomial const& h)
{
    if (h.n() != 1 || h.m() != 1)
        throw std::invalid_argument("exact_linear_zero: requires n = m = 1");
    Complex const A = h.analytic[1];
    Complex const B = std::conj(h.coanalytic[1]);
    Complex const C = h.analytic[0] + std::conj(h.coanalytic[0]);
    double const det = std::norm(A) - std::norm(B);
    if (det == 0)
        throw std::invalid_argument("exact_linear_zero: degenerate "
                                    "|a_1| = |b_1|");
    return (B * std::conj(C) - std::conj(A) * C) / det;
}

//---------------------------------------------------------------------------//
// Zero finding
//---------------------------------------------------------------------------//
int ZeroSet::signed_count() const
{
    int s = 0;
    for (auto const& z : zeros)
        s += z.orientation;
    return s;
}

ZeroSet find_zeros(HarmonicPolynomial const& h, ZeroFinderOptions const& opts)
{
    if (auto reason = h.invalid_reason(); !reason.empty())
        throw std::invalid_argument("find_zeros: " + reason);

    double const radius = root_inclusion_radius(h);

    ZeroSet result;
    result.inclusion_radius = radius;
    ZeroCollector collector(h, opts, radius);

    std::vector<Cell> stack{{Complex{0, 0}, radius}};
    while (!stack.empty())
    {
        if (result.cells_visited >= opts.cell_budget)
        {
            result.uncertified_cells += static_cast<int>(stack.size());
            break;
        }
        Cell const cell = stack.back();
        stack.pop_back();
        ++result.cells_visited;

        double const r = cell.half * std::numbers::sqrt2;
        LocalModel const local(h, cell.center);

        if (local.value_lower() > local.variation(r) * (1 + 1e-12)
            || local.linear_lower(r) > local.tail_variation(r) * (1 + 1e-12))
        {
            continue;
        }

        // T(z) = z - L^{-1} h(z) contracts the circumscribed disc by
        // kappa = variation / sigma; it maps the disc into itself when the
        // first step |L^{-1} h(centre)| is at most (1 - kappa) r.
        double const sigma = local.sigma_lower();
        double const margin = sigma - local.derivative_variation(r);
        if (margin > 0)
        {
            Complex const step = linear_solve(
                local.linear_p(), local.linear_q_value(), local.value());
            double const first
                = (std::abs(step) + (local.value_upper() - std::abs(local.value()))
                                        / sigma)
                  * (1 + 1e-12);
            if (first <= margin / sigma * r)
            {
                Complex const z = solve_in_ball(h, local, cell.center, r,
                                                opts.newton_iterations, radius);
                if (!collector.add(z))
                    ++result.uncertified_cells;
                continue;
            }
        }

        if (2 * cell.half
            <= opts.cell_floor * std::max(1.0, std::abs(cell.center)))
        {
            // Newton may stall at rounding level; the collector decides.
            // h is injective on any disc about the centre where the
            // derivative variation stays below sigma, so if that disc covers
            // both the cell and the zero found, the cell holds no other.
            auto const outcome = newton(h, cell.center, opts.newton_iterations,
                                        radius);
            double const dist = std::abs(outcome.z - cell.center);
            double const reach = std::max(r, dist) * (1 + 1e-9);
            bool const injective
                = local.sigma_lower() > local.derivative_variation(reach);
            if (!(injective || dist <= r) || !collector.add(outcome.z))
                ++result.uncertified_cells;
            continue;
        }

        double const q = cell.half / 2;
        for (Complex offset : {Complex{-q, -q}, Complex{q, -q},
                               Complex{-q, q}, Complex{q, q}})
        {
            stack.push_back({cell.center + offset, q});
        }
    }
    result.zeros = collector.release();
    return result;
}

std::vector<std::string> structural_violations(ZeroSet const& zs,
                                               HarmonicPolynomial const& h)
{
    std::vector<std::string> out;
    int const n = h.n();
    int const m = h.m();
    int const count = zs.count();
    if (count > n * n)
        out.emplace_back("ceiling");
    if (!zs.complete())
        return out;
    if (count < std::max(n, m))
        out.emplace_back("floor");
    int expected_signed = n;
    if (n == m && std::abs(h.coanalytic.back()) > std::abs(h.analytic.back()))
        expected_signed = -n;
    if (zs.signed_count() != expected_signed)
        out.emplace_back("signed_sum");
    if (n > m && (count - n) % 2 != 0)
        out.emplace_back("parity");
    for (auto const& z : zs.zeros)
    {
        if (!z.certified)
        {
            out.emplace_back("uncertified_zero");
            break;
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
// Aggregation
//---------------------------------------------------------------------------//
int worker_threads()
{
    if (char const* env = std::getenv("HZ_THREADS"))
    {
        char* end = nullptr;
        long const value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0)
            return static_cast<int>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

MCSummary mc_expectation(DegreePair deg,
                         long samples,
                         std::uint64_t seed,
                         int threads,
                         ZeroFinderOptions const& opts)
{
    if (samples < 1)
        throw std::invalid_argument("mc_expectation: samples must be >= 1");

    struct Outcome
    {
        int count;
        bool complete;
        int resamples;
        bool violated;
    };
    std::vector<Outcome> outcomes(samples);
    std::atomic<long> next{0};

    auto worker = [&] {
        for (long i = next++; i < samples; i = next++)
        {
            CounterRng rng(seed, static_cast<std::uint64_t>(i));
            auto draw = sample_polynomial(deg, rng);
            auto const zs = find_zeros(draw.poly, opts);
            outcomes[i] = {zs.count(), zs.complete(), draw.degenerate_resamples,
                           !structural_violations(zs, draw.poly).empty()};
        }
    };

    int const nthreads
        = static_cast<int>(std::clamp<long>(threads, 1, samples));
    if (nthreads == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
    }

    MCSummary summary;
    summary.n = deg.n;
    summary.m = deg.m;
    summary.samples = samples;
    summary.seed = seed;
    summary.min = std::numeric_limits<int>::max();
    summary.max = 0;
    double sum = 0;
    double sum_sq = 0;
    for (auto const& o : outcomes)
    {
        summary.degenerate_resamples += o.resamples;
        summary.structural_failures += o.violated ? 1 : 0;
        if (!o.complete)
        {
            ++summary.uncertified_samples;
            continue;
        }
        ++summary.certified_samples;
        ++summary.histogram[o.count];
        summary.min = std::min(summary.min, o.count);
        summary.max = std::max(summary.max, o.count);
        sum += o.count;
        sum_sq += static_cast<double>(o.count) * o.count;
    }
    long const k = summary.certified_samples;
    if (k == 0)
    {
        summary.min = 0;
        summary.mean = std::numeric_limits<double>::quiet_NaN();
        summary.std_error = std::numeric_limits<double>::quiet_NaN();
        return summary;
    }
    summary.mean = sum / k;
    if (k > 1)
    {
        double const var = std::max(0.0, (sum_sq - k * summary.mean * summary.mean)
                                             / (k - 1));
        summary.std_error = std::sqrt(var / k);
    }
    return summary;
}

//---------------------------------------------------------------------------//
}  // namespace hz
