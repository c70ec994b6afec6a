//---------------------------------------------------------------------------//
//! \file hz/montecarlo.hpp
//! Sampling of naive-model harmonic polynomials and certified zero counting.
//---------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kernel.hpp"

namespace hz
{
using Complex = std::complex<double>;

//---------------------------------------------------------------------------//
/*!
 * h(z) = sum_j a_j z^j + conj(sum_j b_j z^j).
 *
 * Coefficients are stored in increasing degree. Valid polynomials have
 * a_n != 0, m <= n, and |a_n| != |b_n| when n == m.
 */
struct HarmonicPolynomial
{
    std::vector<Complex> analytic;
    std::vector<Complex> coanalytic;

    int n() const { return static_cast<int>(analytic.size()) - 1; }
    int m() const { return static_cast<int>(coanalytic.size()) - 1; }

    Complex p(Complex z) const;
    Complex q(Complex z) const;
    Complex dp(Complex z) const;
    Complex dq(Complex z) const;
    Complex operator()(Complex z) const { return p(z) + std::conj(q(z)); }

    //! Empty string if valid, otherwise the violated condition
    std::string invalid_reason() const;
};

//---------------------------------------------------------------------------//
/*!
 * Counter-based random bit generator.
 *
 * Output i of stream s under seed k is a SplitMix64 finalizer applied to
 * key(k, s) + i * golden, so any sample's stream can be constructed
 * directly from (seed, sample index) without advancing other streams.
 */
class CounterRng
{
  public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();

  private:
    std::uint64_t key_;
    std::uint64_t counter_{0};
};

struct SampleDraw
{
    HarmonicPolynomial poly;
    int degenerate_resamples{0};
};

//! i.i.d. complex Gaussian coefficients, real and imaginary parts each of
//! variance 1/2. Invalid draws are redrawn from the same stream.
SampleDraw sample_polynomial(DegreePair deg, CounterRng& rng);

//---------------------------------------------------------------------------//
//! Cauchy-type radius: every zero satisfies |z| <= R.
double root_inclusion_radius(HarmonicPolynomial const& h);

//! Closed-form zero of a_1 z + conj(b_1 z) + a_0 + conj(b_0) (n = m = 1).
Complex exact_linear_zero(HarmonicPolynomial const& h);

//---------------------------------------------------------------------------//
struct ZeroFinderOptions
{
    //! Smallest cell side, relative to max(1, |cell centre|)
    double cell_floor{0x1p-20};
    //! Zeros closer than this (relative to the radius) are merged
    double merge_radius{1e-7};
    //! Residual bound relative to max(sum |coeffs|, sum |coeffs| |z|^j)
    double residual_tol{1e-10};
    long cell_budget{1'000'000};
    int newton_iterations{80};
};

struct Zero
{
    Complex location;
    //! Residual and contraction checks both passed
    bool certified{false};
    //! +1 where |p'|^2 > |q'|^2 (sense-preserving), -1 otherwise
    int orientation{0};
};

struct ZeroSet
{
    std::vector<Zero> zeros;
    double inclusion_radius{0};
    //! Cells that could be neither excluded nor resolved to a zero
    int uncertified_cells{0};
    long cells_visited{0};

    int count() const { return static_cast<int>(zeros.size()); }
    int signed_count() const;
    bool complete() const { return uncertified_cells == 0; }
};

/*!
 * Find all zeros of \p h in the disc of radius root_inclusion_radius(h).
 *
 * The square [-R, R]^2 is subdivided. For each cell the polynomials are
 * re-expanded about the cell centre; a cell is dropped when |h(centre)|
 * exceeds the Taylor bound on |h - h(centre)| over the cell, and it is
 * resolved when the simplified Newton map built from the centre's linear
 * part contracts the circumscribed disc into itself. That disc then holds
 * exactly one zero, found by
 * Newton's method on (Re h, Im h). Cells that reach the size floor seed
 * Newton directly and are counted as uncertified unless it converges to a
 * certified point within a disc about the centre that covers the cell and
 * on which h is provably injective.
 */
ZeroSet find_zeros(HarmonicPolynomial const& h,
                   ZeroFinderOptions const& opts = {});

//! Names of the structural zero-count properties violated by \p zs: the
//! argument-principle floor max(n, m), the ceiling n^2, and for n > m the
//! signed sum n and parity n mod 2. Empty when all hold; incomplete zero
//! sets are only checked against the ceiling.
std::vector<std::string> structural_violations(ZeroSet const& zs,
                                               HarmonicPolynomial const& h);

//---------------------------------------------------------------------------//
struct MCSummary
{
    int n{0};
    int m{0};
    long samples{0};
    //! Samples whose zero sets were complete; the statistics use only these
    long certified_samples{0};
    double mean{0};
    double std_error{0};
    int min{0};
    int max{0};
    long degenerate_resamples{0};
    long uncertified_samples{0};
    long structural_failures{0};
    std::uint64_t seed{0};
    std::map<int, long> histogram;
};

//! Worker count from HZ_THREADS, else hardware concurrency (at least 1).
int worker_threads();

/*!
 * Mean zero count over \p samples independent draws. Sample i uses
 * CounterRng(seed, i), and results are reduced in index order, so the
 * summary does not depend on \p threads.
 */
MCSummary mc_expectation(DegreePair deg,
                         long samples,
                         std::uint64_t seed,
                         int threads = worker_threads(),
                         ZeroFinderOptions const& opts = {});

//---------------------------------------------------------------------------//
}  // namespace hz
