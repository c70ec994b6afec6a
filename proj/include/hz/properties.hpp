//---------------------------------------------------------------------------//
//! \file hz/properties.hpp
//! Randomized checks of the kernel identities and inequalities.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hz
{
//---------------------------------------------------------------------------//
struct PropertyTally
{
    std::string name;
    long cases{0};
    long failures{0};
    //! Largest observed violation measure (relative error or shortfall)
    double worst{0};
    //! First failing input, formatted for diagnostics
    std::string first_failure;
};

/*!
 * Run \p cases random draws of (w, n, m, t) through each kernel property:
 *
 * - cauchy_schwarz: a c >= b^2
 * - cross_bound: (a_n + a_m) c_n c_m >= c_n b_m^2 + c_m b_n^2
 * - nonnegativity: r1, r2, cross >= 0 and the density is finite and >= 0
 * - closed_vs_direct: relative agreement 1e-12 for |w - 1| >= 0.05, k <= 1000
 * - inversion: a_k(w) = w^k a_k(1/w) and the b, c counterparts, 1e-12
 * - diagonal_path: both density code paths agree to 1e-10
 * - domination: f_n(t) <= g_n(t) for n > m
 * - ordering: b_n c_m <= b_m c_n for n >= m
 *
 * Draws come from std::mt19937_64 seeded with \p seed.
 */
std::vector<PropertyTally> kernel_property_fuzz(long cases, std::uint64_t seed);

//---------------------------------------------------------------------------//
}  // namespace hz
