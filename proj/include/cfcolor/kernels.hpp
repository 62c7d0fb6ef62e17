#pragma once

/**
 * Data-parallel kernels. Each comes as a serial reference and an OpenMP
 * version; the two must agree exactly (same records, same minimizer), and
 * the tests hold them to that.
 */

#include <cstddef>
#include <cstdint>
#include <span>

#include "cfcolor/padic_projective.hpp"
#include "cfcolor/witness.hpp"

namespace cfcolor {

// CFCOLOR_THREADS, default 1 (serial). Values < 1 or unparsable mean 1.
int threads_from_env();

// N = 2, 4, ..., <= Nmax. The search must already be reserve()d to Nmax.
LiminfSummary liminf_sweep_serial(const WitnessSearch& search, std::uint64_t Nmax);
LiminfSummary liminf_sweep_parallel(const WitnessSearch& search, std::uint64_t Nmax, int threads);

// Minimizer over lo <= n <= hi.
BruteForceResult brute_force_range_serial(const Surd& alpha, const Int& p, std::uint64_t lo,
                                          std::uint64_t hi, bool weighted);
BruteForceResult brute_force_parallel(const Surd& alpha, const Int& p, std::uint64_t lo,
                                      std::uint64_t hi, bool weighted, int threads);

// True when a is strictly smaller than b; ties and undecidable overlaps
// keep b.
bool strictly_better(const BruteForceResult& a, const BruteForceResult& b);

struct CoverCheck {
    std::size_t checked = 0;
    std::size_t failures = 0;  // points farther than p^-k from their cell center
    std::size_t outside = 0;   // cell center missing from the cover's list
};

CoverCheck cover_check_serial(const CoverSpec& cover, std::span<const PrimitiveVector> points);
CoverCheck cover_check_parallel(const CoverSpec& cover, std::span<const PrimitiveVector> points,
                                int threads);

}  // namespace cfcolor
