#pragma once

/**
 * Explicit witnesses for liminf n |n|_p ||n alpha|| log n < infinity when
 * alpha is a quadratic irrational in (0,1).
 *
 * With alpha = [b_1..b_r, (a_1..a_s)^inf], let A = A_{r+s}...A_{r+1} and
 * B = A_r...A_1. The N matrices B^-1 A^i B (1 <= i <= N) are pairwise
 * adjacent in the Cayley graph they generate, while the p-adic line needs
 * fewer than N balls of radius 2p/N. Hence some i <= N has
 *
 *     |b22 q_{is+r-1} - b12 q_{is+r}|_p <= 2p/N,
 *
 * and n_N = |b22 q_{is+r-1} - b12 q_{is+r}| satisfies
 *
 *     n_N ||n_N alpha|| <= 4 b^2,        b = max(|b22|, |b12|)
 *     n_N |n_N|_p ||n_N alpha|| <= 8 b^2 p / N
 *     n_N <= C^N,                        C = 2 b q_r (a_max + 1)^s
 *
 * so the log-weighted product stays below 8 b^2 p log C.
 */

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cfcolor/cf.hpp"
#include "cfcolor/enclosure.hpp"
#include "cfcolor/errors.hpp"
#include "cfcolor/exact.hpp"
#include "cfcolor/matrix.hpp"

namespace cfcolor {

// n_N came out 0; the witness only exists for larger N.
class BelowThresholdN : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

struct PeriodMatrices {
    Mat2Z A;
    Mat2Z B;
    std::size_t r = 0;
    std::size_t s = 0;
    Int b;  // max(|b22|, |b12|)
};

PeriodMatrices build_period_matrices(const CFExpansion& cf);

// 2 b q_r (a_max + 1)^s
Rat growth_constant(const CFExpansion& cf);

struct WitnessRecord {
    std::uint64_t N = 0;
    std::uint64_t i = 0;
    Int p;
    Surd alpha;
    Int n_N;
    PAdicAbs padic{Int(2), std::nullopt};
    Surd norm_term;  // ||n_N alpha||
    Surd product;    // n_N |n_N|_p ||n_N alpha||
    Enclosure product_enc;
    Enclosure product_log;  // product * log n_N
    Int b;
    Rat C;

    // Rechecks every bound; throws InconsistencyError on failure.
    void validate() const;
};

/**
 * Shared state for one (alpha, p): period matrices, the convergent table
 * and the bound constants. The table grows on demand in the serial
 * entry points; reserve() it before sharing across threads.
 */
class WitnessSearch {
public:
    WitnessSearch(const Surd& alpha, const CFExpansion& cf, const Int& p);
    explicit WitnessSearch(const CFExpansion& cf, const Int& p);

    void reserve(std::uint64_t Nmax);

    // Smallest i in 1..N meeting the 2p/N threshold.
    std::uint64_t index(std::uint64_t N);
    // Same, without growing the table; requires reserve(N) first.
    std::uint64_t index(std::uint64_t N) const;

    WitnessRecord record(std::uint64_t N);
    WitnessRecord record(std::uint64_t N) const;

    const PeriodMatrices& matrices() const { return mats_; }
    const Surd& alpha() const { return alpha_; }
    const CFExpansion& cf() const { return cf_; }
    const Int& p() const { return p_; }
    const Rat& C() const { return C_; }
    // 8 b^2 p log C
    const Enclosure& log_bound() const { return log_bound_; }

private:
    const Convergent& conv(std::size_t k) const;

    Surd alpha_;
    CFExpansion cf_;
    Int p_;
    PeriodMatrices mats_;
    Rat C_;
    Enclosure log_bound_;
    std::vector<Convergent> table_;
};

std::uint64_t find_witness_index(const CFExpansion& cf, const Int& p, std::uint64_t N);

// Throws BelowThresholdN when n_N = 0.
WitnessRecord make_witness(const CFExpansion& cf, const Int& p, std::uint64_t N);
WitnessRecord make_witness(const Surd& alpha, const CFExpansion& cf, const Int& p, std::uint64_t N);

struct LiminfSummary {
    std::vector<WitnessRecord> records;
    std::vector<std::uint64_t> skipped;  // N with n_N = 0
    std::optional<Enclosure> max_product_log;
    Enclosure bound;  // 8 b^2 p log C
    bool holds = false;
};

// N = 2, 4, 8, ..., <= Nmax. threads <= 1 runs the serial reference.
LiminfSummary liminf_certificate(const Surd& alpha, const CFExpansion& cf, const Int& p,
                                 std::uint64_t Nmax, int threads = 1);
LiminfSummary liminf_certificate(const CFExpansion& cf, const Int& p, std::uint64_t Nmax,
                                 int threads = 1);

struct BruteForceResult {
    Int n;
    Surd product;     // n |n|_p ||n alpha||
    Enclosure value;  // product, times log n when weighted
    bool weighted = false;
};

// Minimizer over 1 <= n <= nmax (2 <= n when weighted and nmax >= 2) of
// n |n|_p ||n alpha|| (log n). Ties go to the smaller n.
BruteForceResult brute_force_inf(const Surd& alpha, const Int& p, std::uint64_t nmax,
                                 bool weighted, int threads = 1);
BruteForceResult brute_force_inf(const CFExpansion& cf, const Int& p, std::uint64_t nmax,
                                 bool weighted, int threads = 1);

// B^-1 A^i B for 1 <= i <= N are distinct and (M_i)^-1 M_j = M_{j-i}.
bool complete_subgraph_check(const PeriodMatrices& mats, std::size_t N);

// {N, i, nN, padicNum, padicDen, productLo, productHi, productLogLo, productLogHi}
void write_witness_jsonl(std::ostream& os, const WitnessRecord& rec);
void write_sweep_csv_header(std::ostream& os);
void write_sweep_csv_row(std::ostream& os, const WitnessRecord& rec);

}  // namespace cfcolor
