#pragma once

/**
 * Nested-interval construction of a point x with ||n_k x|| > 1/N along a
 * lacunary sequence n_{k+1}/n_k >= lambda > 1.
 *
 * The sequence is first densified so that lambda <= n_{k+1}/n_k <
 * lambda(lambda+1). Parameters are then fixed:
 *
 *   K      smallest integer with K + 1 < lambda^K
 *   Delta  (lambda(lambda+1))^-K / 2
 *   N      smallest integer with Delta (1 - (K+1) lambda^-K) > 2K/N
 *          and Delta < 1 - 2/N
 *
 * Stage 0 places an interval of length Delta/n_1 inside (1/(N n_1),
 * (1 - 1/N)/n_1). Each later stage starts from an interval of length
 * Delta/n_t, cuts closed neighborhoods of radius 1/(N n_t) around the
 * fractions with the next K denominators, and keeps a subinterval of
 * length Delta/n_{t+K} of the largest remaining piece.
 */

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cfcolor/exact.hpp"

namespace cfcolor {

class LacunarySeq {
public:
    // Throws PreconditionError unless terms are positive, strictly
    // increasing, and every ratio is at least lambda > 1.
    LacunarySeq(std::vector<Int> terms, Rat lambda);

    // First `count` terms of gen(1), gen(2), ...
    static LacunarySeq from_generator(const std::function<Int(std::size_t)>& gen,
                                      std::size_t count, Rat lambda);

    const std::vector<Int>& terms() const { return terms_; }
    const Rat& lambda() const { return lambda_; }
    std::size_t size() const { return terms_.size(); }
    // 1-based, matching n_1, n_2, ...
    const Int& operator[](std::size_t k) const { return terms_.at(k - 1); }

    // lambda <= n_{k+1}/n_k < lambda(lambda+1) for every consecutive pair
    bool has_bounded_gaps() const;

private:
    std::vector<Int> terms_;
    Rat lambda_;
};

struct ConstructionParams {
    std::size_t K = 0;
    Rat delta;
    Int N;

    bool valid_for(const Rat& lambda) const;
};

struct IntervalQ {
    Rat lo;
    Rat hi;

    IntervalQ() : lo(0), hi(1) {}
    IntervalQ(Rat lo_, Rat hi_);
    Rat length() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) * Rat(1, 2); }
    // Open-interval containment of another open interval.
    bool contains(const IntervalQ& inner) const { return lo <= inner.lo && inner.hi <= hi; }
    friend bool operator==(const IntervalQ&, const IntervalQ&) = default;
};

struct Removal {
    std::size_t index = 0;  // k such that the denominator is n_k
    Int numerator;          // c in c/n_k
    IntervalQ cut;          // closed neighborhood removed
};

struct StageRecord {
    std::size_t stage = 0;
    std::size_t start_index = 0;  // t: the working interval was sized by n_t
    Int base;                     // floor(n_t * lo)
    std::vector<Removal> removals;
    std::vector<IntervalQ> components;
    std::size_t chosen_component = 0;
    IntervalQ chosen;
};

struct Construction {
    IntervalQ interval;
    std::size_t covered = 0;  // every x in interval satisfies the bound for k <= covered
    std::vector<StageRecord> trace;
};

LacunarySeq densify(const LacunarySeq& seq);

ConstructionParams choose_params(const Rat& lambda);

// Throws PreconditionError when the sequence is too short, not densified,
// or params do not fit lambda; InconsistencyError if a stage violates
// the counting argument.
Construction construct(const LacunarySeq& seq, const ConstructionParams& params,
                       std::size_t stages);

// min over k <= upto of ||n_k x|| > 1/N
bool verify_avoidance(const Rat& x, const LacunarySeq& seq, std::size_t upto, const Int& N);

// One JSON object per stage.
void write_trace_jsonl(std::ostream& os, const Construction& c);
// stage,start_index,base,removals,components,chosen_lo,chosen_hi with
// lists encoded as lo:hi pairs joined by ';'.
void write_trace_csv(std::ostream& os, const Construction& c);

}  // namespace cfcolor
