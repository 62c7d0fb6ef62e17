#pragma once

/**
 * Continued fractions of quadratic irrationals in (0,1), written
 *
 *     x = [a_1, a_2, ...] = 1 / (a_1 + 1 / (a_2 + ...)),
 *
 * so a_1 = floor(1/x) and there is no integer part. Convergents p_k/q_k
 * follow p_0 = 0, q_0 = 1, p_1 = 1, q_1 = a_1 and the usual three-term
 * recurrence. The step matrix for digit a is [[0,1],[1,a]] and
 *
 *     A_k ... A_1 (0,1)^T = (q_{k-1}, q_k)^T.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "cfcolor/exact.hpp"
#include "cfcolor/matrix.hpp"

namespace cfcolor {

// Eventually periodic expansion [b_1..b_r, (a_1..a_s)^inf], kept canonical:
// minimal period, then minimal preperiod.
class CFExpansion {
public:
    CFExpansion(std::vector<Int> preperiod, std::vector<Int> period);

    const std::vector<Int>& preperiod() const { return pre_; }
    const std::vector<Int>& period() const { return per_; }
    std::size_t r() const { return pre_.size(); }
    std::size_t s() const { return per_.size(); }

    // a_k for k >= 1, drawing from the preperiod then cycling the period.
    const Int& digit(std::size_t k) const;
    Int max_digit() const;

    std::string str() const;
    friend bool operator==(const CFExpansion&, const CFExpansion&) = default;

private:
    std::vector<Int> pre_;
    std::vector<Int> per_;
};

struct Convergent {
    std::size_t k = 0;
    Int p;
    Int q;
};

// Throws PreconditionError on rational input or x outside (0,1); throws
// BudgetExceeded if no complete quotient repeats within max_states.
CFExpansion cf_expand(const Surd& x, std::size_t max_states = 1u << 20);

// Exact value of an eventually periodic expansion.
Surd cf_value(const CFExpansion& cf);

// Convergents k = 1..kmax.
std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t kmax);
// Convergents k = 0..kmax, indexed by k.
std::vector<Convergent> convergent_table(const CFExpansion& cf, std::size_t kmax);

Mat2Z step_matrix(const Int& a);
// A_k ... A_1
Mat2Z matrix_word(const CFExpansion& cf, std::size_t k);

// |x - p_k/q_k| <= 1/(q_k q_{k+1}), decided exactly.
bool check_quality(const Surd& x, const CFExpansion& cf, std::size_t k);

struct HurwitzEntry {
    std::size_t k = 0;
    Int q;
    // q * ||q x|| <= 1/sqrt(5)
    bool within = false;
};

// Entries for the convergent denominators q_0..q_kmax of frac(x).
std::vector<HurwitzEntry> hurwitz_scan(const Surd& x, std::size_t kmax);

}  // namespace cfcolor
