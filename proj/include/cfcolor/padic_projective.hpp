#pragma once

/**
 * Primitive integer vectors (points of the rational projective line) with
 * the p-adic distance d(m, n) = |m1 n2 - m2 n1|_p, acted on isometrically
 * by GL(2,Z).
 *
 * Covering at scale N: with p^-k <= 1/N < p^-(k-1), the closed p^-k balls
 * around (1, l) for 1 <= l <= p^k and around (l, 1) for p | l cover every
 * point, so at most p^k + p^(k-1) <= 2 p^k < 2 p N balls are needed.
 */

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cfcolor/exact.hpp"
#include "cfcolor/matrix.hpp"

namespace cfcolor {

// Coprime pair, canonicalized so the first nonzero coordinate is positive.
class PrimitiveVector {
public:
    // Throws PreconditionError if gcd(n1, n2) != 1.
    PrimitiveVector(const Int& n1, const Int& n2);

    const Int& n1() const { return n1_; }
    const Int& n2() const { return n2_; }

    friend bool operator==(const PrimitiveVector&, const PrimitiveVector&) = default;

private:
    Int n1_, n2_;
};

Rat pdist(const PrimitiveVector& m, const PrimitiveVector& n, const Int& p);

// d(m, n) <= d(m, k) + d(k, n)
bool triangle_check(const PrimitiveVector& k, const PrimitiveVector& m, const PrimitiveVector& n,
                    const Int& p);

// Throws PreconditionError unless det A = +-1.
PrimitiveVector act(const Mat2Z& A, const PrimitiveVector& m);

// d(Am, An) == d(m, n)
bool isometry_check(const Mat2Z& A, const PrimitiveVector& m, const PrimitiveVector& n,
                    const Int& p);

struct CoverSpec {
    Int p;
    std::uint64_t N = 1;
    unsigned long k = 0;
    std::vector<PrimitiveVector> centers;

    Rat radius() const { return Rat(Int(1), ipow(p, k)); }
};

// Smallest k with p^k >= N, i.e. p^-k <= 1/N < p^-(k-1).
unsigned long cover_exponent(const Int& p, std::uint64_t N);

CoverSpec build_cover(const Int& p, std::uint64_t N);

struct CoverCell {
    int branch = 1;  // 1: p does not divide n1; 2: p divides n1
    Int ell;         // residue in 1..p^k
};

// k == 0 puts every point in the single cell (1, 1).
CoverCell classify(const PrimitiveVector& n, const Int& p, unsigned long k);

// (1, ell) for branch 1, (ell, 1) for branch 2.
PrimitiveVector cell_center(const CoverCell& cell);

// Header "# p=.. N=.. k=.. count=.." then one "n1 n2" per center.
void write_cover(std::ostream& os, const CoverSpec& cover);

}  // namespace cfcolor
