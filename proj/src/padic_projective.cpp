#include "cfcolor/padic_projective.hpp"

#include <ostream>

#include "cfcolor/errors.hpp"

namespace cfcolor {

PrimitiveVector::PrimitiveVector(const Int& n1, const Int& n2) : n1_(n1), n2_(n2) {
    Int g;
    mpz_gcd(g.get_mpz_t(), n1.get_mpz_t(), n2.get_mpz_t());
    require(g == 1, "vector (" + n1.get_str() + "," + n2.get_str() + ") is not primitive");
    if (n1_ < 0 || (n1_ == 0 && n2_ < 0)) {
        n1_ = -n1_;
        n2_ = -n2_;
    }
}

Rat pdist(const PrimitiveVector& m, const PrimitiveVector& n, const Int& p) {
    return padic_abs(Int(m.n1() * n.n2() - m.n2() * n.n1()), p).value();
}

bool triangle_check(const PrimitiveVector& k, const PrimitiveVector& m, const PrimitiveVector& n,
                    const Int& p) {
    return pdist(m, n, p) <= pdist(m, k, p) + pdist(k, n, p);
}

PrimitiveVector act(const Mat2Z& A, const PrimitiveVector& m) {
    require(A.is_unimodular(), "matrix is not in GL(2,Z): det " + A.det().get_str());
    auto [x, y] = A.apply(m.n1(), m.n2());
    return PrimitiveVector(x, y);
}

bool isometry_check(const Mat2Z& A, const PrimitiveVector& m, const PrimitiveVector& n,
                    const Int& p) {
    return pdist(act(A, m), act(A, n), p) == pdist(m, n, p);
}

unsigned long cover_exponent(const Int& p, std::uint64_t N) {
    require(is_prime(p), "cover needs a prime, got " + p.get_str());
    require(N >= 1, "cover scale N must be positive");
    unsigned long k = 0;
    Int pk = 1;
    while (pk < Int(N)) {
        pk *= p;
        ++k;
    }
    return k;
}

CoverSpec build_cover(const Int& p, std::uint64_t N) {
    CoverSpec cover;
    cover.p = p;
    cover.N = N;
    cover.k = cover_exponent(p, N);
    const Int pk = ipow(p, cover.k);
    for (Int ell = 1; ell <= pk; ++ell) cover.centers.emplace_back(Int(1), ell);
    if (cover.k > 0) {
        // A_{2,l} is empty unless p | l.
        for (Int ell = p; ell <= pk; ell += p) cover.centers.emplace_back(ell, Int(1));
    }
    return cover;
}

namespace {

Int mod_inverse(const Int& a, const Int& m) {
    Int inv;
    ensure(mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0,
           "residue is not invertible");
    return inv;
}

// Residue in 1..m, with 0 mapped to m.
Int residue_1_to_m(const Int& x, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r == 0 ? m : r;
}

}  // namespace

CoverCell classify(const PrimitiveVector& n, const Int& p, unsigned long k) {
    require(is_prime(p), "classification needs a prime, got " + p.get_str());
    if (k == 0) return {1, Int(1)};
    const Int pk = ipow(p, k);
    if (!mpz_divisible_p(n.n1().get_mpz_t(), p.get_mpz_t())) {
        return {1, residue_1_to_m(Int(mod_inverse(n.n1(), pk) * n.n2()), pk)};
    }
    // Primitivity forces p not dividing n2 here.
    return {2, residue_1_to_m(Int(n.n1() * mod_inverse(n.n2(), pk)), pk)};
}

PrimitiveVector cell_center(const CoverCell& cell) {
    if (cell.branch == 1) return PrimitiveVector(Int(1), cell.ell);
    return PrimitiveVector(cell.ell, Int(1));
}

void write_cover(std::ostream& os, const CoverSpec& cover) {
    os << "# p=" << cover.p.get_str() << " N=" << cover.N << " k=" << cover.k
       << " count=" << cover.centers.size() << '\n';
    for (const auto& c : cover.centers) os << c.n1().get_str() << ' ' << c.n2().get_str() << '\n';
}

}  // namespace cfcolor
