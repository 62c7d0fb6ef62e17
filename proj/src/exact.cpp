#include "cfcolor/exact.hpp"

#include <algorithm>
#include <utility>

#include <mpfr.h>

#include "cfcolor/errors.hpp"

namespace cfcolor {

Int isqrt(const Int& n) {
    require(n >= 0, "isqrt of a negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_prime(const Int& p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (mpz_even_p(p.get_mpz_t())) return false;
    for (Int d = 3; d * d <= p; d += 2) {
        if (mpz_divisible_p(p.get_mpz_t(), d.get_mpz_t())) return false;
    }
    return true;
}

Int ipow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// ---------------------------------------------------------------- Rat

Rat::Rat(const Int& num, const Int& den) {
    require(den != 0, "rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw PreconditionError("malformed rational '" + s + "'");
    }
}

Int Rat::floor() const {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

Int Rat::ceil() const {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

Rat Rat::abs() const { return Rat(mpq_class(::abs(v_))); }

Rat Rat::inverse() const {
    require(sign() != 0, "inverse of zero");
    return Rat(den(), num());
}

Rat Rat::pow(long exp) const {
    if (exp < 0) return inverse().pow(-exp);
    auto e = static_cast<unsigned long>(exp);
    return Rat(ipow(num(), e), ipow(den(), e));
}

std::string Rat::fraction_str() const { return num().get_str() + "/" + den().get_str(); }

Rat operator/(const Rat& a, const Rat& b) {
    require(b.sign() != 0, "division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
}

// ---------------------------------------------------------------- Surd

Surd::Surd(Int P, Int D, Int Q) : p_(std::move(P)), d_(std::move(D)), q_(std::move(Q)) {
    require(d_ >= 0, "surd with negative radicand");
    require(q_ != 0, "surd with zero denominator");
    Int gap = d_ - p_ * p_;
    if (!mpz_divisible_p(gap.get_mpz_t(), q_.get_mpz_t())) {
        Int aq = ::abs(q_);
        p_ *= aq;
        d_ *= q_ * q_;
        q_ *= aq;
    }
    rational_ = is_perfect_square(d_);
}

Surd::Surd(const Rat& r) : Surd(r.num(), Int(0), r.den()) {}

Surd Surd::from_coeffs(const Rat& a, const Rat& b, const Int& D) {
    if (b.sign() == 0 || is_perfect_square(D)) {
        if (b.sign() == 0) return Surd(a);
        return Surd(a + b * Rat(isqrt(D)));
    }
    Int L;
    mpz_lcm(L.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    Int A = a.num() * (L / a.den());
    Int B = b.num() * (L / b.den());
    Int radicand = B * B * D;
    if (B > 0) return Surd(A, radicand, L);
    return Surd(Int(-A), radicand, Int(-L));
}

std::optional<Rat> Surd::as_rational() const {
    if (!rational_) return std::nullopt;
    return Rat(Int(p_ + isqrt(d_)), q_);
}

Surd::Coeffs Surd::coeffs() const {
    if (rational_) return {*as_rational(), Rat(0), Int(0)};
    return {Rat(p_, q_), Rat(Int(1), q_), d_};
}

int Surd::sign() const {
    if (rational_) return as_rational()->sign();
    int s = p_ >= 0 || d_ > p_ * p_ ? 1 : -1;
    return q_ > 0 ? s : -s;
}

Int Surd::floor() const {
    Int s = isqrt(d_);
    Int r;
    if (rational_) return as_rational()->floor();
    // s < sqrt(D) < s+1, and no multiple of |Q| separates the bracket ends
    // from the true value.
    if (q_ > 0) {
        Int num = p_ + s;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), q_.get_mpz_t());
    } else {
        Int num = -p_ - s - 1;
        Int den = -q_;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    return r;
}

Int Surd::ceil() const { return -(-*this).floor(); }

Surd Surd::reciprocal() const {
    auto [a, b, D] = coeffs();
    Rat norm = a * a - b * b * Rat(D);
    require(norm.sign() != 0, "reciprocal of zero");
    return from_coeffs(a / norm, -b / norm, D);
}

std::string Surd::str() const {
    if (rational_) return as_rational()->str();
    return "(" + p_.get_str() + "+sqrt(" + d_.get_str() + "))/" + q_.get_str();
}

long double Surd::approx() const {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(
        mpz_sizeinbase(p_.get_mpz_t(), 2) + mpz_sizeinbase(d_.get_mpz_t(), 2) + 128);
    mpfr_t x, y;
    mpfr_init2(x, prec);
    mpfr_init2(y, prec);
    mpfr_set_z(x, d_.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(x, x, MPFR_RNDN);
    mpfr_set_z(y, p_.get_mpz_t(), MPFR_RNDN);
    mpfr_add(x, x, y, MPFR_RNDN);
    mpfr_set_z(y, q_.get_mpz_t(), MPFR_RNDN);
    mpfr_div(x, x, y, MPFR_RNDN);
    long double out = mpfr_get_ld(x, MPFR_RNDN);
    mpfr_clear(x);
    mpfr_clear(y);
    return out;
}

namespace {

// Rewrites both operands over one radicand. Fails if they generate
// different quadratic fields.
void unify(Surd::Coeffs& x, Surd::Coeffs& y) {
    if (y.b.sign() == 0) {
        y.radicand = x.radicand;
        return;
    }
    if (x.b.sign() == 0) {
        x.radicand = y.radicand;
        return;
    }
    if (x.radicand == y.radicand) return;
    Int g;
    mpz_gcd(g.get_mpz_t(), x.radicand.get_mpz_t(), y.radicand.get_mpz_t());
    Int ux = x.radicand / g;
    Int uy = y.radicand / g;
    require(is_perfect_square(ux) && is_perfect_square(uy),
            "surds from different quadratic fields");
    x.b *= Rat(isqrt(ux));
    y.b *= Rat(isqrt(uy));
    x.radicand = g;
    y.radicand = g;
}

}  // namespace

Surd operator+(const Surd& a, const Surd& b) {
    auto x = a.coeffs();
    auto y = b.coeffs();
    unify(x, y);
    return Surd::from_coeffs(x.a + y.a, x.b + y.b, x.radicand);
}

Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }

Surd operator*(const Surd& a, const Surd& b) {
    auto x = a.coeffs();
    auto y = b.coeffs();
    unify(x, y);
    Rat D(x.radicand);
    return Surd::from_coeffs(x.a * y.a + x.b * y.b * D, x.a * y.b + x.b * y.a, x.radicand);
}

std::strong_ordering operator<=>(const Surd& a, const Surd& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
         : s > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

int sign_of(const Rat& a, const Rat& b, const Int& D) {
    int sa = a.sign();
    int sb = D == 0 ? 0 : b.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: the larger magnitude wins.
    Rat lhs = a * a;
    Rat rhs = b * b * Rat(D);
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
}

std::strong_ordering cmp_surd_rat(const Surd& x, const Rat& r) {
    auto c = x.coeffs();
    int s = sign_of(c.a - r, c.b, c.radicand);
    return s < 0 ? std::strong_ordering::less
         : s > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

Int surd_floor(const Surd& x) { return x.floor(); }

Surd dist_nearest_int(const Surd& x) {
    Surd frac = x - Surd(Rat(x.floor()));
    if (cmp_surd_rat(frac, Rat(1, 2)) != std::strong_ordering::greater) return frac;
    return Surd(1) - frac;
}

Rat dist_nearest_int(const Rat& x) {
    Rat frac = x - Rat(x.floor());
    return std::min(frac, Rat(1) - frac);
}

// ---------------------------------------------------------------- p-adic

Rat PAdicAbs::value() const {
    if (!exp_) return Rat(0);
    return Rat(Int(1), ipow(p_, *exp_));
}

PAdicAbs padic_abs(const Int& n, const Int& p) {
    require(is_prime(p), "p-adic absolute value needs a prime, got " + p.get_str());
    if (n == 0) return PAdicAbs(p, std::nullopt);
    Int rest;
    unsigned long ell = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return PAdicAbs(p, ell);
}

bool padic_triangle_check(const Int& m, const Int& n, const Int& p) {
    Rat sum_abs = padic_abs(Int(n + m), p).value();
    Rat an = padic_abs(n, p).value();
    Rat am = padic_abs(m, p).value();
    Rat mx = std::max(an, am);
    return sum_abs <= mx && mx <= an + am;
}

}  // namespace cfcolor
