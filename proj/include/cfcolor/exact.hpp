#pragma once

/**
 * Exact scalars: arbitrary-precision rationals, real quadratic surds
 * (P + sqrt(D)) / Q, and p-adic absolute values of integers.
 *
 * Nothing in this header touches floating point. Surd comparisons reduce
 * to the sign of a + b*sqrt(D) with rational a, b, which is decided by
 * squaring once the signs of a and b disagree.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cfcolor {

using Int = mpz_class;

Int isqrt(const Int& n);
bool is_perfect_square(const Int& n);
// Deterministic trial division; intended for small prime parameters.
bool is_prime(const Int& p);
Int ipow(const Int& base, unsigned long exp);

// Reduced fraction with positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long v) : v_(v) {}
    Rat(const Int& v) : v_(v) {}
    Rat(const Int& num, const Int& den);

    // Accepts "a", "-a", "a/b".
    static Rat parse(std::string_view text);

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    Int floor() const;
    Int ceil() const;
    Rat abs() const;
    Rat inverse() const;
    Rat pow(long exp) const;

    std::string str() const { return v_.get_str(); }
    // Always "num/den", even for integers.
    std::string fraction_str() const;
    double approx() const { return v_.get_d(); }

    const mpq_class& mpq() const { return v_; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    explicit Rat(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_{0};
};

/**
 * Real number (P + sqrt(D)) / Q with D >= 0 and Q != 0.
 *
 * Normal form: Q divides D - P^2, which keeps complete-quotient steps of
 * the continued fraction algorithm integral. The constructor rescales
 * (P, D, Q) -> (P|Q|, D Q^2, Q|Q|) when the input is not in normal form.
 * Negative Q carries the sign, so -(P + sqrt(D))/Q is (P + sqrt(D))/(-Q).
 *
 * When D is a perfect square the value is rational and is_rational()
 * reports it. Arithmetic between two surds requires them to live in the
 * same quadratic field (or one of them to be rational).
 */
class Surd {
public:
    Surd() : Surd(Int(0), Int(0), Int(1)) {}
    Surd(Int P, Int D, Int Q);
    Surd(const Rat& r);
    Surd(long v) : Surd(Rat(v)) {}

    // a + b*sqrt(D)
    static Surd from_coeffs(const Rat& a, const Rat& b, const Int& D);

    const Int& P() const { return p_; }
    const Int& D() const { return d_; }
    const Int& Q() const { return q_; }

    bool is_rational() const { return rational_; }
    std::optional<Rat> as_rational() const;

    int sign() const;
    Int floor() const;
    Int ceil() const;
    Surd abs() const { return sign() < 0 ? -*this : *this; }
    Surd reciprocal() const;

    std::string str() const;
    // Nearest long double; for display only.
    long double approx() const;

    Surd operator-() const { return Surd(p_, d_, Int(-q_), Normalized{}); }
    friend Surd operator+(const Surd& a, const Surd& b);
    friend Surd operator-(const Surd& a, const Surd& b);
    friend Surd operator*(const Surd& a, const Surd& b);
    friend Surd operator/(const Surd& a, const Surd& b) { return a * b.reciprocal(); }

    // Value equality (representations may differ).
    friend bool operator==(const Surd& a, const Surd& b) { return (a - b).sign() == 0; }
    friend std::strong_ordering operator<=>(const Surd& a, const Surd& b);

    // a + b*sqrt(radicand); b == 0 for rational values.
    struct Coeffs {
        Rat a;
        Rat b;
        Int radicand;
    };
    Coeffs coeffs() const;

private:
    struct Normalized {};
    Surd(Int P, Int D, Int Q, Normalized) : p_(std::move(P)), d_(std::move(D)), q_(std::move(Q)) {
        rational_ = is_perfect_square(d_);
    }

    Int p_, d_, q_;
    bool rational_ = false;
};

// Exact sign of a + b*sqrt(D).
int sign_of(const Rat& a, const Rat& b, const Int& D);

std::strong_ordering cmp_surd_rat(const Surd& x, const Rat& r);

Int surd_floor(const Surd& x);

// ||x||, as an exact surd in [0, 1/2].
Surd dist_nearest_int(const Surd& x);
Rat dist_nearest_int(const Rat& x);

class PAdicAbs {
public:
    PAdicAbs(Int p, std::optional<unsigned long> exponent) : p_(std::move(p)), exp_(exponent) {}

    const Int& p() const { return p_; }
    bool is_zero() const { return !exp_.has_value(); }
    // l such that the value is p^-l; only meaningful when !is_zero().
    unsigned long exponent() const { return exp_.value_or(0); }
    Rat value() const;

    friend bool operator==(const PAdicAbs&, const PAdicAbs&) = default;

private:
    Int p_;
    std::optional<unsigned long> exp_;
};

// |n|_p. Throws PreconditionError unless p is prime.
PAdicAbs padic_abs(const Int& n, const Int& p);

// |n+m|_p <= max(|n|_p, |m|_p) <= |n|_p + |m|_p
bool padic_triangle_check(const Int& m, const Int& n, const Int& p);

}  // namespace cfcolor
