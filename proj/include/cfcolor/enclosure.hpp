#pragma once

#include <mpfr.h>

#include <string>

#include "cfcolor/exact.hpp"

namespace cfcolor {

/**
 * Closed interval [lo, hi] with MPFR endpoints, every operation rounded
 * outward. Used where a quantity is transcendental (logarithms) and a
 * bound must still be decided conservatively.
 */
class Enclosure {
public:
    static constexpr mpfr_prec_t kDefaultPrecision = 320;

    explicit Enclosure(mpfr_prec_t prec = kDefaultPrecision);
    Enclosure(const Rat& r, mpfr_prec_t prec = kDefaultPrecision);
    Enclosure(const Enclosure& other);
    Enclosure(Enclosure&& other) noexcept;
    Enclosure& operator=(Enclosure other) noexcept;
    ~Enclosure();

    // Working precision grows with the operand sizes so that cancellation
    // in P + sqrt(D) does not eat the requested bits.
    static Enclosure of(const Surd& x, mpfr_prec_t prec = kDefaultPrecision);
    // Natural log of a positive integer.
    static Enclosure log_of(const Int& n, mpfr_prec_t prec = kDefaultPrecision);
    static Enclosure log_of(const Rat& x, mpfr_prec_t prec = kDefaultPrecision);

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);

    static Enclosure hull(const Enclosure& a, const Enclosure& b);
    static Enclosure max(const Enclosure& a, const Enclosure& b);

    // Every point of *this is <= every point of other.
    bool certainly_le(const Enclosure& other) const;
    bool certainly_lt(const Enclosure& other) const;
    bool overlaps(const Enclosure& other) const;
    bool contains(const Rat& r) const;

    // hi - lo, rounded up.
    double width() const;
    double lo_double() const;  // rounded down
    double hi_double() const;  // rounded up

    // Scientific decimal strings rounded outward.
    std::string lo_str(int digits = 25) const;
    std::string hi_str(int digits = 25) const;

    mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

private:
    mpfr_t lo_;
    mpfr_t hi_;
    bool live_ = true;
};

std::string mpfr_decimal(mpfr_srcptr x, int digits, mpfr_rnd_t rnd);

}  // namespace cfcolor
