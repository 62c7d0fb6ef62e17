#include "cfcolor/enclosure.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "cfcolor/errors.hpp"

namespace cfcolor {

Enclosure::Enclosure(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Rat& r, mpfr_prec_t prec) : Enclosure(prec) {
    mpfr_set_q(lo_, r.mpq().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, r.mpq().get_mpq_t(), MPFR_RNDU);
}

Enclosure::Enclosure(const Enclosure& other) : Enclosure(other.precision()) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& other) noexcept {
    // Steal the limbs: mpfr_t is an array of one struct.
    lo_[0] = other.lo_[0];
    hi_[0] = other.hi_[0];
    other.live_ = false;
}

Enclosure& Enclosure::operator=(Enclosure other) noexcept {
    std::swap(lo_[0], other.lo_[0]);
    std::swap(hi_[0], other.hi_[0]);
    std::swap(live_, other.live_);
    return *this;
}

Enclosure::~Enclosure() {
    if (live_) {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }
}

Enclosure Enclosure::of(const Surd& x, mpfr_prec_t prec) {
    if (auto r = x.as_rational()) return Enclosure(*r, prec);
    mpfr_prec_t work = prec
        + static_cast<mpfr_prec_t>(mpz_sizeinbase(x.P().get_mpz_t(), 2))
        + static_cast<mpfr_prec_t>(mpz_sizeinbase(x.D().get_mpz_t(), 2))
        + 64;
    Enclosure num(work);
    mpfr_set_z(num.lo_, x.D().get_mpz_t(), MPFR_RNDD);
    mpfr_sqrt(num.lo_, num.lo_, MPFR_RNDD);
    mpfr_add_z(num.lo_, num.lo_, x.P().get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(num.hi_, x.D().get_mpz_t(), MPFR_RNDU);
    mpfr_sqrt(num.hi_, num.hi_, MPFR_RNDU);
    mpfr_add_z(num.hi_, num.hi_, x.P().get_mpz_t(), MPFR_RNDU);

    Enclosure out(work);
    if (x.Q() > 0) {
        mpfr_div_z(out.lo_, num.lo_, x.Q().get_mpz_t(), MPFR_RNDD);
        mpfr_div_z(out.hi_, num.hi_, x.Q().get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_div_z(out.lo_, num.hi_, x.Q().get_mpz_t(), MPFR_RNDD);
        mpfr_div_z(out.hi_, num.lo_, x.Q().get_mpz_t(), MPFR_RNDU);
    }
    return out;
}

Enclosure Enclosure::log_of(const Int& n, mpfr_prec_t prec) {
    require(n > 0, "log of a non-positive integer");
    Enclosure out(prec);
    mpfr_set_z(out.lo_, n.get_mpz_t(), MPFR_RNDD);
    mpfr_log(out.lo_, out.lo_, MPFR_RNDD);
    mpfr_set_z(out.hi_, n.get_mpz_t(), MPFR_RNDU);
    mpfr_log(out.hi_, out.hi_, MPFR_RNDU);
    return out;
}

Enclosure Enclosure::log_of(const Rat& x, mpfr_prec_t prec) {
    require(x.sign() > 0, "log of a non-positive rational");
    Enclosure out(x, prec);
    mpfr_log(out.lo_, out.lo_, MPFR_RNDD);
    mpfr_log(out.hi_, out.hi_, MPFR_RNDU);
    return out;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    Enclosure out(std::max(a.precision(), b.precision()));
    mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    mpfr_prec_t prec = std::max(a.precision(), b.precision());
    Enclosure out(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return out;
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
    Enclosure out(std::max(a.precision(), b.precision()));
    mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

Enclosure Enclosure::max(const Enclosure& a, const Enclosure& b) {
    Enclosure out(std::max(a.precision(), b.precision()));
    mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

bool Enclosure::certainly_le(const Enclosure& other) const {
    return mpfr_lessequal_p(hi_, other.lo_) != 0;
}

bool Enclosure::certainly_lt(const Enclosure& other) const {
    return mpfr_less_p(hi_, other.lo_) != 0;
}

bool Enclosure::overlaps(const Enclosure& other) const {
    return !certainly_lt(other) && !other.certainly_lt(*this);
}

bool Enclosure::contains(const Rat& r) const {
    return mpfr_cmp_q(lo_, r.mpq().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, r.mpq().get_mpq_t()) >= 0;
}

double Enclosure::width() const {
    mpfr_t t;
    mpfr_init2(t, precision());
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    double w = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return w;
}

double Enclosure::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Enclosure::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string Enclosure::lo_str(int digits) const { return mpfr_decimal(lo_, digits, MPFR_RNDD); }
std::string Enclosure::hi_str(int digits) const { return mpfr_decimal(hi_, digits, MPFR_RNDU); }

std::string mpfr_decimal(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    if (mpfr_zero_p(x)) return "0";
    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(digits), x, rnd);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
        sign = "-";
        mant.erase(0, 1);
    }
    // mpfr gives 0.d1d2... * 10^exp
    std::string out = sign + mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(exp) - 1);
    return out;
}

}  // namespace cfcolor
