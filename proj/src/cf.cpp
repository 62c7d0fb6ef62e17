#include "cfcolor/cf.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "cfcolor/errors.hpp"

namespace cfcolor {

CFExpansion::CFExpansion(std::vector<Int> preperiod, std::vector<Int> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    require(!per_.empty(), "continued fraction period must be nonempty");
    for (const auto& v : {std::cref(pre_), std::cref(per_)}) {
        for (const Int& a : v.get()) require(a >= 1, "partial quotients must be positive");
    }

    std::size_t s = per_.size();
    for (std::size_t d = 1; d < s; ++d) {
        if (s % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < s && repeats; ++i) repeats = per_[i] == per_[i - d];
        if (repeats) {
            per_.resize(d);
            break;
        }
    }
    while (!pre_.empty() && pre_.back() == per_.back()) {
        std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
        pre_.pop_back();
    }
}

const Int& CFExpansion::digit(std::size_t k) const {
    require(k >= 1, "partial quotients are indexed from 1");
    if (k <= pre_.size()) return pre_[k - 1];
    return per_[(k - pre_.size() - 1) % per_.size()];
}

Int CFExpansion::max_digit() const {
    Int m = *std::max_element(per_.begin(), per_.end());
    for (const Int& b : pre_) m = std::max(m, b);
    return m;
}

std::string CFExpansion::str() const {
    auto join = [](const std::vector<Int>& v) {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += v[i].get_str();
        }
        return out + "]";
    };
    return "preperiod: " + join(pre_) + " period: " + join(per_);
}

namespace {

Int floor_of_quotient(const Int& P, const Int& root, const Int& Q) {
    Int r;
    if (Q > 0) {
        Int num = P + root;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    } else {
        Int num = -P - root - 1;
        Int den = -Q;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    return r;
}

}  // namespace

CFExpansion cf_expand(const Surd& x, std::size_t max_states) {
    require(!x.is_rational(), "continued fraction expansion needs an irrational surd");
    require(x.sign() > 0 && x.floor() == 0, "continued fraction input must lie in (0,1)");

    const Int& D = x.D();
    const Int root = isqrt(D);
    // Complete quotient xi_1 = 1/x, state (P, Q) meaning (P + sqrt(D))/Q.
    Int P = -x.P();
    Int Q = (D - x.P() * x.P()) / x.Q();

    std::map<std::pair<Int, Int>, std::size_t> seen;
    std::vector<Int> digits;
    for (std::size_t k = 0; k < max_states; ++k) {
        auto [it, fresh] = seen.emplace(std::make_pair(P, Q), k);
        if (!fresh) {
            std::size_t start = it->second;
            return CFExpansion(std::vector<Int>(digits.begin(), digits.begin() + start),
                               std::vector<Int>(digits.begin() + start, digits.end()));
        }
        Int a = floor_of_quotient(P, root, Q);
        digits.push_back(a);
        Int rem = P - a * Q;
        P = -rem;
        Q = (D - rem * rem) / Q;
    }
    throw BudgetExceeded("no repeated complete quotient within the state budget");
}

Surd cf_value(const CFExpansion& cf) {
    Mat2Z m = Mat2Z::identity();
    for (const Int& a : cf.period()) m = m * step_matrix(a);
    // Fixed point of y -> (m11 y + m12)/(m21 y + m22), positive root.
    Int diff = m.a22 - m.a11;
    Surd y(Int(m.a11 - m.a22), Int(diff * diff + 4 * m.a12 * m.a21), Int(2 * m.a21));

    Mat2Z n = Mat2Z::identity();
    for (const Int& b : cf.preperiod()) n = n * step_matrix(b);
    return (Surd(Rat(n.a11)) * y + Surd(Rat(n.a12))) / (Surd(Rat(n.a21)) * y + Surd(Rat(n.a22)));
}

std::vector<Convergent> convergent_table(const CFExpansion& cf, std::size_t kmax) {
    std::vector<Convergent> out;
    out.reserve(kmax + 1);
    out.push_back({0, Int(0), Int(1)});
    if (kmax >= 1) out.push_back({1, Int(1), cf.digit(1)});
    for (std::size_t k = 2; k <= kmax; ++k) {
        const Int& a = cf.digit(k);
        out.push_back({k, Int(a * out[k - 1].p + out[k - 2].p), Int(a * out[k - 1].q + out[k - 2].q)});
    }
    return out;
}

std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t kmax) {
    require(kmax >= 1, "kmax must be positive");
    auto table = convergent_table(cf, kmax);
    return {table.begin() + 1, table.end()};
}

Mat2Z step_matrix(const Int& a) {
    require(a >= 1, "step matrix digit must be positive");
    return {Int(0), Int(1), Int(1), a};
}

Mat2Z matrix_word(const CFExpansion& cf, std::size_t k) {
    require(k >= 1, "matrix word length must be positive");
    Mat2Z m = Mat2Z::identity();
    for (std::size_t j = 1; j <= k; ++j) m = step_matrix(cf.digit(j)) * m;
    return m;
}

bool check_quality(const Surd& x, const CFExpansion& cf, std::size_t k) {
    require(k >= 1, "quality check index must be positive");
    auto t = convergent_table(cf, k + 1);
    Surd err = (x - Surd(Rat(t[k].p, t[k].q))).abs();
    return cmp_surd_rat(err, Rat(Int(1), Int(t[k].q * t[k + 1].q))) != std::strong_ordering::greater;
}

std::vector<HurwitzEntry> hurwitz_scan(const Surd& x, std::size_t kmax) {
    Surd frac = x - Surd(Rat(x.floor()));
    auto table = convergent_table(cf_expand(frac), kmax);
    std::vector<HurwitzEntry> out;
    out.reserve(table.size());
    for (const auto& c : table) {
        Surd t = Surd(Rat(c.q)) * dist_nearest_int(Surd(Rat(c.q)) * x);
        bool within = cmp_surd_rat(t * t, Rat(1, 5)) != std::strong_ordering::greater;
        out.push_back({c.k, c.q, within});
    }
    return out;
}

}  // namespace cfcolor
