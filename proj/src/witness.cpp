#include "cfcolor/witness.hpp"

#include <ostream>

#include <json.hpp>

#include "cfcolor/kernels.hpp"
#include "cfcolor/padic_projective.hpp"

namespace cfcolor {

PeriodMatrices build_period_matrices(const CFExpansion& cf) {
    PeriodMatrices out;
    out.r = cf.r();
    out.s = cf.s();
    for (std::size_t k = 1; k <= out.r; ++k) out.B = step_matrix(cf.digit(k)) * out.B;
    for (std::size_t k = out.r + 1; k <= out.r + out.s; ++k) out.A = step_matrix(cf.digit(k)) * out.A;
    out.b = std::max(Int(abs(out.B.a22)), Int(abs(out.B.a12)));
    ensure(out.A.is_unimodular() && out.B.is_unimodular(), "period matrices left GL(2,Z)");
    return out;
}

Rat growth_constant(const CFExpansion& cf) {
    PeriodMatrices mats = build_period_matrices(cf);
    Int qr = convergent_table(cf, cf.r())[cf.r()].q;
    Int base = cf.max_digit() + 1;
    return Rat(Int(2 * mats.b * qr * ipow(base, cf.s())));
}

namespace {

Enclosure log_bound_for(const Int& b, const Int& p, const Rat& C) {
    return Enclosure(Rat(Int(8 * b * b * p))) * Enclosure::log_of(C);
}

// n <= C^N without materializing C^N when the bit count already decides it.
bool within_growth(const Int& n, const Rat& C, std::uint64_t N) {
    Int c = C.floor();
    std::size_t cbits = mpz_sizeinbase(c.get_mpz_t(), 2) - 1;  // 2^cbits <= C
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= cbits * N) return true;
    return Rat(n) <= C.pow(static_cast<long>(N));
}

bool surd_le(const Surd& x, const Rat& r) {
    return cmp_surd_rat(x, r) != std::strong_ordering::greater;
}

}  // namespace

void WitnessRecord::validate() const {
    const Rat bR(b);
    const Rat pR(p);
    ensure(n_N > 0, "witness n_N must be positive");
    ensure(padic == padic_abs(n_N, p), "stored p-adic value disagrees with n_N");
    ensure(padic.value() <= Rat(Int(2 * p), Int(N)), "witness misses the 2p/N threshold");
    ensure(norm_term == dist_nearest_int(Surd(Rat(n_N)) * alpha), "norm term is not ||n_N alpha||");
    ensure(product == Surd(Rat(n_N) * padic.value()) * norm_term, "product disagrees with its factors");
    ensure(surd_le(Surd(Rat(n_N)) * norm_term, Rat(4) * bR * bR), "n_N ||n_N alpha|| exceeds 4b^2");
    ensure(surd_le(product, Rat(8) * bR * bR * pR / Rat(Int(N))), "product exceeds 8b^2 p / N");
    ensure(within_growth(n_N, C, N), "n_N exceeds C^N");
    ensure(product_log.certainly_le(log_bound_for(b, p, C)), "log-weighted product exceeds 8b^2 p log C");
}

WitnessSearch::WitnessSearch(const Surd& alpha, const CFExpansion& cf, const Int& p)
    : alpha_(alpha),
      cf_(cf),
      p_(p),
      mats_(build_period_matrices(cf)),
      C_(growth_constant(cf)),
      log_bound_(log_bound_for(mats_.b, p, C_)),
      table_(convergent_table(cf, cf.r() + cf.s())) {
    require(is_prime(p), "witness search needs a prime, got " + p.get_str());
    require(cf_expand(alpha) == cf, "alpha does not have the given continued fraction");
}

WitnessSearch::WitnessSearch(const CFExpansion& cf, const Int& p) : WitnessSearch(cf_value(cf), cf, p) {}

void WitnessSearch::reserve(std::uint64_t Nmax) {
    std::size_t need = Nmax * mats_.s + mats_.r;
    while (table_.size() <= need) {
        std::size_t k = table_.size();
        const Int& a = cf_.digit(k);
        const auto& c1 = table_[k - 1];
        const auto& c2 = table_[k - 2];
        table_.push_back({k, Int(a * c1.p + c2.p), Int(a * c1.q + c2.q)});
    }
}

const Convergent& WitnessSearch::conv(std::size_t k) const {
    require(k < table_.size(), "convergent table not reserved far enough");
    return table_[k];
}

std::uint64_t WitnessSearch::index(std::uint64_t N) {
    reserve(N);
    return std::as_const(*this).index(N);
}

std::uint64_t WitnessSearch::index(std::uint64_t N) const {
    require(N >= 1, "N must be positive");
    const Rat threshold(Int(2 * p_), Int(N));
    const Mat2Z Binv = mats_.B.inverse();
    const PrimitiveVector e2(Int(0), Int(1));
    Mat2Z word = mats_.B;
    for (std::uint64_t i = 1; i <= N; ++i) {
        word = mats_.A * word;  // A^i B
        std::size_t m = i * mats_.s + mats_.r;
        const Int& qa = conv(m - 1).q;
        const Int& qb = conv(m).q;
        auto [x, y] = word.apply(Int(0), Int(1));
        ensure(x == qa && y == qb, "matrix word and convergent recurrence disagree");

        PAdicAbs v = padic_abs(Int(mats_.B.a22 * qa - mats_.B.a12 * qb), p_);
        // Same distance through the group action: d(B^-1 A^i B e2, e2).
        auto [u, w] = Binv.apply(x, y);
        ensure(pdist(PrimitiveVector(u, w), e2, p_) == v.value(), "isometric route disagrees");
        if (v.value() <= threshold) return i;
    }
    throw InconsistencyError("no index i <= N meets the 2p/N threshold");
}

WitnessRecord WitnessSearch::record(std::uint64_t N) {
    reserve(N);
    return std::as_const(*this).record(N);
}

WitnessRecord WitnessSearch::record(std::uint64_t N) const {
    const std::uint64_t i = index(N);
    const std::size_t m = i * mats_.s + mats_.r;
    const Int& qa = conv(m - 1).q;
    const Int& qb = conv(m).q;
    const Int& b22 = mats_.B.a22;
    const Int& b12 = mats_.B.a12;
    Int n = abs(b22 * qa - b12 * qb);
    if (n == 0) throw BelowThresholdN("n_N = 0 at N=" + std::to_string(N) + "; increase N");

    WitnessRecord rec;
    rec.N = N;
    rec.i = i;
    rec.alpha = alpha_;
    rec.p = p_;
    rec.n_N = n;
    rec.padic = padic_abs(n, p_);
    rec.norm_term = dist_nearest_int(Surd(Rat(n)) * alpha_);
    rec.product = Surd(Rat(n) * rec.padic.value()) * rec.norm_term;
    rec.product_enc = Enclosure::of(rec.product);
    rec.product_log = rec.product_enc * Enclosure::log_of(n);
    rec.b = mats_.b;
    rec.C = C_;

    // The chain behind the 4b^2 bound.
    const Rat bR(mats_.b);
    ensure(n <= 2 * mats_.b * qb, "n_N exceeds 2b q_{is+r}");
    Surd chain = Surd(Rat(Int(abs(b22)))) * dist_nearest_int(Surd(Rat(qa)) * alpha_) +
                 Surd(Rat(Int(abs(b12)))) * dist_nearest_int(Surd(Rat(qb)) * alpha_);
    ensure(rec.norm_term <= chain, "||n_N alpha|| exceeds its convergent decomposition");
    ensure(surd_le(Surd(Rat(Int(2 * mats_.b * qb))) * chain, Rat(4) * bR * bR),
           "convergent decomposition exceeds 4b^2");
    rec.validate();
    return rec;
}

std::uint64_t find_witness_index(const CFExpansion& cf, const Int& p, std::uint64_t N) {
    WitnessSearch search(cf, p);
    return search.index(N);
}

WitnessRecord make_witness(const CFExpansion& cf, const Int& p, std::uint64_t N) {
    WitnessSearch search(cf, p);
    return search.record(N);
}

WitnessRecord make_witness(const Surd& alpha, const CFExpansion& cf, const Int& p, std::uint64_t N) {
    WitnessSearch search(alpha, cf, p);
    return search.record(N);
}

LiminfSummary liminf_certificate(const Surd& alpha, const CFExpansion& cf, const Int& p,
                                 std::uint64_t Nmax, int threads) {
    require(Nmax >= 2, "sweep needs Nmax >= 2");
    WitnessSearch search(alpha, cf, p);
    search.reserve(Nmax);
    return threads <= 1 ? liminf_sweep_serial(search, Nmax)
                        : liminf_sweep_parallel(search, Nmax, threads);
}

LiminfSummary liminf_certificate(const CFExpansion& cf, const Int& p, std::uint64_t Nmax, int threads) {
    return liminf_certificate(cf_value(cf), cf, p, Nmax, threads);
}

BruteForceResult brute_force_inf(const Surd& alpha, const Int& p, std::uint64_t nmax, bool weighted,
                                 int threads) {
    require(nmax >= 1, "nmax must be positive");
    require(is_prime(p), "brute force needs a prime, got " + p.get_str());
    // log 1 = 0 would make the weighted minimum trivial.
    std::uint64_t lo = weighted && nmax >= 2 ? 2 : 1;
    return threads <= 1 ? brute_force_range_serial(alpha, p, lo, nmax, weighted)
                        : brute_force_parallel(alpha, p, lo, nmax, weighted, threads);
}

BruteForceResult brute_force_inf(const CFExpansion& cf, const Int& p, std::uint64_t nmax, bool weighted,
                                 int threads) {
    return brute_force_inf(cf_value(cf), p, nmax, weighted, threads);
}

bool complete_subgraph_check(const PeriodMatrices& mats, std::size_t N) {
    if (N <= 1) return true;
    const Mat2Z Binv = mats.B.inverse();
    std::vector<Mat2Z> elems;  // elems[i-1] = B^-1 A^i B
    Mat2Z power = Mat2Z::identity();
    for (std::size_t i = 1; i <= N; ++i) {
        power = mats.A * power;
        elems.push_back(Binv * power * mats.B);
    }
    for (std::size_t i = 1; i <= N; ++i) {
        Mat2Z inv = elems[i - 1].inverse();
        for (std::size_t j = i + 1; j <= N; ++j) {
            if (elems[i - 1] == elems[j - 1]) return false;
            if (inv * elems[j - 1] != elems[j - i - 1]) return false;
        }
    }
    return true;
}

void write_witness_jsonl(std::ostream& os, const WitnessRecord& rec) {
    rec.validate();
    Rat pv = rec.padic.value();
    nlohmann::ordered_json j;
    j["N"] = rec.N;
    j["i"] = rec.i;
    j["nN"] = rec.n_N.get_str();
    j["padicNum"] = pv.num().get_str();
    j["padicDen"] = pv.den().get_str();
    j["productLo"] = rec.product_enc.lo_str();
    j["productHi"] = rec.product_enc.hi_str();
    j["productLogLo"] = rec.product_log.lo_str();
    j["productLogHi"] = rec.product_log.hi_str();
    os << j.dump() << '\n';
}

void write_sweep_csv_header(std::ostream& os) {
    os << "N,nN,product_lo,product_hi,productLog_lo,productLog_hi\n";
}

void write_sweep_csv_row(std::ostream& os, const WitnessRecord& rec) {
    rec.validate();
    os << rec.N << ',' << rec.n_N.get_str() << ',' << rec.product_enc.lo_str() << ','
       << rec.product_enc.hi_str() << ',' << rec.product_log.lo_str() << ','
       << rec.product_log.hi_str() << '\n';
}

}  // namespace cfcolor
