#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "cfcolor/errors.hpp"
#include "cfcolor/witness.hpp"
#include "oracles.hpp"

using namespace cfcolor;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

std::vector<long> longs(const std::vector<Int>& v) {
    std::vector<long> out;
    for (const auto& x : v) out.push_back(x.get_si());
    return out;
}

const CFExpansion kSilver({}, ints({2}));
const CFExpansion kGolden({}, ints({1}));

// Smallest i <= N with |b22 q_{is+r-1} - b12 q_{is+r}|_p <= 2p/N, from the
// digits alone.
std::uint64_t index_by_scan(const oracle::RandomCF& rc, long p, std::uint64_t N) {
    std::size_t r = rc.pre.size(), s = rc.per.size();
    auto digits = oracle::unroll(rc.pre, rc.per, N * s + r + 1);
    std::vector<mpz_class> q{1};
    for (std::size_t k = 1; k <= N * s + r; ++k) {
        mpz_class prev2 = k >= 2 ? q[k - 2] : mpz_class(0);
        q.push_back(digits[k - 1] * q[k - 1] + prev2);
    }
    // B (0,1)^T = (q_{r-1}, q_r)^T gives b12 and b22.
    mpz_class b12 = r >= 1 ? q[r - 1] : mpz_class(0);
    mpz_class b22 = q[r];
    for (std::uint64_t i = 1; i <= N; ++i) {
        mpz_class n = b22 * q[i * s + r - 1] - b12 * q[i * s + r];
        // |n|_p <= 2p/N  <=>  N <= 2p p^v  (n != 0)
        if (n == 0) return i;
        mpz_class pv = 1;
        while (n % p == 0) {
            n /= p;
            pv *= p;
        }
        if (mpz_class(N) <= 2 * p * pv) return i;
    }
    return 0;
}

}  // namespace

TEST_CASE("build_period_matrices") {
    auto m = build_period_matrices(kSilver);
    CHECK(m.A == Mat2Z{Int(0), Int(1), Int(1), Int(2)});
    CHECK(m.B == Mat2Z::identity());
    CHECK(m.b == 1);

    auto pre = build_period_matrices(CFExpansion(ints({1}), ints({2})));
    CHECK(pre.B == Mat2Z{Int(0), Int(1), Int(1), Int(1)});
    CHECK(pre.A == Mat2Z{Int(0), Int(1), Int(1), Int(2)});
    CHECK(pre.b == 1);

    auto two = build_period_matrices(CFExpansion({}, ints({1, 2})));
    CHECK(two.A == Mat2Z{Int(1), Int(1), Int(2), Int(3)});
    CHECK(two.B == Mat2Z::identity());
}

TEST_CASE("find_witness_index") {
    CHECK(find_witness_index(kSilver, Int(2), 16) == 4);
    CHECK(find_witness_index(kSilver, Int(2), 4) == 1);
    CHECK(find_witness_index(kGolden, Int(2), 8) == 3);
    CHECK_THROWS_AS(find_witness_index(kSilver, Int(6), 8), PreconditionError);

    for (int t = 0; t < 40; ++t) {
        auto cf = oracle::random_cf(6, 3, 3).expansion();
        // the index counts periods of the reduced expansion
        oracle::RandomCF rc{longs(cf.preperiod()), longs(cf.period())};
        for (long p : {2, 3, 5}) {
            for (std::uint64_t N : {1ull, 2ull, 5ull, 16ull, 33ull, 64ull}) {
                REQUIRE(find_witness_index(cf, Int(p), N) == index_by_scan(rc, p, N));
            }
        }
    }
}

TEST_CASE("make_witness") {
    auto w = make_witness(kSilver, Int(2), 16);
    CHECK(w.i == 4);
    CHECK(w.n_N == 12);
    CHECK(w.padic.value() == Rat(Int(1), Int(4)));
    CHECK(w.norm_term == Surd::from_coeffs(Rat(17), Rat(-12), Int(2)));
    CHECK(w.product == Surd::from_coeffs(Rat(51), Rat(-36), Int(2)));
    CHECK(w.product_enc.lo_double() > 0.0883117545);
    CHECK(w.product_enc.hi_double() < 0.0883117546);
    CHECK_NOTHROW(w.validate());

    auto first = make_witness(kSilver, Int(2), 4);
    CHECK(first.n_N == 1);
    CHECK(first.product == Surd(Int(-1), Int(2), Int(1)));

    // r = 0: n_N = q_{is-1}
    for (long p : {2, 3, 7}) {
        for (std::uint64_t N = 2; N <= 40; ++N) {
            auto rec = make_witness(kGolden, Int(p), N);
            auto table = convergent_table(kGolden, rec.i);
            CHECK(rec.n_N == table[rec.i - 1].q);
        }
    }

    CHECK_THROWS_AS(make_witness(Surd(Int(-1), Int(3), Int(1)), kSilver, Int(2), 8), PreconditionError);
}

TEST_CASE("tampered records fail validation") {
    auto w = make_witness(kSilver, Int(2), 16);
    auto bad = w;
    bad.n_N = 13;
    CHECK_THROWS_AS(bad.validate(), InconsistencyError);
    bad = w;
    bad.N = 64;  // 2p/N = 1/16 < 1/4
    CHECK_THROWS_AS(bad.validate(), InconsistencyError);
    bad = w;
    bad.product = bad.product + Surd(Rat(Int(1), Int(1000)));
    CHECK_THROWS_AS(bad.validate(), InconsistencyError);
}

TEST_CASE("growth_constant") {
    CHECK(growth_constant(kSilver) == Rat(6));
    CHECK(growth_constant(kGolden) == Rat(4));
    CFExpansion pre(ints({1}), ints({2}));
    // b = 1, q_1 = 1, a_max = 2, s = 1
    CHECK(growth_constant(pre) == Rat(6));
    for (std::uint64_t N = 1; N <= 10; ++N) {
        CHECK(Rat(make_witness(kSilver, Int(2), N).n_N) <= Rat(6).pow(static_cast<long>(N)));
        CHECK(Rat(make_witness(pre, Int(3), N).n_N) <= Rat(6).pow(static_cast<long>(N)));
    }
    CHECK(convergent_table(kSilver, 9)[9].q == 2378);

    for (int t = 0; t < 10; ++t) {
        auto rc = oracle::random_cf(4, 2, 3);
        CFExpansion cf = rc.expansion();
        Rat C = growth_constant(cf);
        WitnessSearch search(cf, Int(2));
        for (std::uint64_t N = 1; N <= 64; ++N) {
            auto rec = search.record(N);
            REQUIRE(Rat(rec.n_N) <= C.pow(static_cast<long>(N)));
        }
    }
}

TEST_CASE("exact bounds on every record") {
    for (int t = 0; t < 25; ++t) {
        auto rc = oracle::random_cf(5, 2, 3);
        CFExpansion cf = rc.expansion();
        for (long p : {2, 3}) {
            WitnessSearch search(cf, Int(p));
            Rat b(search.matrices().b);
            for (std::uint64_t N = 1; N <= 48; ++N) {
                auto rec = search.record(N);
                Surd x = Surd(Rat(rec.n_N)) * dist_nearest_int(Surd(Rat(rec.n_N)) * search.alpha());
                REQUIRE(cmp_surd_rat(x, Rat(4) * b * b) != std::strong_ordering::greater);
                REQUIRE(cmp_surd_rat(rec.product, Rat(8) * b * b * Rat(p) / Rat(Int(N))) !=
                        std::strong_ordering::greater);
                REQUIRE(rec.product_log.certainly_le(search.log_bound()));
            }
        }
    }
}

TEST_CASE("liminf_certificate") {
    SUBCASE("silver, p = 2") {
        auto s = liminf_certificate(kSilver, Int(2), 1024);
        CHECK(s.records.size() == 10);
        CHECK(s.skipped.empty());
        CHECK(s.holds);
        REQUIRE(s.max_product_log);
        // 0.310176695055269 from an independent 600-digit evaluation
        CHECK(s.max_product_log->lo_double() > 0.31017669505);
        CHECK(s.max_product_log->hi_double() < 0.31017669506);
        CHECK(s.max_product_log->width() <= 1e-6);
        CHECK(s.bound.lo_double() > 28.66815150);
        CHECK(s.bound.hi_double() < 28.66815151);
        CHECK(s.records.back().i == 256);
    }
    SUBCASE("silver, p = 3") {
        auto s = liminf_certificate(kSilver, Int(3), 1024);
        CHECK(s.holds);
        CHECK(s.max_product_log->lo_double() > 0.41397074937);
        CHECK(s.max_product_log->hi_double() < 0.41397074938);
        CHECK(s.records.back().i == 324);
        CHECK(s.bound.lo_double() > 43.00222726);
    }
    SUBCASE("golden, p = 2") {
        auto s = liminf_certificate(kGolden, Int(2), 256);
        CHECK(s.holds);
        CHECK(s.bound.hi_double() < 16 * 1.3862944);
    }
    CHECK_THROWS_AS(liminf_certificate(kSilver, Int(2), 1), PreconditionError);
}

TEST_CASE("brute_force_inf") {
    Surd alpha(Int(-1), Int(2), Int(1));
    auto r = brute_force_inf(kSilver, Int(2), 12, false);
    CHECK(r.n == 12);
    CHECK(r.product == Surd::from_coeffs(Rat(51), Rat(-36), Int(2)));

    auto one = brute_force_inf(kSilver, Int(5), 1, false);
    CHECK(one.n == 1);
    CHECK(one.product == alpha);

    SUBCASE("value never increases with nmax") {
        for (bool weighted : {false, true}) {
            Enclosure prev = brute_force_inf(kSilver, Int(3), 2, weighted).value;
            for (std::uint64_t nmax = 3; nmax <= 300; nmax += 7) {
                auto cur = brute_force_inf(kSilver, Int(3), nmax, weighted);
                CHECK_FALSE(prev.certainly_lt(cur.value));
                prev = cur.value;
            }
        }
    }

    SUBCASE("matches a numeric scan") {
        // 400-bit floating evaluation separates the minima comfortably here
        for (long p : {2, 3}) {
            long best_n = 0;
            mpfr_t best, cur;
            mpfr_init2(best, 400);
            mpfr_init2(cur, 400);
            mpfr_set_inf(best, 1);
            for (long n = 1; n <= 2000; ++n) {
                oracle::Bracket b(400);
                oracle::enclose(b, Int(-n), Int(2 * n * n), Int(1));  // n sqrt 2 - n
                mpfr_rint(cur, b.lo, MPFR_RNDN);
                mpfr_sub(cur, b.lo, cur, MPFR_RNDN);
                mpfr_abs(cur, cur, MPFR_RNDN);
                mpfr_mul_si(cur, cur, n, MPFR_RNDN);
                long m = n;
                while (m % p == 0) {
                    m /= p;
                    mpfr_div_si(cur, cur, p, MPFR_RNDN);
                }
                if (mpfr_less_p(cur, best)) {
                    mpfr_set(best, cur, MPFR_RNDN);
                    best_n = n;
                }
            }
            auto lib = brute_force_inf(alpha, Int(p), 2000, false);
            CHECK(lib.n == best_n);
            mpfr_clear(best);
            mpfr_clear(cur);
        }
    }

    SUBCASE("never exceeds a witness product in range") {
        auto bf = brute_force_inf(kSilver, Int(2), 20000, false);
        WitnessSearch search(kSilver, Int(2));
        for (std::uint64_t N = 2; N <= 1024; N *= 2) {
            auto rec = search.record(N);
            if (rec.n_N > 20000) continue;
            CHECK(bf.product <= rec.product);
        }
    }
    CHECK_THROWS_AS(brute_force_inf(kSilver, Int(2), 0, false), PreconditionError);
    CHECK_THROWS_AS(brute_force_inf(kSilver, Int(9), 10, false), PreconditionError);
}

TEST_CASE("complete_subgraph_check") {
    CHECK(complete_subgraph_check(build_period_matrices(kSilver), 5));
    CHECK(complete_subgraph_check(build_period_matrices(kSilver), 1));
    CHECK(complete_subgraph_check(build_period_matrices(CFExpansion(ints({1}), ints({2}))), 4));
    for (int t = 0; t < 20; ++t) {
        CHECK(complete_subgraph_check(build_period_matrices(oracle::random_cf(5, 3, 3).expansion()), 12));
    }
}

TEST_CASE("witness serialization") {
    auto w = make_witness(kSilver, Int(2), 16);
    std::ostringstream js;
    write_witness_jsonl(js, w);
    auto j = nlohmann::json::parse(js.str());
    CHECK(j["N"] == 16);
    CHECK(j["i"] == 4);
    CHECK(j["nN"] == "12");
    CHECK(j["padicNum"] == "1");
    CHECK(j["padicDen"] == "4");
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys.size() == 9);

    std::ostringstream csv;
    write_sweep_csv_header(csv);
    write_sweep_csv_row(csv, w);
    CHECK(csv.str().rfind("N,nN,product_lo,product_hi,productLog_lo,productLog_hi\n16,12,", 0) == 0);
}
