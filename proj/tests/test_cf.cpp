#include <doctest.h>

#include "cfcolor/cf.hpp"
#include "cfcolor/errors.hpp"
#include "oracles.hpp"

using namespace cfcolor;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

Surd sqrt2_minus_1() { return Surd(Int(-1), Int(2), Int(1)); }
Surd golden_conj() { return Surd(Int(-1), Int(5), Int(2)); }

}  // namespace

TEST_CASE("cf_expand on known surds") {
    CHECK(cf_expand(sqrt2_minus_1()) == CFExpansion({}, ints({2})));
    CHECK(cf_expand(golden_conj()) == CFExpansion({}, ints({1})));
    CHECK(cf_expand(Surd(Int(-1), Int(3), Int(2))) == CFExpansion({}, ints({2, 1})));
    // sqrt(7) - 2 = [1, 1, 1, 4, 1, 1, 1, 4, ...]
    CHECK(cf_expand(Surd(Int(-2), Int(7), Int(1))) == CFExpansion({}, ints({1, 1, 1, 4})));
    // 1/(3 + (sqrt 2 - 1)) has preperiod [3]
    CHECK(cf_expand((Surd(3) + sqrt2_minus_1()).reciprocal()) == CFExpansion(ints({3}), ints({2})));

    CHECK_THROWS_AS(cf_expand(Surd(Rat(Int(1), Int(3)))), PreconditionError);
    CHECK_THROWS_AS(cf_expand(Surd(Int(0), Int(2), Int(1))), PreconditionError);
    CHECK_THROWS_AS(cf_expand(-sqrt2_minus_1()), PreconditionError);
}

TEST_CASE("CFExpansion is canonical") {
    CHECK(CFExpansion({}, ints({2, 2, 2})) == CFExpansion({}, ints({2})));
    CHECK(CFExpansion(ints({2}), ints({1, 2})) == CFExpansion({}, ints({2, 1})));
    CHECK(CFExpansion(ints({5, 1, 2}), ints({1, 2})) == CFExpansion(ints({5}), ints({1, 2})));
    CHECK(CFExpansion({}, ints({1, 2})).str() == "preperiod: [] period: [1,2]");
    CHECK_THROWS_AS(CFExpansion({}, {}), PreconditionError);
    CHECK_THROWS_AS(CFExpansion({}, ints({0})), PreconditionError);
}

TEST_CASE("round trip through cf_value") {
    for (int t = 0; t < 150; ++t) {
        auto rc = oracle::random_cf(9, 3, 4);
        CFExpansion cf = rc.expansion();
        Surd x = cf_value(cf);
        REQUIRE(cf_expand(x) == cf);
        // the value must also match the truncations numerically
        mpq_class lo = oracle::eval_bottom_up(oracle::unroll(rc.pre, rc.per, 40));
        mpq_class hi = oracle::eval_bottom_up(oracle::unroll(rc.pre, rc.per, 41));
        if (lo > hi) std::swap(lo, hi);
        REQUIRE(oracle::numeric_cmp(x.P(), x.D(), x.Q(), lo) >= 0);
        REQUIRE(oracle::numeric_cmp(x.P(), x.D(), x.Q(), hi) <= 0);
    }
}

TEST_CASE("convergents") {
    auto c = convergents(CFExpansion({}, ints({2})), 3);
    REQUIRE(c.size() == 3);
    CHECK(c[0].p == 1);
    CHECK(c[0].q == 2);
    CHECK(c[1].p == 2);
    CHECK(c[1].q == 5);
    CHECK(c[2].p == 5);
    CHECK(c[2].q == 12);

    auto f = convergent_table(CFExpansion({}, ints({1})), 5);
    std::vector<long> fib = {1, 1, 2, 3, 5, 8};
    for (std::size_t k = 0; k <= 5; ++k) CHECK(f[k].q == fib[k]);
    CHECK(f[0].p == 0);
    CHECK(f[0].q == 1);
    CHECK_THROWS_AS(convergents(CFExpansion({}, ints({1})), 0), PreconditionError);
}

TEST_CASE("convergents agree with bottom-up evaluation") {
    for (int t = 0; t < 100; ++t) {
        auto rc = oracle::random_cf(9, 3, 4);
        auto table = convergent_table(rc.expansion(), 25);
        for (std::size_t k = 1; k <= 25; ++k) {
            mpq_class want = oracle::eval_bottom_up(oracle::unroll(rc.pre, rc.per, k));
            REQUIRE(table[k].p == want.get_num());
            REQUIRE(table[k].q == want.get_den());
            if (k >= 2) REQUIRE(table[k].q > table[k - 1].q);
        }
    }
}

TEST_CASE("step and word matrices") {
    CHECK(step_matrix(Int(2)) == Mat2Z{Int(0), Int(1), Int(1), Int(2)});
    CHECK(step_matrix(Int(7)).det() == -1);
    CHECK_THROWS_AS(step_matrix(Int(0)), PreconditionError);

    CFExpansion two({}, ints({2}));
    CHECK(matrix_word(two, 1) == step_matrix(Int(2)));
    auto v = matrix_word(two, 2).apply(Int(0), Int(1));
    CHECK(v[0] == 2);
    CHECK(v[1] == 5);

    for (int t = 0; t < 50; ++t) {
        auto rc = oracle::random_cf(9, 3, 4);
        CFExpansion cf = rc.expansion();
        auto table = convergent_table(cf, 31);
        // Multiply the digits out independently of matrix_word.
        auto digits = oracle::unroll(rc.pre, rc.per, 30);
        Mat2Z word;
        for (std::size_t k = 1; k <= 30; ++k) {
            word = Mat2Z{Int(0), Int(1), Int(1), Int(digits[k - 1])} * word;
            Mat2Z lib = matrix_word(cf, k);
            REQUIRE(lib == word);
            auto col = lib.apply(Int(0), Int(1));
            REQUIRE(col[0] == table[k - 1].q);
            REQUIRE(col[1] == table[k].q);
            REQUIRE(lib.det() == (k % 2 == 0 ? 1 : -1));
        }
    }
}

TEST_CASE("check_quality") {
    Surd a = sqrt2_minus_1();
    CFExpansion cf = cf_expand(a);
    CHECK(check_quality(a, cf, 1));
    CHECK(check_quality(a, cf, 3));
    CHECK(check_quality(golden_conj(), cf_expand(golden_conj()), 4));

    for (int t = 0; t < 20; ++t) {
        Surd x = oracle::random_unit_surd();
        CFExpansion e = cf_expand(x);
        for (std::size_t k = 1; k <= 30; ++k) REQUIRE(check_quality(x, e, k));
    }
}

TEST_CASE("hurwitz_scan") {
    auto g = hurwitz_scan(golden_conj(), 10);
    REQUIRE(g.size() == 11);
    for (std::size_t k = 1; k + 1 < g.size(); ++k) CHECK((g[k].within || g[k + 1].within));

    auto s = hurwitz_scan(sqrt2_minus_1(), 3);
    CHECK(s[1].q == 2);
    CHECK(s[1].within);
    // q_0 = 1 and ||sqrt 2 - 1|| = 0.414... < 1/sqrt 5
    CHECK(s[0].within);
}
