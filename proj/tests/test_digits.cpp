#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "takagi/digits.hpp"

using namespace takagi;

namespace {

DigitString ds(int base, std::vector<int> digits) { return DigitString(base, std::move(digits)); }

RAdic radic(int base, long num, int depth) { return RAdic(base, Int(num), depth); }

// All values representable by strings of exactly `depth` digits.
std::vector<RAdic> depth_universe(int base, int depth) {
    std::vector<RAdic> out;
    const long total = static_cast<long>(mpz_get_ui(pow_int(base, depth).get_mpz_t()));
    out.reserve(static_cast<size_t>(total));
    for (long k = 0; k < total; ++k)
        out.push_back(radic(base, k, depth));
    return out;
}

// Zeros of the infinite expansion (zero tail raises D past the canonical
// depth, adding one zero when D_N < 0), counted independently of local_class.
int infinite_zero_count(const RAdic& x) {
    if (x.depth() == 0) return 0;
    const auto prof = x.digits().deficiency_profile();
    int zeros = static_cast<int>(std::count(prof.begin(), prof.end(), 0));
    if (prof.back() < 0) ++zeros;
    return zeros;
}

} // namespace

TEST_CASE("expand produces the unique depth-N string") {
    CHECK(expand(5, 4, 2) == ds(2, {0, 1, 0, 1}));
    CHECK(expand(11, 2, 4) == ds(4, {2, 3}));
    CHECK(expand(0, 3, 2) == ds(2, {0, 0, 0}));
    CHECK_THROWS_AS(expand(16, 4, 2), std::invalid_argument); // k = r^N
    CHECK_THROWS_AS(expand(-1, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(expand(1, 2, 3), std::invalid_argument); // odd base
    CHECK_THROWS_AS(expand(0, 1, 0), std::invalid_argument);
}

TEST_CASE("value of a digit string") {
    CHECK(ds(2, {0, 1, 0, 1}).value() == Rational(5, 16));
    CHECK(ds(4, {2, 3}).value() == Rational(11, 16));
    CHECK(ds(2, {}).value() == 0);
}

TEST_CASE("expand/value round trip") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 500; ++trial) {
        const int r = 2 * (1 + static_cast<int>(rng() % 5));
        const int n = static_cast<int>(rng() % 12);
        const Int pw = pow_int(r, n);
        const Int k = Int(rng()) % pw;
        Rational expect(k, pw);
        expect.canonicalize();
        CHECK(expand(k, n, r).value() == expect);
    }
}

TEST_CASE("deficiency counts low minus high digits") {
    const DigitString a = ds(2, {0, 1, 0, 1});
    CHECK(a.deficiency(1) == 1);
    CHECK(a.deficiency(2) == 0);
    CHECK(a.deficiency(3) == 1);
    CHECK(a.deficiency(4) == 0);
    CHECK(ds(4, {2, 3}).deficiency(2) == -2);
    CHECK(ds(2, {0, 1, 1, 0}).deficiency(4) == 0);
    CHECK_THROWS_AS(a.deficiency(0), std::out_of_range);
    CHECK_THROWS_AS(a.deficiency(5), std::out_of_range);
}

TEST_CASE("deficiency telescopes by one") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int r = 2 * (1 + static_cast<int>(rng() % 3));
        std::vector<int> digits(1 + rng() % 14);
        for (int& d : digits) d = static_cast<int>(rng() % static_cast<unsigned>(r));
        const auto prof = ds(r, digits).deficiency_profile();
        int prev = 0;
        for (int d : prof) {
            CHECK(std::abs(d - prev) == 1);
            prev = d;
        }
    }
}

TEST_CASE("classify: balance, order, generation, leading") {
    const BalanceInfo a = classify(ds(2, {0, 1, 0, 1}));
    CHECK(a.balanced);
    CHECK(a.order == 2);
    CHECK(a.generation == 2);
    CHECK(a.leading);
    CHECK(a.zero_positions == std::vector<int>{2, 4});

    const BalanceInfo b = classify(ds(2, {0, 1, 1, 0}));
    CHECK(b.balanced);
    CHECK(b.order == 2);
    CHECK(b.generation == 2);
    CHECK_FALSE(b.leading); // deficiency dips to -1 at position 3

    const BalanceInfo c = classify(ds(4, {1, 2}));
    CHECK(c.balanced);
    CHECK(c.order == 1);
    CHECK(c.generation == 1);
    CHECK(c.leading);

    const BalanceInfo whole = classify(ds(2, {}));
    CHECK(whole.balanced);
    CHECK(whole.order == 0);
    CHECK(whole.generation == 0);
    CHECK(whole.leading);

    CHECK_FALSE(classify(ds(2, {1})).balanced); // odd depth is a legal string
}

TEST_CASE("RAdic canonical form") {
    CHECK(radic(2, 2, 2) == radic(2, 1, 1));
    CHECK(radic(2, 0, 5) == radic(2, 0, 0));
    CHECK(radic(2, 16, 4).depth() == 0); // value 1
    CHECK(radic(2, 16, 4).numerator() == 1);
    CHECK_THROWS_AS(radic(2, 17, 4), std::invalid_argument);
    CHECK_THROWS_AS(radic(3, 1, 1), std::invalid_argument);

    CHECK(RAdic::from_rational(2, Rational(5, 16)) == radic(2, 5, 4));
    CHECK(RAdic::from_rational(4, Rational(1, 2)) == radic(4, 2, 1));
    CHECK_THROWS_AS(RAdic::from_rational(2, Rational(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(RAdic::from_rational(2, Rational(3, 2)), std::invalid_argument);

    CHECK_THROWS_AS(radic(2, 1, 0).digits(), std::domain_error);
    CHECK(radic(2, 0, 0).digits() == ds(2, {}));
}

TEST_CASE("balanced completion of an RAdic") {
    auto half = radic(2, 1, 1).balanced_digits();
    REQUIRE(half.has_value());
    CHECK(*half == ds(2, {1, 0}));
    CHECK(classify(*half).order == 1);

    auto q34 = radic(2, 3, 2).balanced_digits();
    REQUIRE(q34.has_value());
    CHECK(*q34 == ds(2, {1, 1, 0, 0}));

    CHECK_FALSE(radic(2, 1, 4).balanced_digits().has_value()); // 1/16, D stays positive
    auto zero = radic(2, 0, 0).balanced_digits();
    REQUIRE(zero.has_value());
    CHECK(zero->depth() == 0);
}

TEST_CASE("balanced_interval_of: the three constructions") {
    // oracle: collect every balanced string of depth <= 6 whose interval has
    // x as an endpoint; the returned interval must be among them.
    auto oracle_check = [](const RAdic& x, const BalancedInterval& got) {
        const Rational v = x.value();
        bool found = false;
        for (int depth = 0; depth <= 6; depth += 2) {
            const long total = 1l << depth;
            for (long k = 0; k < total; ++k) {
                const DigitString cand = expand(k, depth, 2);
                if (!classify(cand).balanced) continue;
                const Rational lo = cand.value();
                const Rational hi = lo + rational_pow(2, -depth);
                if ((lo == v || hi == v) && lo == got.lo && hi == got.hi) found = true;
            }
        }
        return found;
    };

    const auto a = balanced_interval_of(radic(2, 1, 1)); // x = 1/2
    CHECK(a.x0 == radic(2, 1, 1));
    CHECK(a.lo == Rational(1, 2));
    CHECK(a.hi == Rational(3, 4));
    CHECK(oracle_check(radic(2, 1, 1), a));

    const auto b = balanced_interval_of(radic(2, 1, 2)); // x = 1/4
    CHECK(b.x0 == radic(2, 1, 2));
    CHECK(b.lo == Rational(1, 4));
    CHECK(b.hi == Rational(1, 2));
    CHECK(oracle_check(radic(2, 1, 2), b));

    const auto c = balanced_interval_of(radic(2, 3, 2)); // x = 3/4
    CHECK(c.x0 == radic(2, 3, 2));
    CHECK(c.lo == Rational(3, 4));
    CHECK(c.hi == Rational(13, 16));
    CHECK(oracle_check(radic(2, 3, 2), c));

    CHECK_THROWS_AS(balanced_interval_of(radic(2, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(balanced_interval_of(radic(2, 1, 0)), std::invalid_argument);
}

TEST_CASE("balanced_interval_of postconditions on random inputs") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 400; ++trial) {
        const int r = trial % 2 == 0 ? 2 : 4;
        const int n = 1 + static_cast<int>(rng() % 10);
        const Int pw = pow_int(r, n);
        Int k = Int(rng()) % (pw - 1) + 1;
        const RAdic x(r, k, n);
        if (x.value() <= 0 || x.value() >= 1) continue;
        const auto bi = balanced_interval_of(x);
        const auto bd = bi.x0.balanced_digits();
        REQUIRE(bd.has_value());
        const BalanceInfo info = classify(*bd);
        CHECK(info.balanced);
        CHECK(bi.hi - bi.lo == rational_pow(r, -2 * info.order));
        CHECK(bi.lo == bi.x0.value());
        CHECK((x.value() == bi.lo || x.value() == bi.hi));
    }
}

TEST_CASE("block_flip complements a block between deficiency zeros") {
    CHECK(block_flip(ds(2, {0, 1, 1, 0}), 2, 4) == ds(2, {0, 1, 0, 1}));
    CHECK(block_flip(ds(4, {1, 2}), 0, 2) == ds(4, {2, 1}));
    CHECK(block_flip(ds(2, {0, 1, 0, 1}), 0, 2) == ds(2, {1, 0, 0, 1}));
    CHECK_THROWS_AS(block_flip(ds(2, {0, 1, 0, 1}), 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(block_flip(ds(2, {0, 0, 1, 1}), 0, 2), std::invalid_argument);
}

TEST_CASE("block_flip is an involution preserving |D|") {
    std::mt19937 rng(777);
    int done = 0;
    while (done < 200) {
        const int r = done % 2 == 0 ? 2 : 6;
        std::vector<int> digits(2 + 2 * (rng() % 6));
        for (int& d : digits) d = static_cast<int>(rng() % static_cast<unsigned>(r));
        const DigitString s = ds(r, digits);
        const auto prof = s.deficiency_profile();
        std::vector<int> zeros{0};
        for (int j = 1; j <= s.depth(); ++j)
            if (prof[static_cast<size_t>(j - 1)] == 0) zeros.push_back(j);
        if (zeros.size() < 2) continue;
        const int a = zeros[rng() % (zeros.size() - 1)];
        std::vector<int> ends;
        for (int z : zeros)
            if (z > a) ends.push_back(z);
        const int b = ends[rng() % ends.size()];

        const DigitString flipped = block_flip(s, a, b);
        CHECK(block_flip(flipped, a, b) == s);
        const auto fp = flipped.deficiency_profile();
        for (size_t j = 0; j < fp.size(); ++j)
            CHECK(std::abs(fp[j]) == std::abs(prof[j]));
        ++done;
    }
}

TEST_CASE("local_equiv on the worked pairs") {
    CHECK(local_equiv(radic(2, 5, 4), radic(2, 6, 4)));
    CHECK_FALSE(local_equiv(radic(2, 1, 2), radic(2, 3, 2)));
    CHECK(local_equiv(radic(2, 1, 2), radic(2, 1, 1))); // 1/4 ~ 1/2
    CHECK_THROWS_AS(local_equiv(radic(2, 1, 2), radic(4, 1, 1)), std::invalid_argument);
}

TEST_CASE("local_equiv is an equivalence relation") {
    // full check over all binary values of depth <= 8; the digit condition
    // is automatic at r = 2 but the |D| profile and tail rule are not.
    std::vector<RAdic> univ = depth_universe(2, 8);
    for (const RAdic& x : univ) CHECK(local_equiv(x, x));

    std::mt19937 rng(31337);
    for (int trial = 0; trial < 20000; ++trial) {
        const RAdic& x = univ[rng() % univ.size()];
        const RAdic& y = univ[rng() % univ.size()];
        const RAdic& z = univ[rng() % univ.size()];
        const bool xy = local_equiv(x, y);
        CHECK(xy == local_equiv(y, x));
        if (xy && local_equiv(y, z)) CHECK(local_equiv(x, z));
    }

    // same, smaller, for a base where the digit condition has teeth
    std::vector<RAdic> univ4 = depth_universe(4, 5);
    for (int trial = 0; trial < 20000; ++trial) {
        const RAdic& x = univ4[rng() % univ4.size()];
        const RAdic& y = univ4[rng() % univ4.size()];
        const RAdic& z = univ4[rng() % univ4.size()];
        const bool xy = local_equiv(x, y);
        CHECK(xy == local_equiv(y, x));
        if (xy && local_equiv(y, z)) CHECK(local_equiv(x, z));
    }
}

TEST_CASE("local_class against brute-force membership") {
    // brute force: scan a universe deep enough to hold every class member
    auto brute = [](const RAdic& x, int scan_depth) {
        std::vector<RAdic> got;
        for (const RAdic& v : depth_universe(x.base(), scan_depth))
            if (local_equiv(x, v)) got.push_back(v);
        std::sort(got.begin(), got.end());
        got.erase(std::unique(got.begin(), got.end()), got.end());
        return got;
    };

    const auto cls = local_class(radic(2, 5, 4));
    CHECK(cls == std::vector<RAdic>{radic(2, 5, 4), radic(2, 6, 4), radic(2, 9, 4),
                                    radic(2, 10, 4)});
    CHECK(cls == brute(radic(2, 5, 4), 8));

    CHECK(local_class(radic(2, 1, 1)) == std::vector<RAdic>{radic(2, 1, 2), radic(2, 1, 1)});
    CHECK(local_class(radic(2, 1, 1)) == brute(radic(2, 1, 1), 4));

    CHECK(local_class(radic(2, 0, 0)) == std::vector<RAdic>{radic(2, 0, 0)});

    std::mt19937 rng(5150);
    for (int trial = 0; trial < 60; ++trial) {
        const int r = trial % 2 == 0 ? 2 : 4;
        const int n = 1 + static_cast<int>(rng() % (r == 2 ? 5u : 3u));
        const RAdic x(r, Int(rng()) % pow_int(r, n), n);
        CHECK(local_class(x) == brute(x, 2 * n));
    }
}

TEST_CASE("local_class cardinality is 2^blocks") {
    for (int depth = 0; depth <= 10; ++depth)
        for (const RAdic& x : depth_universe(2, depth))
            CHECK(local_class(x).size() ==
                  (size_t{1} << static_cast<unsigned>(infinite_zero_count(x))));
    for (const RAdic& x : depth_universe(4, 5))
        CHECK(local_class(x).size() ==
              (size_t{1} << static_cast<unsigned>(infinite_zero_count(x))));
}
