#include <doctest.h>

#include <cmath>

#include "takagi/expectation.hpp"

using namespace takagi;

TEST_CASE("s_n_partial pinned values") {
    CHECK(s_n_partial(0, 0) == 1);
    CHECK(s_n_partial(0, 9) == 1);
    CHECK(s_n_partial(1, 3) == Rational(11, 16)); // 1/2 + 1/8 + 1/16
    CHECK(s_n_partial(2, 2) == Rational(1, 4));
    CHECK_THROWS_AS(s_n_partial(3, 2), std::invalid_argument);
}

TEST_CASE("s_n partials increase toward 1") {
    const auto at64 = s_n_partials(6, 64);
    const auto at256 = s_n_partials(6, 256);
    for (int n = 0; n <= 6; ++n) {
        CHECK(at64[static_cast<size_t>(n)] <= at256[static_cast<size_t>(n)]);
        CHECK(at256[static_cast<size_t>(n)] <= 1);
    }
    CHECK(at256[1] > Rational(9, 10));
}

TEST_CASE("catalan_quarter_mass") {
    CHECK(catalan_quarter_mass(0) == 1);
    CHECK(catalan_quarter_mass(1) == Rational(5, 4));
    CHECK(catalan_quarter_mass(2) == Rational(11, 8));
    CHECK(catalan_quarter_mass(64) < 2);
    // deficit from the limit 2 at N = 1e4 sits under 1.13/sqrt(N), exactly
    const Rational deficit = 2 - catalan_quarter_mass(10000);
    CHECK(deficit > 0);
    CHECK(deficit <= Rational(113, 10000));
}

TEST_CASE("expected_nloc_series pinned values") {
    const SeriesReport r2 = expected_nloc_series(2, 1);
    CHECK(r2.partial == Rational(15, 16)); // 3/4 + 3/16
    CHECK(r2.closed_form == Rational(3, 2));

    CHECK(expected_nloc_series(4, 1).closed_form == Rational(5, 4));
    CHECK(expected_nloc_series(10, 1).closed_form == Rational(11, 10));
}

TEST_CASE("series bracketing and monotonicity") {
    for (int r : {2, 4, 10}) {
        Rational prev(-1);
        for (int M : {0, 1, 2, 4, 8, 16, 32, 64}) {
            const SeriesReport rep = expected_nloc_series(r, M);
            CHECK(rep.partial >= prev);
            CHECK(rep.partial <= rep.closed_form);
            CHECK(rep.closed_form <= rep.partial + rep.tail_bound);
            prev = rep.partial;
        }
    }
}

TEST_CASE("series equals its generation-wise regrouping") {
    // sum over n of (r^2-1)/r^(n+2) * s_n_partial(n, M) is the same double
    // sum regrouped; both routes must agree exactly.
    for (int r : {2, 4, 6}) {
        const int M = 24;
        const auto sn = s_n_partials(M, M);
        Rational regrouped(0);
        for (int n = 0; n <= M; ++n) {
            Rational w(Int(r) * r - 1, pow_int(r, static_cast<unsigned long>(n + 2)));
            w.canonicalize();
            regrouped += w * sn[static_cast<size_t>(n)];
        }
        CHECK(regrouped == expected_nloc_series(r, M).partial);
    }
}

TEST_CASE("tail bound dominates directly summed tails") {
    for (int r : {2, 4}) {
        const Rational pref(Int(r) * r - 1, Int(r) * r);
        for (int M : {1, 2, 4, 8, 16, 32, 64}) {
            const Rational bound = expected_nloc_series(r, M).tail_bound;
            // direct summation of the next 512 orders of the dominating series
            Rational direct = pref * (catalan_quarter_mass(M + 512) - catalan_quarter_mass(M));
            CHECK(direct <= bound);
            // the dominating series bound itself stays under 1.13/sqrt(M)
            if (M == 1 || M == 4 || M == 16 || M == 64) {
                const long root = M == 1 ? 1 : M == 4 ? 2 : M == 16 ? 4 : 8;
                CHECK(bound <= pref * Rational(113, 100 * root));
            }
        }
    }
}

TEST_CASE("expected_cardinality_partial") {
    CHECK(expected_cardinality_partial(2, 0) == Rational(3, 2));
    CHECK(expected_cardinality_partial(2, 1) == Rational(9, 4));
    // divergence witness: the partial sums keep growing like sqrt(M)
    const Rational at1e3 = expected_cardinality_partial(2, 1000);
    const Rational at1e4 = expected_cardinality_partial(2, 10000);
    CHECK(at1e4 - at1e3 > 1);
}

TEST_CASE("monte carlo at order zero") {
    const MCReport rep = monte_carlo_nloc(2, 0, 20000, 11);
    CHECK(rep.exact_truncated_mean == Rational(3, 4));
    CHECK(rep.mean >= 0.0);
    CHECK(rep.mean <= 1.0);
    CHECK(rep.std_error > 0.0);
    CHECK(std::fabs(rep.mean - 0.75) <= 4 * rep.std_error);
}

TEST_CASE("monte carlo matches the exact truncated mean") {
    const MCReport rep = monte_carlo_nloc(2, 2, 50000, 1);
    CHECK(rep.exact_truncated_mean == Rational(33, 32));
    CHECK(std::fabs(rep.mean - 33.0 / 32.0) <= 4 * rep.std_error);

    const MCReport rep4 = monte_carlo_nloc(4, 1, 50000, 2);
    CHECK(rep4.exact_truncated_mean == expected_nloc_series(4, 1).partial);
    CHECK(std::fabs(rep4.mean - rep4.exact_truncated_mean.get_d()) <= 4 * rep4.std_error);
}

TEST_CASE("monte carlo is deterministic for a fixed seed") {
    const MCReport a = monte_carlo_nloc(2, 1, 30000, 123);
    const MCReport b = monte_carlo_nloc(2, 1, 30000, 123);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    const MCReport c = monte_carlo_nloc(2, 1, 30000, 124);
    CHECK(a.mean != c.mean);
}
