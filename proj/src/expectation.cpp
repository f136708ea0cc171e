#include "takagi/expectation.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "takagi/levelsets.hpp"

namespace takagi {

std::vector<Rational> s_n_partials(int n_max, int M) {
    if (n_max < 0 || n_max > M)
        throw std::invalid_argument("s_n_partials: need 0 <= n_max <= M");
    // acc[n] accumulates sum_m card2(m, n) * 4^(M-m) via Horner; the final
    // value of S_n's partial sum is acc[n] * 2^n / 4^M.
    std::vector<Int> acc(static_cast<size_t>(n_max) + 1, Int(0));
    visit_leading_count_rows(M, [&](int m, const std::vector<Int>& row) {
        // one Horner step per row from m = n on; acc[n] is still 0 before that
        for (int n = 1; n <= std::min(m, n_max); ++n)
            acc[static_cast<size_t>(n)] =
                acc[static_cast<size_t>(n)] * 4 + row[static_cast<size_t>(n - 1)];
    });
    const Int den = pow_int(4, static_cast<unsigned long>(M));
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(n_max) + 1);
    out.emplace_back(1); // n = 0: the whole graph alone
    for (int n = 1; n <= n_max; ++n) {
        Rational q(acc[static_cast<size_t>(n)] * pow_int(2, static_cast<unsigned long>(n)), den);
        q.canonicalize();
        out.push_back(std::move(q));
    }
    return out;
}

Rational s_n_partial(int n, int M) {
    if (n < 0 || n > M)
        throw std::invalid_argument("s_n_partial: need 0 <= n <= M");
    return s_n_partials(n, M)[static_cast<size_t>(n)];
}

Rational catalan_quarter_mass(int M) {
    if (M < 0) throw std::invalid_argument("catalan_quarter_mass: negative M");
    Int acc = 0, cat = 1; // C_0
    for (int n = 0; n <= M; ++n) {
        acc = acc * 4 + cat;
        cat = cat * 2 * (2 * n + 1) / (n + 2); // C_{n+1}
    }
    Rational out(acc, pow_int(4, static_cast<unsigned long>(M)));
    out.canonicalize();
    return out;
}

SeriesReport expected_nloc_series(int r, int M) {
    if (r < 2 || r % 2 != 0)
        throw std::invalid_argument("expected_nloc_series: base must be an even integer >= 2");
    if (M < 0) throw std::invalid_argument("expected_nloc_series: negative M");

    // partial * r^(2M+2) = sum_m [(r^2-1) * inner_m] * r^(2(M-m)) with
    // inner_m = sum_n (r/2)^(2m-n) card2(m, n); Horner over m.
    const Int h = r / 2;
    const Int rr1 = Int(r) * r - 1;
    Int acc = 0;
    visit_leading_count_rows(M, [&](int m, const std::vector<Int>& row) {
        Int inner;
        if (m == 0) {
            inner = 1;
        } else {
            Int t = 0;
            for (int n = 1; n <= m; ++n) // sum_n card2(m,n) h^(m-n)
                t = t * h + row[static_cast<size_t>(n - 1)];
            inner = pow_int(h, static_cast<unsigned long>(m)) * t;
        }
        acc = acc * (Int(r) * r) + rr1 * inner;
    });

    SeriesReport rep;
    rep.r = r;
    rep.M = M;
    rep.partial = Rational(acc, pow_int(r, 2ul * static_cast<unsigned long>(M) + 2));
    rep.partial.canonicalize();
    rep.closed_form = Rational(r + 1, r);
    rep.closed_form.canonicalize();
    rep.tail_bound = Rational(rr1, Int(r) * r) * (2 - catalan_quarter_mass(M));
    rep.tail_bound.canonicalize();
    return rep;
}

Rational expected_cardinality_partial(int r, int M) {
    if (r < 2 || r % 2 != 0)
        throw std::invalid_argument(
            "expected_cardinality_partial: base must be an even integer >= 2");
    if (M < 0) throw std::invalid_argument("expected_cardinality_partial: negative M");
    Int acc = 0, central = 1; // binom(0, 0)
    for (int m = 0; m <= M; ++m) {
        acc = acc * 4 + central;
        central = central * 2 * (2 * m + 1) / (m + 1); // binom(2m+2, m+1)
    }
    Rational out = Rational(2 * (Int(r) * r - 1), Int(r) * r) *
                   Rational(acc, pow_int(4, static_cast<unsigned long>(M)));
    out.canonicalize();
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr long kChunk = 4096;

template <bool Parallel>
MCReport mc_impl(int r, int M, long samples, std::uint64_t seed) {
    if (samples < 1)
        throw std::invalid_argument("monte_carlo_nloc: need at least one sample");

    // Sorted truncated-hump projection endpoints; membership counting for a
    // sample is then two binary searches (intervals are closed).
    std::vector<Rational> los, his;
    for (int m = 0; m <= M; ++m) {
        for (const RAdic& x0 : enumerate_leading_order(r, m)) {
            Hump h = make_hump(x0);
            los.push_back(std::move(h.trunc_y.lo));
            his.push_back(std::move(h.trunc_y.hi));
        }
    }
    std::sort(los.begin(), los.end());
    std::sort(his.begin(), his.end());

    const Rational mr = max_value(r);
    const Int y_den = pow_int(2, 53) * mr.get_den();
    const long nchunks = (samples + kChunk - 1) / kChunk;
    std::vector<long long> sum(static_cast<size_t>(nchunks), 0);
    std::vector<long long> sum2(static_cast<size_t>(nchunks), 0);

#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (long c = 0; c < nchunks; ++c) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x5851f42d4c957f2dull * (static_cast<std::uint64_t>(c) + 1))));
        const long lo = c * kChunk;
        const long hi = std::min(samples, lo + kChunk);
        long long s1 = 0, s2 = 0;
        Rational y;
        for (long i = lo; i < hi; ++i) {
            const std::uint64_t bits = rng() >> 11; // 53 uniform bits
            y = Rational(Int(static_cast<unsigned long>(bits)) * mr.get_num(), y_den);
            y.canonicalize();
            const long in_lo = std::upper_bound(los.begin(), los.end(), y) - los.begin();
            const long below = std::lower_bound(his.begin(), his.end(), y) - his.begin();
            const long count = in_lo - below;
            s1 += count;
            s2 += count * count;
        }
        sum[static_cast<size_t>(c)] = s1;
        sum2[static_cast<size_t>(c)] = s2;
    }

    long long s1 = 0, s2 = 0;
    for (long c = 0; c < nchunks; ++c) {
        s1 += sum[static_cast<size_t>(c)];
        s2 += sum2[static_cast<size_t>(c)];
    }
    MCReport rep;
    rep.r = r;
    rep.M = M;
    rep.samples = samples;
    rep.seed = seed;
    rep.mean = static_cast<double>(s1) / static_cast<double>(samples);
    const double var =
        samples > 1
            ? (static_cast<double>(s2) - static_cast<double>(samples) * rep.mean * rep.mean) /
                  (static_cast<double>(samples) - 1.0)
            : 0.0;
    rep.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
    rep.exact_truncated_mean = expected_nloc_series(r, M).partial;
    return rep;
}

} // namespace

MCReport monte_carlo_nloc(int r, int M, long samples, std::uint64_t seed) {
    return mc_impl<true>(r, M, samples, seed);
}

MCReport monte_carlo_nloc_serial(int r, int M, long samples, std::uint64_t seed) {
    return mc_impl<false>(r, M, samples, seed);
}

} // namespace takagi
