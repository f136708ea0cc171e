#pragma once

#include <cstdint>
#include <vector>

#include "takagi/humps.hpp"

namespace takagi {

/// Partial sum of the generation-n series: sum over m = n..M of
/// 2^-(2m-n) * (base-2 leading count of order m, generation n). The base-r
/// dependence scales out, so the sums are r-independent; each converges to 1.
/// n = 0 is the single whole-graph term.
Rational s_n_partial(int n, int M);

/// All of s_n_partial(0..n_max, M) from one pass over the count table.
std::vector<Rational> s_n_partials(int n_max, int M);

/// sum over n <= M of C_n / 4^n (limit 2).
Rational catalan_quarter_mass(int M);

/// Truncated series for the expected number of local level sets in a level
/// set at a random height, plus the limit and a certified tail bound.
/// partial <= closed_form <= partial + tail_bound.
struct SeriesReport {
    int r = 0;
    int M = 0;
    Rational partial;     // sum over orders m <= M of hump membership masses
    Rational closed_form; // (r + 1) / r
    Rational tail_bound;  // (r^2-1)/r^2 * (2 - catalan_quarter_mass(M)), exact
};

SeriesReport expected_nloc_series(int r, int M);

/// Truncated series for the expected level-set cardinality:
/// 2 (r^2-1)/r^2 * sum_{m<=M} binom(2m, m)/4^m. Diverges like sqrt(M).
Rational expected_cardinality_partial(int r, int M);

/// Monte Carlo estimate of the truncated local-level-set count at a uniform
/// random height. Deterministic for a fixed seed regardless of thread count:
/// samples are drawn in fixed-size chunks with per-chunk derived seeds and
/// merged in chunk order.
struct MCReport {
    int r = 0;
    int M = 0;
    long samples = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double std_error = 0.0;
    Rational exact_truncated_mean; // expected_nloc_series(r, M).partial
};

MCReport monte_carlo_nloc(int r, int M, long samples, std::uint64_t seed);
MCReport monte_carlo_nloc_serial(int r, int M, long samples, std::uint64_t seed);

} // namespace takagi
