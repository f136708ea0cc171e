#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "takagi/digits.hpp"
#include "takagi/takagi.hpp"

namespace takagi {

/// C_n = binom(2n, n) / (n + 1).
Int catalan(int n);

/// binom(n, k) with the convention 0 whenever k < 0, n < 0 or k > n (the
/// convention the alternating count formula needs).
Int binomial(long n, long k);

/// A hump: the graph over [x0, x0 + r^(-2m)] for balanced x0 of order m,
/// with its exact geometry and the truncated y-projection.
struct Hump {
    RAdic x0;
    int order = 0;
    int generation = 0;
    bool leading = false;
    Rational x_lo, x_hi;   // I(x0) = [x0, x0 + r^(-2m)]
    Rational base;         // T_r(x0)
    Rational height;       // M_r * r^(-2m)
    Enclosure y_interval;  // [base, base + height]
    Enclosure trunc_y;     // [base, base + r^(-2m) / 2]
    Rational prob;         // (r^2 - 1) / r^(2m+2) = trunc width / M_r
};

/// Requires x0 balanced (its zero-padded expansion reaches deficiency 0).
Hump make_hump(const RAdic& x0);

inline constexpr std::size_t kDefaultEnumCap = 20'000'000;

/// All balanced x0 = k/r^(2m), ascending. Cardinality (r/2)^(2m) binom(2m, m).
std::vector<RAdic> enumerate_balanced(int r, int m, std::size_t cap = kDefaultEnumCap);
std::vector<RAdic> enumerate_balanced_serial(int r, int m, std::size_t cap = kDefaultEnumCap);

/// All leading x0 of order m and generation n, ascending.
std::vector<RAdic> enumerate_leading(int r, int m, int n, std::size_t cap = kDefaultEnumCap);
std::vector<RAdic> enumerate_leading_serial(int r, int m, int n, std::size_t cap = kDefaultEnumCap);

/// All leading x0 of order m, any generation, ascending.
std::vector<RAdic> enumerate_leading_order(int r, int m, std::size_t cap = kDefaultEnumCap);

/// Closed-form count of leading humps of order m and generation n:
/// (r/2)^(2m-n) * sum_i (-1)^i binom(n-i-1, i) C_{m-i-1} for 1 <= n <= m,
/// 1 for m = n = 0, otherwise 0.
Int count_leading_mn(int r, int m, int n);

struct CensusRow {
    int r = 0, m = 0, n = 0;
    Int count;
};

struct Census {
    int r = 0, m = 0;
    std::vector<CensusRow> rows; // n = 0..m
    Int total_humps;             // (r/2)^(2m) binom(2m, m)
    Int total_leading;           // sum of rows; C_m when r = 2
};

Census census(int r, int m);

/// Moves the digit sitting on the zero_ordinal-th deficiency zero to the end
/// of the string. Defined for binary leading strings of generation >= 2;
/// zero_ordinal must name an interior zero (not the final one).
DigitString phi_map(const DigitString& ds, int zero_ordinal = 1);

/// Streams the base-2 leading-hump count table row by row, built from the
/// two-term recurrence (enumeration would be exponential). row[n-1] holds
/// the generation-n count for the row's order m, n = 1..m; the order-0 row
/// is empty (the single generation-0 hump is the whole graph).
void visit_leading_count_rows(int max_order,
                              const std::function<void(int m, const std::vector<Int>& row)>& fn);

} // namespace takagi
