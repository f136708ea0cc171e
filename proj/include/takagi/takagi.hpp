#pragma once

#include <vector>

#include "takagi/digits.hpp"
#include "takagi/rational.hpp"

namespace takagi {

/// Exact closed interval [lo, hi]; the basic certificate currency.
struct Enclosure {
    Rational lo, hi;
    bool contains(const Rational& y) const { return lo <= y && y <= hi; }
    Rational width() const { return hi - lo; }
};

struct TakagiParams {
    int r;
    Rational max_value; // r^2 / (2 r^2 - 2)
};

TakagiParams takagi_params(int r);

/// max of T_r, exactly r^2 / (2 r^2 - 2). M_2 = 2/3.
Rational max_value(int r);

/// Distance from x to the nearest integer, in [0, 1/2].
Rational dist_to_int(const Rational& x);

/// T_r(x) for r-adic x: the series terminates after depth(x) terms, so the
/// value is an exact rational with denominator dividing r^depth.
Rational eval_exact(const RAdic& x);

/// Partial sum T_{r,n}(x) = sum_{k<n} phi(r^k x) / r^k for any rational x.
Rational eval_partial(const Rational& x, int n, int r);

/// |T_r - T_{r,n}| <= r^(1-n) / (2(r-1)) everywhere (phi <= 1/2).
Rational partial_tail_bound(int n, int r);

/// Sound enclosure of {T_r(x) : x in [j/r^n, (j+1)/r^n]}. On the cell T_r is
/// an affine part with slope given by the deficiency of the left endpoint
/// plus an r^(-n)-scaled copy of the whole graph, so the affine endpoint
/// values padded by M_r * r^(-n) contain the true range. Sound, not tight.
Enclosure cell_enclosure(int r, int n, const Int& j);

/// `count` distinct r-adic points with the same T_r value as x (x included),
/// produced by walking equal-value constructions: move the last digit to
/// r/2 across balanced steps and lengthen the expansion from there.
std::vector<RAdic> level_witnesses(const RAdic& x, int count);

} // namespace takagi
