#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "takagi/rational.hpp"

namespace takagi {

/// A finite base-r digit string 0.e1 e2 ... eN. Trailing zeros are
/// significant: a DigitString is a string, not a number. The base must be
/// even (the deficiency split at r/2 is meaningless otherwise).
class DigitString {
public:
    DigitString(int base, std::vector<int> digits);
    static DigitString zeros(int base, int depth);

    int base() const { return base_; }
    int depth() const { return static_cast<int>(digits_.size()); }

    /// Digit at 1-based position j (matching the usual index convention
    /// for expansions).
    int digit(int j) const;
    const std::vector<int>& digits() const { return digits_; }

    /// Deficiency D_j = card{i <= j : e_i < r/2} - card{i <= j : e_i >= r/2}.
    /// Requires 1 <= j <= depth.
    int deficiency(int j) const;

    /// D_1 .. D_depth in one pass.
    std::vector<int> deficiency_profile() const;

    /// Exact value sum e_k / r^k, in [0, 1).
    Rational value() const;

    /// Same string with zeros appended up to new_depth (>= depth).
    DigitString padded(int new_depth) const;

    bool operator==(const DigitString&) const = default;

private:
    int base_;
    std::vector<int> digits_;
};

/// Classification of a digit string relative to the balance machinery.
struct BalanceInfo {
    bool balanced = false;     // depth even and D_depth == 0 (depth 0 counts)
    int order = 0;             // depth / 2 when balanced
    int generation = 0;        // number of positions j with D_j == 0
    bool leading = false;      // balanced, D_j >= 0 throughout, digit r/2 at every zero
    std::vector<int> zero_positions;
};

BalanceInfo classify(const DigitString& ds);

/// An exact r-adic rational k / r^N in canonical form (N == 0 or r does not
/// divide k). Values live in [0, 1].
class RAdic {
public:
    RAdic() : base_(2), num_(0), depth_(0) {} // zero in base 2
    RAdic(int base, Int numerator, int depth);
    static RAdic from_digits(const DigitString& ds);
    /// Throws if q is not r-adic or lies outside [0, 1].
    static RAdic from_rational(int base, const Rational& q);

    int base() const { return base_; }
    const Int& numerator() const { return num_; }
    int depth() const { return depth_; }

    Rational value() const;

    /// Canonical-depth expansion. Throws for the value 1, which has no
    /// fractional digit string.
    DigitString digits() const;
    /// Expansion padded with zeros to `depth` >= canonical depth.
    DigitString digits(int depth) const;

    /// Deficiency of the canonical expansion at its own depth (0 for depth 0).
    int canonical_deficiency() const;

    /// The unique zero-padded expansion that is balanced, when one exists
    /// (exactly when canonical_deficiency() <= 0 and the value is not 1).
    /// Its depth is N + |D_N| and its order (N + |D_N|) / 2.
    std::optional<DigitString> balanced_digits() const;

    bool operator==(const RAdic& o) const;
    std::strong_ordering operator<=>(const RAdic& o) const;

private:
    int base_;
    Int num_;
    int depth_;
};

/// The unique depth-N base-r string with value k / r^N. Requires
/// 0 <= k < r^N and even r >= 2.
DigitString expand(const Int& k, int depth, int base);

/// Digits in positions a+1..b replaced by (r-1) - digit. Requires
/// 0 <= a < b <= depth with D_a = 0 (or a = 0) and D_b = 0; the flip
/// preserves the |D_j| profile only between deficiency zeros.
DigitString block_flip(const DigitString& ds, int a, int b);

/// The equivalence: |D_j(x)| == |D_j(y)| for every j and digits pairwise
/// equal or summing to r-1, both expansions read as infinite with zero
/// tails. Throws on mixed bases.
bool local_equiv(const RAdic& x, const RAdic& y);

/// The full equivalence class of x, generated by flipping every subset of
/// the digit blocks delimited by the deficiency zeros of the infinite
/// expansion. Sorted ascending; front() is the class representative.
std::vector<RAdic> local_class(const RAdic& x);

struct BalancedInterval {
    RAdic x0;          // balanced; x is an endpoint of [lo, hi]
    Rational lo, hi;   // hi - lo == r^(-2m) with m the order of x0
};

/// For r-adic x in (0, 1): a balanced x0 whose interval
/// [x0, x0 + r^(-2m)] has x as an endpoint.
BalancedInterval balanced_interval_of(const RAdic& x);

} // namespace takagi
