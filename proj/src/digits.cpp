#include "takagi/digits.hpp"

#include <algorithm>
#include <stdexcept>

namespace takagi {

namespace {

void require_even_base(int base) {
    if (base < 2 || base % 2 != 0)
        throw std::invalid_argument("base must be an even integer >= 2");
}

} // namespace

DigitString::DigitString(int base, std::vector<int> digits)
    : base_(base), digits_(std::move(digits)) {
    require_even_base(base_);
    for (int d : digits_)
        if (d < 0 || d >= base_)
            throw std::invalid_argument("digit out of range [0, base-1]");
}

DigitString DigitString::zeros(int base, int depth) {
    return DigitString(base, std::vector<int>(static_cast<size_t>(depth), 0));
}

int DigitString::digit(int j) const {
    if (j < 1 || j > depth())
        throw std::out_of_range("digit position out of range");
    return digits_[static_cast<size_t>(j - 1)];
}

int DigitString::deficiency(int j) const {
    if (j < 1 || j > depth())
        throw std::out_of_range("deficiency position out of range");
    const int half = base_ / 2;
    int d = 0;
    for (int i = 0; i < j; ++i)
        d += digits_[static_cast<size_t>(i)] < half ? 1 : -1;
    return d;
}

std::vector<int> DigitString::deficiency_profile() const {
    const int half = base_ / 2;
    std::vector<int> prof;
    prof.reserve(digits_.size());
    int d = 0;
    for (int dig : digits_) {
        d += dig < half ? 1 : -1;
        prof.push_back(d);
    }
    return prof;
}

Rational DigitString::value() const {
    Int num = 0;
    for (int dig : digits_)
        num = num * base_ + dig;
    Rational out(num, pow_int(base_, digits_.size()));
    out.canonicalize();
    return out;
}

DigitString DigitString::padded(int new_depth) const {
    if (new_depth < depth())
        throw std::invalid_argument("padded: new depth below current depth");
    std::vector<int> ds = digits_;
    ds.resize(static_cast<size_t>(new_depth), 0);
    return DigitString(base_, std::move(ds));
}

BalanceInfo classify(const DigitString& ds) {
    BalanceInfo info;
    const auto prof = ds.deficiency_profile();
    for (int j = 1; j <= ds.depth(); ++j)
        if (prof[static_cast<size_t>(j - 1)] == 0)
            info.zero_positions.push_back(j);
    info.generation = static_cast<int>(info.zero_positions.size());
    info.balanced = ds.depth() % 2 == 0 &&
                    (ds.depth() == 0 || prof.back() == 0);
    info.order = info.balanced ? ds.depth() / 2 : 0;

    bool nonneg = std::all_of(prof.begin(), prof.end(), [](int d) { return d >= 0; });
    bool zeros_at_half = std::all_of(
        info.zero_positions.begin(), info.zero_positions.end(),
        [&](int j) { return ds.digit(j) == ds.base() / 2; });
    info.leading = info.balanced && nonneg && zeros_at_half;
    return info;
}

RAdic::RAdic(int base, Int numerator, int depth)
    : base_(base), num_(std::move(numerator)), depth_(depth) {
    require_even_base(base_);
    if (depth_ < 0) throw std::invalid_argument("RAdic: negative depth");
    if (num_ < 0 || num_ > pow_int(base_, static_cast<unsigned long>(depth_)))
        throw std::invalid_argument("RAdic: numerator outside [0, base^depth]");
    while (depth_ > 0 && mpz_divisible_ui_p(num_.get_mpz_t(), static_cast<unsigned long>(base_))) {
        num_ /= base_;
        --depth_;
    }
    if (num_ == 0) depth_ = 0;
}

RAdic RAdic::from_digits(const DigitString& ds) {
    Int num = 0;
    for (int dig : ds.digits())
        num = num * ds.base() + dig;
    return RAdic(ds.base(), num, ds.depth());
}

RAdic RAdic::from_rational(int base, const Rational& q) {
    require_even_base(base);
    if (q < 0 || q > 1)
        throw std::invalid_argument("RAdic::from_rational: value outside [0, 1]");
    Int den = q.get_den();
    int depth = 0;
    while (den > 1) {
        Int g;
        mpz_gcd_ui(g.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(base));
        if (g == 1)
            throw std::invalid_argument("RAdic::from_rational: not an r-adic rational");
        den /= g;
        ++depth;
    }
    Int num = q.get_num() * pow_int(base, static_cast<unsigned long>(depth)) / q.get_den();
    return RAdic(base, num, depth);
}

Rational RAdic::value() const {
    Rational out(num_, pow_int(base_, static_cast<unsigned long>(depth_)));
    out.canonicalize();
    return out;
}

DigitString RAdic::digits() const {
    if (depth_ == 0 && num_ == 1)
        throw std::domain_error("RAdic: the value 1 has no fractional expansion");
    return expand(num_, depth_, base_);
}

DigitString RAdic::digits(int depth) const {
    return digits().padded(depth);
}

int RAdic::canonical_deficiency() const {
    if (depth_ == 0) return 0;
    return digits().deficiency(depth_);
}

std::optional<DigitString> RAdic::balanced_digits() const {
    if (depth_ == 0 && num_ == 1) return std::nullopt;
    const int d = canonical_deficiency();
    if (d > 0) return std::nullopt;
    return digits(depth_ - d);
}

bool RAdic::operator==(const RAdic& o) const {
    return base_ == o.base_ && depth_ == o.depth_ && num_ == o.num_;
}

std::strong_ordering RAdic::operator<=>(const RAdic& o) const {
    const int c = cmp(value(), o.value());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

DigitString expand(const Int& k, int depth, int base) {
    require_even_base(base);
    if (depth < 0) throw std::invalid_argument("expand: negative depth");
    if (k < 0 || k >= pow_int(base, static_cast<unsigned long>(depth)))
        if (!(k == 0 && depth == 0))
            throw std::invalid_argument("expand: k outside [0, base^depth)");
    std::vector<int> digits(static_cast<size_t>(depth), 0);
    Int rest = k;
    for (int j = depth; j >= 1; --j) {
        digits[static_cast<size_t>(j - 1)] =
            static_cast<int>(mpz_fdiv_ui(rest.get_mpz_t(), static_cast<unsigned long>(base)));
        rest /= base;
    }
    return DigitString(base, std::move(digits));
}

DigitString block_flip(const DigitString& ds, int a, int b) {
    if (a < 0 || b <= a || b > ds.depth())
        throw std::invalid_argument("block_flip: need 0 <= a < b <= depth");
    if (a != 0 && ds.deficiency(a) != 0)
        throw std::invalid_argument("block_flip: a is not a deficiency zero");
    if (ds.deficiency(b) != 0)
        throw std::invalid_argument("block_flip: b is not a deficiency zero");
    std::vector<int> digits = ds.digits();
    for (int j = a + 1; j <= b; ++j)
        digits[static_cast<size_t>(j - 1)] = ds.base() - 1 - digits[static_cast<size_t>(j - 1)];
    return DigitString(ds.base(), std::move(digits));
}

bool local_equiv(const RAdic& x, const RAdic& y) {
    if (x.base() != y.base())
        throw std::invalid_argument("local_equiv: mixed bases");
    const bool x_one = x.depth() == 0 && x.numerator() == 1;
    const bool y_one = y.depth() == 0 && y.numerator() == 1;
    if (x_one || y_one) return x_one && y_one;

    const int n = std::max(x.depth(), y.depth());
    const DigitString dx = x.digits(n);
    const DigitString dy = y.digits(n);
    const auto px = dx.deficiency_profile();
    const auto py = dy.deficiency_profile();
    const int r = x.base();
    for (int j = 0; j < n; ++j) {
        if (std::abs(px[static_cast<size_t>(j)]) != std::abs(py[static_cast<size_t>(j)]))
            return false;
        const int a = dx.digits()[static_cast<size_t>(j)];
        const int b = dy.digits()[static_cast<size_t>(j)];
        if (a != b && a + b != r - 1)
            return false;
    }
    // Beyond depth n both tails are zero, so |D| equality for every later j
    // forces equality of the signed deficiencies at n.
    if (n > 0 && px.back() != py.back())
        return false;
    return true;
}

std::vector<RAdic> local_class(const RAdic& x) {
    if (x.depth() == 0)
        return {x}; // 0 and 1 are alone in their classes
    DigitString ds = x.digits();
    auto prof = ds.deficiency_profile();

    // Deficiency zeros of the infinite expansion: those of the canonical
    // string, plus one at depth N + |D_N| when D_N < 0 (the zero tail only
    // raises D afterwards).
    std::vector<int> zeros;
    for (int j = 1; j <= ds.depth(); ++j)
        if (prof[static_cast<size_t>(j - 1)] == 0)
            zeros.push_back(j);
    if (prof.back() < 0) {
        const int last = ds.depth() - prof.back();
        ds = ds.padded(last);
        zeros.push_back(last);
    }
    if (zeros.empty())
        return {x};
    if (zeros.size() > 24)
        throw std::overflow_error("local_class: too many blocks to enumerate");

    const size_t nblocks = zeros.size();
    std::vector<RAdic> out;
    out.reserve(size_t{1} << nblocks);
    for (size_t mask = 0; mask < (size_t{1} << nblocks); ++mask) {
        DigitString cur = ds;
        int prev = 0;
        for (size_t b = 0; b < nblocks; ++b) {
            if (mask & (size_t{1} << b))
                cur = block_flip(cur, prev, zeros[b]);
            prev = zeros[b];
        }
        out.push_back(RAdic::from_digits(cur));
    }
    std::sort(out.begin(), out.end());
    return out;
}

BalancedInterval balanced_interval_of(const RAdic& x) {
    const Rational v = x.value();
    if (v <= 0 || v >= 1)
        throw std::invalid_argument("balanced_interval_of: x must lie in (0, 1)");
    const int r = x.base();
    const int n = x.depth();
    const DigitString ds = x.digits();
    const int p = ds.deficiency(n);
    const int last = ds.digit(n); // nonzero by canonicity

    if (p <= 0) {
        // Already balanced once padded to depth n + |p|; x is the left endpoint.
        const Rational width = rational_pow(r, -(n - p));
        return {x, v, v + width};
    }
    const int drop = last == r / 2 ? p + 2 : p;
    const int m2 = n + drop;
    const Rational width = rational_pow(r, -m2);
    const Int num0 = x.numerator() * pow_int(r, static_cast<unsigned long>(drop)) - 1;
    RAdic x0(r, num0, m2);
    return {x0, v - width, v};
}

} // namespace takagi
