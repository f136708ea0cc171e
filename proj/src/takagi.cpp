#include "takagi/takagi.hpp"

#include <set>
#include <stdexcept>

namespace takagi {

Rational max_value(int r) {
    if (r < 2 || r % 2 != 0)
        throw std::invalid_argument("max_value: base must be an even integer >= 2");
    Rational out(Int(r) * r, 2 * Int(r) * r - 2);
    out.canonicalize();
    return out;
}

TakagiParams takagi_params(int r) {
    return {r, max_value(r)};
}

Rational dist_to_int(const Rational& x) {
    const Rational f = fractional_part(x);
    const Rational g = 1 - f;
    return f <= g ? f : g;
}

Rational eval_exact(const RAdic& x) {
    const int n = x.depth();
    if (n == 0) return Rational(0); // T_r(0) = T_r(1) = 0
    const DigitString ds = x.digits();
    const int r = x.base();

    // suffix = integer value of digits j+1..N over r^(N-j); then
    // phi(r^j x) / r^j = min(suffix, r^(N-j) - suffix) / r^N, so the whole
    // sum is a single integer over r^N.
    Int acc = 0, suffix = 0, pw = 1;
    for (int j = n - 1; j >= 0; --j) {
        suffix += Int(ds.digit(j + 1)) * pw;
        pw *= r;
        const Int other = pw - suffix;
        acc += suffix <= other ? suffix : other;
    }
    Rational out(acc, pw);
    out.canonicalize();
    return out;
}

Rational eval_partial(const Rational& x, int n, int r) {
    if (r < 2 || r % 2 != 0)
        throw std::invalid_argument("eval_partial: base must be an even integer >= 2");
    if (n <= 0) return Rational(0);
    const Int q = x.get_den();
    Int c; // (num * r^k) mod q
    mpz_fdiv_r(c.get_mpz_t(), x.get_num().get_mpz_t(), q.get_mpz_t());
    Int acc = 0;
    for (int k = 0; k < n; ++k) {
        const Int other = q - c;
        acc = acc * r + (c <= other ? c : other);
        c = c * r % q;
    }
    Rational out(acc, q * pow_int(r, static_cast<unsigned long>(n - 1)));
    out.canonicalize();
    return out;
}

Rational partial_tail_bound(int n, int r) {
    Rational out = rational_pow(r, 1 - n) / (2 * (r - 1));
    out.canonicalize();
    return out;
}

Enclosure cell_enclosure(int r, int n, const Int& j) {
    if (n < 0 || j < 0 || j >= pow_int(r, static_cast<unsigned long>(n)))
        throw std::invalid_argument("cell_enclosure: cell index out of range");
    const RAdic left(r, j, n);
    const Rational a = eval_exact(left);
    const int slope = n == 0 ? 0 : expand(j, n, r).deficiency(n);
    const Rational b = a + Rational(slope) * rational_pow(r, -n);
    Enclosure e{a <= b ? a : b, (a <= b ? b : a) + max_value(r) * rational_pow(r, -n)};
    e.lo.canonicalize();
    e.hi.canonicalize();
    return e;
}

std::vector<RAdic> level_witnesses(const RAdic& x, int count) {
    const Rational v = x.value();
    if (v <= 0 || v >= 1)
        throw std::invalid_argument("level_witnesses: x must lie in (0, 1)");
    const int r = x.base();
    const int half = r / 2;

    std::vector<RAdic> out;
    std::set<RAdic> seen;
    auto emit = [&](const RAdic& p) {
        if (static_cast<int>(out.size()) < count && seen.insert(p).second)
            out.push_back(p);
    };
    emit(x);

    RAdic cur = x;
    int guard = 4 * count + 64;
    while (static_cast<int>(out.size()) < count) {
        if (--guard < 0)
            throw std::logic_error("level_witnesses: construction failed to make progress");
        const DigitString ds = cur.digits();
        const int n = ds.depth();
        const int last = ds.digit(n);
        const int p = ds.deficiency(n);

        if (last == half && p >= -1) {
            // x0 = cur - r^(-(n+p+2)); cur and x0 bound the balanced
            // interval of x0, so they share the T_r value.
            const int drop = p + 2;
            RAdic next(r, cur.numerator() * pow_int(r, static_cast<unsigned long>(drop)) - 1,
                       n + drop);
            emit(next);
            cur = next;
        } else if (p > 0) {
            RAdic next(r, cur.numerator() * pow_int(r, static_cast<unsigned long>(p)) - 1,
                       n + p);
            emit(next);
            cur = next;
        } else if (p < 0) {
            RAdic next(r, cur.numerator() * pow_int(r, static_cast<unsigned long>(-p)) + 1,
                       n - p);
            emit(next);
            cur = next;
        } else {
            // p == 0, last digit != r/2: step the last digit toward r/2;
            // every intermediate point is balanced at depth n, so the chain
            // of interval endpoints keeps the value constant.
            const int steps = last > half ? last - half : half - last;
            const int dir = last > half ? -1 : 1;
            RAdic next = cur;
            for (int s = 1; s <= steps; ++s) {
                next = RAdic(r, cur.numerator() + dir * s, n);
                emit(next);
            }
            cur = next;
        }
    }
    return out;
}

} // namespace takagi
