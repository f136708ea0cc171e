#include "takagi/humps.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace takagi {

Int catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: negative index");
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), 2ul * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    return b / (n + 1);
}

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

Hump make_hump(const RAdic& x0) {
    const auto bd = x0.balanced_digits();
    if (!bd)
        throw std::invalid_argument("make_hump: x0 is not balanced");
    const BalanceInfo info = classify(*bd);
    const int r = x0.base();
    const int m = info.order;

    Hump h;
    h.x0 = x0;
    h.order = m;
    h.generation = info.generation;
    h.leading = info.leading;
    const Rational cell = rational_pow(r, -2 * m);
    h.x_lo = x0.value();
    h.x_hi = h.x_lo + cell;
    h.base = eval_exact(x0);
    h.height = max_value(r) * cell;
    h.height.canonicalize();
    h.y_interval = {h.base, h.base + h.height};
    h.trunc_y = {h.base, h.base + cell / 2};
    h.prob = Rational(Int(r) * r - 1, pow_int(r, static_cast<unsigned long>(2 * m + 2)));
    h.prob.canonicalize();
    return h;
}

namespace {

struct EnumSpec {
    int r = 2;
    int depth = 0;       // 2m
    bool leading = false;
    int generation = -1; // exact generation when >= 0, free otherwise
};

void check_enum_args(int r, int m, std::size_t cap, const Int& expected) {
    if (r < 2 || r % 2 != 0)
        throw std::invalid_argument("enumerate: base must be an even integer >= 2");
    if (m < 0)
        throw std::invalid_argument("enumerate: negative order");
    if (expected > Int(static_cast<unsigned long>(cap)))
        throw std::overflow_error("enumerate: cap exceeded");
    if (2.0 * m * std::log2(static_cast<double>(r)) > 62.0)
        throw std::overflow_error("enumerate: depth too large for packed numerators");
}

// Digit-by-digit DFS with deficiency pruning. `defi` is the running
// deficiency, `gen` the zeros seen so far. Numerators fit in u64 (guarded).
void dfs(const EnumSpec& s, int pos, int defi, int gen, unsigned long k,
         std::vector<RAdic>& out) {
    const int remaining = s.depth - pos;
    if (std::abs(defi) > remaining) return; // cannot return to zero in time
    if (s.leading) {
        // max additional zeros: reach 0 (defi steps), then one per excursion
        const int extra = defi == 0 ? remaining / 2 : 1 + (remaining - defi) / 2;
        if (s.generation >= 0) {
            if (gen > s.generation || (gen == s.generation && pos < s.depth)) return;
            if (gen + extra < s.generation) return;
        }
    }
    if (pos == s.depth) {
        if (defi == 0)
            out.emplace_back(s.r, Int(k), s.depth);
        return;
    }
    const int half = s.r / 2;
    // low digits raise the deficiency
    for (int d = 0; d < half; ++d)
        dfs(s, pos + 1, defi + 1, gen, k * s.r + d, out);
    if (s.leading) {
        if (defi == 1) {
            dfs(s, pos + 1, 0, gen + 1, k * s.r + half, out); // forced r/2 on a zero
        } else if (defi >= 2) {
            for (int d = half; d < s.r; ++d)
                dfs(s, pos + 1, defi - 1, gen, k * s.r + d, out);
        }
    } else {
        const int ngen = defi == 1 ? gen + 1 : gen;
        for (int d = half; d < s.r; ++d)
            dfs(s, pos + 1, defi - 1, ngen, k * s.r + d, out);
    }
}

std::vector<RAdic> run_serial(const EnumSpec& s) {
    std::vector<RAdic> out;
    dfs(s, 0, 0, 0, 0, out);
    return out;
}

// Prefix-parallel variant: fixed-length digit prefixes are expanded in
// order, surviving subtrees are searched independently, and the per-prefix
// results concatenate back into DFS (ascending) order.
std::vector<RAdic> run_parallel(const EnumSpec& s) {
    int pl = 0;
    long prefixes = 1;
    while (pl < s.depth && prefixes < 64) {
        prefixes *= s.r;
        ++pl;
    }
    if (pl == 0 || pl >= s.depth)
        return run_serial(s);

    struct Start {
        int defi, gen;
        unsigned long k;
    };
    std::vector<Start> starts;
    starts.reserve(static_cast<size_t>(prefixes));
    const int half = s.r / 2;
    // enumerate feasible prefixes in lexicographic order
    std::function<void(int, int, int, unsigned long)> grow =
        [&](int pos, int defi, int gen, unsigned long k) {
            if (std::abs(defi) > s.depth - pos) return;
            if (s.leading && defi < 0) return;
            if (pos == pl) {
                starts.push_back({defi, gen, k});
                return;
            }
            for (int d = 0; d < s.r; ++d) {
                const bool low = d < half;
                if (s.leading && !low) {
                    if (defi == 0) continue;
                    if (defi == 1 && d != half) continue;
                }
                grow(pos + 1, low ? defi + 1 : defi - 1,
                     (!low && defi == 1) ? gen + 1 : gen,
                     k * s.r + d);
            }
        };
    grow(0, 0, 0, 0);

    std::vector<std::vector<RAdic>> parts(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(starts.size()); ++i) {
        const Start& st = starts[static_cast<size_t>(i)];
        dfs(s, pl, st.defi, st.gen, st.k, parts[static_cast<size_t>(i)]);
    }
    std::vector<RAdic> out;
    for (auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

} // namespace

std::vector<RAdic> enumerate_balanced_serial(int r, int m, std::size_t cap) {
    check_enum_args(r, m, cap, pow_int(r / 2, 2ul * static_cast<unsigned long>(m)) *
                                   binomial(2l * m, m));
    if (m == 0) return {RAdic(r, 0, 0)};
    return run_serial({r, 2 * m, false, -1});
}

std::vector<RAdic> enumerate_balanced(int r, int m, std::size_t cap) {
    check_enum_args(r, m, cap, pow_int(r / 2, 2ul * static_cast<unsigned long>(m)) *
                                   binomial(2l * m, m));
    if (m == 0) return {RAdic(r, 0, 0)};
    return run_parallel({r, 2 * m, false, -1});
}

std::vector<RAdic> enumerate_leading_serial(int r, int m, int n, std::size_t cap) {
    check_enum_args(r, m, cap, count_leading_mn(r, m, n));
    if (m == 0) return n == 0 ? std::vector<RAdic>{RAdic(r, 0, 0)} : std::vector<RAdic>{};
    if (n <= 0 || n > m) return {};
    return run_serial({r, 2 * m, true, n});
}

std::vector<RAdic> enumerate_leading(int r, int m, int n, std::size_t cap) {
    check_enum_args(r, m, cap, count_leading_mn(r, m, n));
    if (m == 0) return n == 0 ? std::vector<RAdic>{RAdic(r, 0, 0)} : std::vector<RAdic>{};
    if (n <= 0 || n > m) return {};
    return run_parallel({r, 2 * m, true, n});
}

std::vector<RAdic> enumerate_leading_order(int r, int m, std::size_t cap) {
    Int total = 0;
    for (int n = 1; n <= m; ++n) total += count_leading_mn(r, m, n);
    if (m == 0) total = 1;
    check_enum_args(r, m, cap, total);
    if (m == 0) return {RAdic(r, 0, 0)};
    return run_parallel({r, 2 * m, true, -1});
}

Int count_leading_mn(int r, int m, int n) {
    if (r < 2 || r % 2 != 0)
        throw std::invalid_argument("count_leading_mn: base must be an even integer >= 2");
    if (m == 0 && n == 0) return 1;
    if (m <= 0 || n <= 0 || n > m) return 0;
    Int sum = 0;
    for (int i = 0; i < m; ++i) {
        const Int term = binomial(n - i - 1l, i) * catalan(m - i - 1);
        sum += (i % 2 == 0) ? term : -term;
    }
    return pow_int(r / 2, static_cast<unsigned long>(2 * m - n)) * sum;
}

Census census(int r, int m) {
    Census c;
    c.r = r;
    c.m = m;
    c.total_humps = pow_int(r / 2, 2ul * static_cast<unsigned long>(m)) * binomial(2l * m, m);
    c.total_leading = 0;
    for (int n = 0; n <= m; ++n) {
        CensusRow row{r, m, n, count_leading_mn(r, m, n)};
        c.total_leading += row.count;
        c.rows.push_back(std::move(row));
    }
    return c;
}

DigitString phi_map(const DigitString& ds, int zero_ordinal) {
    if (ds.base() != 2)
        throw std::invalid_argument("phi_map: defined for base 2");
    const BalanceInfo info = classify(ds);
    if (!info.leading || info.generation < 2)
        throw std::invalid_argument("phi_map: input must be leading with generation >= 2");
    if (zero_ordinal < 1 || zero_ordinal >= info.generation)
        throw std::invalid_argument("phi_map: zero_ordinal must name an interior zero");
    const int k = info.zero_positions[static_cast<size_t>(zero_ordinal - 1)];
    std::vector<int> digits = ds.digits();
    const int moved = digits[static_cast<size_t>(k - 1)];
    digits.erase(digits.begin() + (k - 1));
    digits.push_back(moved);
    return DigitString(ds.base(), std::move(digits));
}

void visit_leading_count_rows(
    int max_order, const std::function<void(int m, const std::vector<Int>& row)>& fn) {
    std::vector<Int> prev, cur;
    fn(0, prev);
    Int cat = 1; // C_{m-1}, starting at C_0 for m = 1
    for (int m = 1; m <= max_order; ++m) {
        cur.resize(static_cast<size_t>(m));
        cur[0] = cat;
        for (int n = 2; n <= m; ++n) {
            // count(m, n) = count(m, n-1) - count(m-1, n-2), with
            // count(m-1, 0) = [m == 1] handled by the n == 2 case.
            if (n == 2)
                cur[1] = cur[0] - (m == 1 ? 1 : 0);
            else
                cur[static_cast<size_t>(n - 1)] =
                    cur[static_cast<size_t>(n - 2)] - prev[static_cast<size_t>(n - 3)];
        }
        fn(m, cur);
        std::swap(prev, cur);
        cat = cat * 2 * (2 * m - 1) / (m + 1); // C_m from C_{m-1}
    }
}

} // namespace takagi
