#include "takagi/levelsets.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace takagi {

namespace {

void check_solver_args(int r, int depth) {
    if (r < 2 || r % 2 != 0)
        throw std::invalid_argument("solve_level_set: base must be an even integer >= 2");
    if (depth < 0 || depth > 30)
        throw std::invalid_argument("solve_level_set: depth outside [0, 30]");
}

LevelSetReport finish(int r, const Rational& y, int depth, std::vector<Int> cells) {
    LevelSetReport rep;
    rep.r = r;
    rep.y = y;
    rep.depth = depth;
    rep.certified_empty = cells.empty();
    rep.components = 0;
    for (size_t i = 0; i < cells.size(); ++i)
        if (i == 0 || cells[i] != cells[i - 1] + 1)
            ++rep.components;
    rep.cells = std::move(cells);
    return rep;
}

template <bool Parallel>
LevelSetReport solve_impl(int r, const Rational& y, int depth, std::size_t cell_cap) {
    check_solver_args(r, depth);
    if (!cell_enclosure(r, 0, 0).contains(y))
        return finish(r, y, depth, {});

    std::vector<Int> cells{0};
    if (depth == 0) return finish(r, y, depth, std::move(cells));

    for (int lvl = 1; lvl <= depth; ++lvl) {
        const size_t width = cells.size() * static_cast<size_t>(r);
        if (width > cell_cap)
            throw std::overflow_error("solve_level_set: cell cap exceeded");
        std::vector<uint8_t> alive(width, 0);
        const long count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
        for (long i = 0; i < count; ++i) {
            for (int d = 0; d < r; ++d) {
                const Int child = cells[static_cast<size_t>(i)] * r + d;
                if (cell_enclosure(r, lvl, child).contains(y))
                    alive[static_cast<size_t>(i) * r + d] = 1;
            }
        }
        std::vector<Int> next;
        for (size_t i = 0; i < cells.size(); ++i)
            for (int d = 0; d < r; ++d)
                if (alive[i * static_cast<size_t>(r) + static_cast<size_t>(d)])
                    next.push_back(cells[i] * r + d);
        cells = std::move(next);
        if (cells.empty()) break;
    }
    return finish(r, y, depth, std::move(cells));
}

} // namespace

LevelSetReport solve_level_set(int r, const Rational& y, int depth, std::size_t cell_cap) {
    return solve_impl<true>(r, y, depth, cell_cap);
}

LevelSetReport solve_level_set_serial(int r, const Rational& y, int depth,
                                      std::size_t cell_cap) {
    return solve_impl<false>(r, y, depth, cell_cap);
}

NLocReport n_loc_truncated(int r, const Rational& y, int max_order, std::size_t cap) {
    if (max_order < 0)
        throw std::invalid_argument("n_loc_truncated: negative order");
    NLocReport rep;
    rep.r = r;
    rep.y = y;
    rep.max_order = max_order;
    for (int m = 0; m <= max_order; ++m) {
        for (const RAdic& x0 : enumerate_leading_order(r, m, cap)) {
            Hump h = make_hump(x0);
            if (h.trunc_y.contains(y))
                rep.contributing.push_back(std::move(h));
        }
    }
    rep.count = static_cast<long>(rep.contributing.size());
    return rep;
}

std::vector<std::vector<RAdic>> partition_local(const std::vector<RAdic>& points) {
    std::vector<std::vector<RAdic>> parts;
    if (points.empty()) return parts;
    const int r = points.front().base();
    std::map<Rational, std::vector<RAdic>> by_rep;
    for (const RAdic& p : points) {
        if (p.base() != r)
            throw std::invalid_argument("partition_local: mixed bases");
        by_rep[local_class(p).front().value()].push_back(p);
    }
    for (auto& [rep, members] : by_rep) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        parts.push_back(std::move(members));
    }
    return parts;
}

namespace {

// The generation-1 balanced cell of order m containing x, if any: candidates
// are the floor cell and, when x is exactly on the grid, the cell to its left.
bool gen1_cell_at(int r, const Rational& x, int m, Int& k_out) {
    const Int pw = pow_int(r, 2ul * static_cast<unsigned long>(m));
    const Int scaled = x.get_num() * pw;
    Int j, rem;
    mpz_fdiv_qr(j.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(),
                x.get_den().get_mpz_t());
    Int cands[2] = {j, Int(-1)};
    if (rem == 0) cands[1] = j - 1;
    for (const Int& cand : cands) {
        if (cand < 0 || cand >= pw) continue;
        const DigitString ds = expand(cand, 2 * m, r);
        const BalanceInfo info = classify(ds);
        if (info.balanced && info.generation == 1) {
            k_out = cand;
            return true;
        }
    }
    return false;
}

} // namespace

bool in_generation1_interval(int r, const Rational& x, int max_order) {
    Int k;
    for (int m = 1; m <= max_order; ++m)
        if (gen1_cell_at(r, x, m, k)) return true;
    return false;
}

Enclosure eval_star(int r, const Rational& x, int depth) {
    if (x < 0 || x > Rational(1, 2))
        throw std::invalid_argument("eval_star: x outside [0, 1/2]");
    if (x == 0) return {Rational(0), Rational(0)};
    Int k;
    for (int m = 1; m <= depth; ++m) {
        if (gen1_cell_at(r, x, m, k)) {
            const Rational v = eval_exact(RAdic(r, k, 2 * m));
            return {v, v};
        }
    }
    const Int pw = pow_int(r, static_cast<unsigned long>(depth));
    const Int scaled = x.get_num() * pw;
    Int j;
    mpz_fdiv_q(j.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    if (j >= pw) j = pw - 1;
    return cell_enclosure(r, depth, j);
}

} // namespace takagi
