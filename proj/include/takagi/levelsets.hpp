#pragma once

#include <cstddef>
#include <vector>

#include "takagi/humps.hpp"

namespace takagi {

/// Certified branch-and-bound output. Soundness contract: every x with
/// T_r(x) = y lies in some surviving cell [j/r^depth, (j+1)/r^depth].
/// No exact cardinality is claimed; components only summarize adjacency.
struct LevelSetReport {
    int r = 0;
    Rational y;
    int depth = 0;
    std::vector<Int> cells;      // left indices j, ascending
    int components = 0;          // maximal runs of adjacent surviving cells
    bool certified_empty = false;
};

LevelSetReport solve_level_set(int r, const Rational& y, int depth,
                               std::size_t cell_cap = 1u << 22);
LevelSetReport solve_level_set_serial(int r, const Rational& y, int depth,
                                      std::size_t cell_cap = 1u << 22);

/// Count (and list) of leading truncated humps of order <= max_order whose
/// y-projection contains y; includes the order-0 whole graph. This is the
/// truncated version of the local-level-set count: exact from below,
/// almost-surely exact once max_order is large.
struct NLocReport {
    int r = 0;
    Rational y;
    int max_order = 0;
    long count = 0;
    std::vector<Hump> contributing;
};

NLocReport n_loc_truncated(int r, const Rational& y, int max_order,
                           std::size_t cap = kDefaultEnumCap);

/// Partition of the input points into local level sets (classes of the
/// digit equivalence). Parts are sorted by, and labeled with, their
/// smallest element (part.front()). Throws on mixed bases.
std::vector<std::vector<RAdic>> partition_local(const std::vector<RAdic>& points);

/// True when x lies in I(x0) for some generation-1 balanced x0 of order
/// <= max_order (closed intervals).
bool in_generation1_interval(int r, const Rational& x, int max_order);

/// Enclosure of the monotone rise T_r^* at x in [0, 1/2]: the exact plateau
/// value when x sits inside a generation-1 hump interval of order <= depth,
/// otherwise the enclosure of x's depth-level cell.
Enclosure eval_star(int r, const Rational& x, int depth);

} // namespace takagi
