/**
 * @file edt.hpp
 * @brief Exact two-pass Euclidean distance transform on a grid map.
 *
 * Pass one scans every row from both ends and records, per cell, the
 * horizontal distance (in grid units) to the nearest same-row facility.
 * Pass two runs per column: the squared distance (r - r')^2 + y(r')^2 is the
 * lower envelope of one parabola per finite row result, maintained with a
 * stack whose pop rule compares perpendicular-bisector intersections. All
 * comparisons are exact (cross-multiplied integers), so the output equals
 * the brute-force nearest-facility squared distance at every cell.
 */

#ifndef AREASKY_EDT_HPP
#define AREASKY_EDT_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "areasky/model.hpp"

namespace areasky {

/// Per-row horizontal distances to the nearest same-row facility of one
/// type. Unsquared grid units; rows with no facility hold the sentinel.
using RowDistances = std::vector<std::vector<int>>;

/// Sentinel for "no facility in this row". Any value > k-1 works; k is used.
constexpr int row_inf(int k) { return k; }

/// Marker for cells of an all-empty layer (only reachable through
/// column_pass on synthetic input; edt rejects empty layers up front).
constexpr dist2_t inf2_marker(int k) { return max_squared_distance(k) + 1; }

struct DistanceField {
    int type_id = 0;
    int k = 0;
    std::vector<dist2_t> cells;  ///< row-major k*k squared distances

    dist2_t at(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(k) +
                     static_cast<std::size_t>(col)];
    }
    dist2_t& at(int row, int col) {
        return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(k) +
                     static_cast<std::size_t>(col)];
    }

    friend bool operator==(const DistanceField&, const DistanceField&) = default;
};

class EmptyLayerError : public std::runtime_error {
public:
    explicit EmptyLayerError(int type_id)
        : std::runtime_error("facility type " + std::to_string(type_id) +
                             " has no placements; its distance field is undefined") {}
};

// ---------------------------------------------------------------------------
// Row pass
// ---------------------------------------------------------------------------

/// Fills out[r] for r in [row_lo, row_hi). out must be sized k rows; rows
/// are independent, so disjoint ranges may run concurrently.
inline void row_pass_into(const GridMap& map, int type_id, int row_lo, int row_hi,
                          RowDistances& out) {
    const int k = map.k;
    const int inf = row_inf(k);
    for (int r = row_lo; r < row_hi; ++r) out[static_cast<std::size_t>(r)].assign(
        static_cast<std::size_t>(k), inf);

    for (const GridId& g : map.placements[static_cast<std::size_t>(type_id)]) {
        if (g.row >= row_lo && g.row < row_hi)
            out[static_cast<std::size_t>(g.row)][static_cast<std::size_t>(g.col)] = 0;
    }
    for (int r = row_lo; r < row_hi; ++r) {
        auto& row = out[static_cast<std::size_t>(r)];
        for (int c = 1; c < k; ++c) {                       // left-to-right sweep
            if (row[static_cast<std::size_t>(c - 1)] + 1 < row[static_cast<std::size_t>(c)])
                row[static_cast<std::size_t>(c)] = row[static_cast<std::size_t>(c - 1)] + 1;
        }
        for (int c = k - 2; c >= 0; --c) {                  // right-to-left sweep
            if (row[static_cast<std::size_t>(c + 1)] + 1 < row[static_cast<std::size_t>(c)])
                row[static_cast<std::size_t>(c)] = row[static_cast<std::size_t>(c + 1)] + 1;
        }
    }
}

/// Horizontal distances to the nearest same-row facility, all rows.
inline RowDistances row_pass(const GridMap& map, int type_id) {
    RowDistances out(static_cast<std::size_t>(map.k));
    row_pass_into(map, type_id, 0, map.k, out);
    return out;
}

// ---------------------------------------------------------------------------
// Column pass (lower envelope of parabolas)
// ---------------------------------------------------------------------------

/// A parabola source on the column axis: position x, 1D row-pass distance y.
struct EnvelopePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;
};

/// Exact rational, reduced, denominator > 0.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    Fraction(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::invalid_argument("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        num = g ? n / g : n;
        den = g ? d / g : 1;
    }

    friend bool operator==(const Fraction&, const Fraction&) = default;
    friend bool operator<(const Fraction& a, const Fraction& b) {
        return a.num * b.den < b.num * a.den;  // both dens > 0
    }
    friend bool operator<(const Fraction& a, std::int64_t v) { return a.num < v * a.den; }
    friend bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }
};

/**
 * @brief Intersection of the vertical bisector of two envelope points with
 * the column axis: x_ij = ((y_j^2 - y_i^2) + (x_j^2 - x_i^2)) / (2 (x_j - x_i)).
 *
 * For positions x > x_ij the parabola of p_j is strictly lower in the
 * (x - x_i)^2 + y_i^2 metric; for x < x_ij that of p_i is. Requires
 * x_i != x_j.
 */
inline Fraction bisector_x(EnvelopePoint pi, EnvelopePoint pj) {
    if (pi.x == pj.x) throw std::invalid_argument("bisector of points with equal x");
    const std::int64_t num = (pj.y * pj.y - pi.y * pi.y) + (pj.x * pj.x - pi.x * pi.x);
    return Fraction(num, 2 * (pj.x - pi.x));
}

namespace detail {

// Pop rule helper: x_ij >= x_jk, evaluated by cross multiplication.
// Both denominators 2(x_j-x_i), 2(x_k-x_j) are positive by construction.
inline bool bisector_ge(EnvelopePoint pi, EnvelopePoint pj, EnvelopePoint pk) {
    const std::int64_t n_ij = (pj.y * pj.y - pi.y * pi.y) + (pj.x * pj.x - pi.x * pi.x);
    const std::int64_t d_ij = pj.x - pi.x;
    const std::int64_t n_jk = (pk.y * pk.y - pj.y * pj.y) + (pk.x * pk.x - pj.x * pj.x);
    const std::int64_t d_jk = pk.x - pj.x;
    return n_ij * d_jk >= n_jk * d_ij;
}

}  // namespace detail

/// Surviving envelope points for one column, x strictly increasing. A new
/// point pops the top while the top's interval would be empty (x_ij >= x_jk,
/// ">=" so ties delete deterministically). Sentinel entries are skipped:
/// they denote "no facility in that row" and never contribute.
inline std::vector<EnvelopePoint> envelope_points(const std::vector<int>& column,
                                                  int inf_sentinel) {
    std::vector<EnvelopePoint> stack;
    stack.reserve(column.size());
    for (std::size_t x = 0; x < column.size(); ++x) {
        const int y = column[x];
        if (y >= inf_sentinel) continue;
        const EnvelopePoint pk{static_cast<std::int64_t>(x), y};
        while (stack.size() >= 2 &&
               detail::bisector_ge(stack[stack.size() - 2], stack.back(), pk)) {
            stack.pop_back();
        }
        stack.push_back(pk);
    }
    return stack;
}

/**
 * @brief Lower-envelope sweep over one column of row-pass results.
 *
 * column[x] holds the 1D distance at position x. Returns, per position r,
 * min over finite x of (r - x)^2 + column[x]^2; an all-sentinel column
 * yields inf2_marker(k) everywhere.
 */
inline std::vector<dist2_t> column_envelope(const std::vector<int>& column, int inf_sentinel) {
    const int k = static_cast<int>(column.size());
    std::vector<dist2_t> out(static_cast<std::size_t>(k));

    const std::vector<EnvelopePoint> stack = envelope_points(column, inf_sentinel);
    if (stack.empty()) {
        const dist2_t marker = inf2_marker(k);
        out.assign(static_cast<std::size_t>(k), marker);
        return out;
    }

    // Interval sweep: point t owns positions up to bisector(t, t+1).
    std::size_t idx = 0;
    for (int r = 0; r < k; ++r) {
        while (idx + 1 < stack.size()) {
            // advance while the boundary between idx and idx+1 lies left of r
            const EnvelopePoint a = stack[idx], b = stack[idx + 1];
            const std::int64_t num = (b.y * b.y - a.y * a.y) + (b.x * b.x - a.x * a.x);
            const std::int64_t den = 2 * (b.x - a.x);
            if (num < static_cast<std::int64_t>(r) * den) ++idx;
            else break;
        }
        const std::int64_t dx = r - stack[idx].x;
        out[static_cast<std::size_t>(r)] = dx * dx + stack[idx].y * stack[idx].y;
    }
    return out;
}

/// Fills columns [col_lo, col_hi) of field from row-pass results. Columns
/// are independent, so disjoint ranges may run concurrently.
inline void column_pass_into(const RowDistances& rowdist, int k, int col_lo, int col_hi,
                             DistanceField& field) {
    const int inf = row_inf(k);
    std::vector<int> column(static_cast<std::size_t>(k));
    for (int c = col_lo; c < col_hi; ++c) {
        for (int r = 0; r < k; ++r)
            column[static_cast<std::size_t>(r)] = rowdist[static_cast<std::size_t>(r)]
                                                         [static_cast<std::size_t>(c)];
        const std::vector<dist2_t> done = column_envelope(column, inf);
        for (int r = 0; r < k; ++r) field.at(r, c) = done[static_cast<std::size_t>(r)];
    }
}

/// Full column pass; output indexed [column][row] to match the per-column
/// reduce framing.
inline std::vector<std::vector<dist2_t>> column_pass(const RowDistances& rowdist, int k) {
    DistanceField field{0, k, std::vector<dist2_t>(
        static_cast<std::size_t>(k) * static_cast<std::size_t>(k))};
    column_pass_into(rowdist, k, 0, k, field);
    std::vector<std::vector<dist2_t>> out(static_cast<std::size_t>(k),
                                          std::vector<dist2_t>(static_cast<std::size_t>(k)));
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < k; ++r)
            out[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = field.at(r, c);
    return out;
}

// ---------------------------------------------------------------------------
// Full transforms
// ---------------------------------------------------------------------------

/// Exact squared EDT for one facility type (row pass then column pass).
/// Throws EmptyLayerError if the type has no placements.
inline DistanceField edt(const GridMap& map, int type_id) {
    if (map.placements[static_cast<std::size_t>(type_id)].empty())
        throw EmptyLayerError(type_id);
    const RowDistances rows = row_pass(map, type_id);
    DistanceField field{type_id, map.k,
                        std::vector<dist2_t>(static_cast<std::size_t>(map.k) *
                                             static_cast<std::size_t>(map.k))};
    column_pass_into(rows, map.k, 0, map.k, field);
    return field;
}

/// Direct O(k^2 * placements) minimization. Exact by construction; the
/// oracle for edt and the reference used by the verify command.
inline DistanceField brute_force_edt(const GridMap& map, int type_id) {
    if (map.placements[static_cast<std::size_t>(type_id)].empty())
        throw EmptyLayerError(type_id);
    const auto& pts = map.placements[static_cast<std::size_t>(type_id)];
    DistanceField field{type_id, map.k,
                        std::vector<dist2_t>(static_cast<std::size_t>(map.k) *
                                             static_cast<std::size_t>(map.k))};
    for (int r = 0; r < map.k; ++r) {
        for (int c = 0; c < map.k; ++c) {
            dist2_t best = inf2_marker(map.k);
            for (const GridId& g : pts) {
                const dist2_t dr = r - g.row;
                const dist2_t dc = c - g.col;
                const dist2_t d2 = dr * dr + dc * dc;
                if (d2 < best) best = d2;
            }
            field.at(r, c) = best;
        }
    }
    return field;
}

}  // namespace areasky

#endif  // AREASKY_EDT_HPP
