/**
 * @file skyline.hpp
 * @brief Skyline operators: BNL, SFS, median-split subspaces, and the
 * sample / sky-quadtree / virtual-maximum-point / skyfilter machinery.
 *
 * Every operator is pure and exact; all of them agree on the skyline as a
 * set of grid ids for any input and any partitioning.
 */

#ifndef AREASKY_SKYLINE_HPP
#define AREASKY_SKYLINE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "areasky/model.hpp"

namespace areasky {

/// A set of mutually non-dominated tuples, sorted by GridId for canonical
/// output.
struct SkylineSet {
    std::vector<DistanceTuple> tuples;

    std::size_t size() const { return tuples.size(); }
    bool empty() const { return tuples.empty(); }

    std::vector<GridId> grid_ids() const {
        std::vector<GridId> ids;
        ids.reserve(tuples.size());
        for (const auto& t : tuples) ids.push_back(t.grid);
        return ids;
    }

    friend bool operator==(const SkylineSet&, const SkylineSet&) = default;
};

namespace detail {

inline void sort_canonical(std::vector<DistanceTuple>& tuples) {
    std::sort(tuples.begin(), tuples.end(),
              [](const DistanceTuple& a, const DistanceTuple& b) { return a.grid < b.grid; });
}

inline dist2_t score_sum(const DistanceTuple& t) {
    return std::accumulate(t.scores.begin(), t.scores.end(), dist2_t{0});
}

/// Monotone presort for SFS: ascending score sum, GridId tiebreak. If a
/// dominates b then sum(a) < sum(b), so dominators always scan first.
inline void sort_by_sum(std::vector<DistanceTuple>& tuples) {
    std::sort(tuples.begin(), tuples.end(),
              [](const DistanceTuple& a, const DistanceTuple& b) {
                  const dist2_t sa = score_sum(a), sb = score_sum(b);
                  if (sa != sb) return sa < sb;
                  return a.grid < b.grid;
              });
}

}  // namespace detail

/// Block-nested-loop skyline: every tuple is checked against a window of
/// current survivors; dominated window members are evicted as they are found.
inline SkylineSet bnl_skyline(std::span<const DistanceTuple> tuples) {
    std::vector<DistanceTuple> window;
    for (const DistanceTuple& t : tuples) {
        bool dominated = false;
        for (std::size_t i = 0; i < window.size();) {
            if (dominates(window[i], t)) {
                dominated = true;
                break;
            }
            if (dominates(t, window[i])) {
                window[i] = std::move(window.back());
                window.pop_back();
            } else {
                ++i;
            }
        }
        if (!dominated) window.push_back(t);
    }
    detail::sort_canonical(window);
    return SkylineSet{std::move(window)};
}

/// Sort-filter-skyline: presort by the monotone sum key, then a single pass
/// comparing each tuple only against already-retained skyline members.
inline SkylineSet sfs_skyline(std::span<const DistanceTuple> tuples) {
    std::vector<DistanceTuple> sorted(tuples.begin(), tuples.end());
    detail::sort_by_sum(sorted);
    std::vector<DistanceTuple> skyline;
    for (DistanceTuple& t : sorted) {
        bool dominated = false;
        for (const DistanceTuple& s : skyline) {
            if (dominates(s, t)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) skyline.push_back(std::move(t));
    }
    detail::sort_canonical(skyline);
    return SkylineSet{std::move(skyline)};
}

/// Per-dimension lower median of the input scores (the split point for the
/// MR-BNL / MR-SFS subspace assignment). Errors on empty input.
inline std::vector<dist2_t> compute_center(std::span<const DistanceTuple> tuples) {
    if (tuples.empty()) throw std::invalid_argument("center of an empty tuple set");
    const std::size_t n = tuples.front().scores.size();
    std::vector<dist2_t> center(n);
    std::vector<dist2_t> dim(tuples.size());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < tuples.size(); ++i) dim[i] = tuples[i].scores[j];
        const std::size_t mid = (dim.size() - 1) / 2;  // lower median
        std::nth_element(dim.begin(), dim.begin() + static_cast<std::ptrdiff_t>(mid), dim.end());
        center[j] = dim[mid];
    }
    return center;
}

/// Subspace bitmask: bit j set iff scores[j] >= center[j] (on-median tuples
/// go to the upper half-space).
inline unsigned subspace_of(const DistanceTuple& t, std::span<const dist2_t> center) {
    unsigned mask = 0;
    for (std::size_t j = 0; j < center.size(); ++j)
        if (t.scores[j] >= center[j]) mask |= 1u << j;
    return mask;
}

// ---------------------------------------------------------------------------
// SKY-MR machinery: sampling, sky quadtree, virtual maximum points,
// skyfilters, pruned global merge.
// ---------------------------------------------------------------------------

namespace detail {

// SplitMix64 step (Steele, Lea, Burton constants); also used by datagen.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic sample of exactly `count` tuples (seed-keyed partial
/// Fisher-Yates over indices), returned in input order.
inline std::vector<DistanceTuple> skymr_sample_count(std::span<const DistanceTuple> tuples,
                                                     std::size_t count, std::uint64_t seed) {
    const std::size_t n = tuples.size();
    if (count > n) count = n;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::uint64_t state = seed;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(detail::splitmix64(state) % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    std::vector<DistanceTuple> out;
    out.reserve(count);
    for (std::size_t i : idx) out.push_back(tuples[i]);
    return out;
}

/// ceil(rate * N) tuples, deterministic in the seed alone. rate in (0, 1].
inline std::vector<DistanceTuple> skymr_sample(std::span<const DistanceTuple> tuples,
                                               double rate, std::uint64_t seed) {
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("sample rate must be in (0, 1]");
    const auto count = static_cast<std::size_t>(
        std::ceil(rate * static_cast<double>(tuples.size())));
    return skymr_sample_count(tuples, count, seed);
}

/**
 * @brief Space-partitioning tree over a tuple sample.
 *
 * Internal nodes split at the per-dimension lower median of their sample
 * points into 2^n children indexed by the subspace bitmask. A child region
 * whose minimum corner is dominated by the sample skyline is pruned: every
 * tuple routing there is dominated by real sample tuples. Leaves keep their
 * sample points and the local skyline of those points.
 */
struct SkyQuadtree {
    static constexpr int kPruned = -1;

    struct Node {
        std::vector<dist2_t> split;     ///< empty for leaves
        std::vector<int> children;      ///< 2^n ids, kPruned where dominated
        std::vector<std::size_t> points;  ///< leaf payload: sample indices
        bool is_leaf() const { return split.empty(); }
    };

    int dims = 0;
    int leaf_capacity = 0;
    std::vector<Node> nodes;                   ///< nodes[0] is the root
    std::vector<int> leaves;                   ///< leaf node ids, creation order
    std::vector<SkylineSet> leaf_skylines;     ///< per entry of `leaves`
    SkylineSet sample_skyline;

    /// Leaf index (into `leaves`) a tuple routes to, or kPruned if it lands
    /// in a dominated region.
    int locate(const DistanceTuple& t) const {
        int id = 0;
        while (!nodes[static_cast<std::size_t>(id)].is_leaf()) {
            const Node& node = nodes[static_cast<std::size_t>(id)];
            const unsigned mask = subspace_of(t, node.split);
            id = node.children[mask];
            if (id == kPruned) return kPruned;
        }
        return leaf_index_.at(static_cast<std::size_t>(id));
    }

    std::vector<int> leaf_index_;  ///< node id -> index into `leaves`, -1 otherwise
};

/// Depth cap for the quadtree build; beyond it nodes become leaves even if
/// over capacity (guards degenerate splits).
inline constexpr int kSkyQuadtreeMaxDepth = 16;

namespace detail {

struct QuadtreeBuilder {
    std::span<const DistanceTuple> sample;
    SkyQuadtree* tree = nullptr;

    bool lower_bound_dominated(const std::vector<dist2_t>& lb) const {
        const DistanceTuple probe{GridId{0, 0}, lb};
        for (const DistanceTuple& s : tree->sample_skyline.tuples)
            if (dominates(s, probe)) return true;
        return false;
    }

    bool all_identical(const std::vector<std::size_t>& pts) const {
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (sample[pts[i]].scores != sample[pts[0]].scores) return false;
        return true;
    }

    int build(std::vector<std::size_t> pts, const std::vector<dist2_t>& lb, int depth) {
        const int id = static_cast<int>(tree->nodes.size());
        tree->nodes.emplace_back();
        const std::size_t cap = static_cast<std::size_t>(tree->leaf_capacity);
        if (pts.size() <= cap || depth >= kSkyQuadtreeMaxDepth || all_identical(pts)) {
            tree->nodes[static_cast<std::size_t>(id)].points = std::move(pts);
            return id;
        }

        const std::size_t n = static_cast<std::size_t>(tree->dims);
        std::vector<dist2_t> split(n);
        std::vector<dist2_t> dim(pts.size());
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < pts.size(); ++i) dim[i] = sample[pts[i]].scores[j];
            const std::size_t mid = (dim.size() - 1) / 2;
            std::nth_element(dim.begin(), dim.begin() + static_cast<std::ptrdiff_t>(mid),
                             dim.end());
            split[j] = dim[mid];
        }

        const std::size_t fan = std::size_t{1} << n;
        std::vector<std::vector<std::size_t>> buckets(fan);
        for (std::size_t p : pts) buckets[subspace_of(sample[p], split)].push_back(p);
        std::size_t nonempty = 0;
        for (const auto& b : buckets) nonempty += !b.empty();
        if (nonempty <= 1) {  // split failed to separate; stop here
            tree->nodes[static_cast<std::size_t>(id)].points = std::move(pts);
            return id;
        }

        tree->nodes[static_cast<std::size_t>(id)].split = split;
        std::vector<int> children(fan, SkyQuadtree::kPruned);
        for (std::size_t mask = 0; mask < fan; ++mask) {
            std::vector<dist2_t> child_lb = lb;
            for (std::size_t j = 0; j < n; ++j)
                if (mask & (std::size_t{1} << j)) child_lb[j] = split[j];
            if (lower_bound_dominated(child_lb)) continue;  // region is dominated
            children[mask] = build(std::move(buckets[mask]), child_lb, depth + 1);
        }
        tree->nodes[static_cast<std::size_t>(id)].children = std::move(children);
        return id;
    }
};

}  // namespace detail

/// Builds the sky quadtree from a nonempty sample, computing the sample
/// skyline (for subtree pruning) and each leaf's local sample skyline.
inline SkyQuadtree build_sky_quadtree(std::span<const DistanceTuple> sample,
                                      int leaf_capacity) {
    if (sample.empty()) throw std::invalid_argument("sky quadtree needs a nonempty sample");
    if (leaf_capacity < 1) throw std::invalid_argument("leaf capacity must be >= 1");

    SkyQuadtree tree;
    tree.dims = sample.front().dims();
    tree.leaf_capacity = leaf_capacity;
    tree.sample_skyline = sfs_skyline(sample);

    detail::QuadtreeBuilder builder{sample, &tree};
    std::vector<std::size_t> all(sample.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    builder.build(std::move(all), std::vector<dist2_t>(static_cast<std::size_t>(tree.dims), 0),
                  0);

    tree.leaf_index_.assign(tree.nodes.size(), -1);
    for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
        if (!tree.nodes[id].is_leaf()) continue;
        tree.leaf_index_[id] = static_cast<int>(tree.leaves.size());
        tree.leaves.push_back(static_cast<int>(id));
        std::vector<DistanceTuple> members;
        members.reserve(tree.nodes[id].points.size());
        for (std::size_t p : tree.nodes[id].points) members.push_back(sample[p]);
        tree.leaf_skylines.push_back(sfs_skyline(members));
    }
    return tree;
}

/// Synthetic per-leaf tuple (componentwise extremum of the leaf skyline).
struct LeafSummary {
    int leaf = 0;
    std::vector<dist2_t> scores;
};

/// Componentwise maximum of each leaf's local skyline. A virtual maximum
/// point dominating a tuple proves every member of that leaf's skyline
/// dominates it. Empty leaves are skipped; output ordered by leaf id.
inline std::vector<LeafSummary> virtual_max_points(const std::vector<SkylineSet>& leaf_skylines) {
    std::vector<LeafSummary> out;
    for (std::size_t leaf = 0; leaf < leaf_skylines.size(); ++leaf) {
        const auto& sky = leaf_skylines[leaf].tuples;
        if (sky.empty()) continue;
        std::vector<dist2_t> vmp = sky.front().scores;
        for (const DistanceTuple& t : sky)
            for (std::size_t j = 0; j < vmp.size(); ++j) vmp[j] = std::max(vmp[j], t.scores[j]);
        out.push_back(LeafSummary{static_cast<int>(leaf), std::move(vmp)});
    }
    return out;
}

/// Componentwise minimum of each leaf's local skyline. A skyfilter that does
/// not weakly dominate a tuple proves no member of that leaf can dominate it.
inline std::vector<LeafSummary> sky_filters(const std::vector<SkylineSet>& leaf_skylines) {
    std::vector<LeafSummary> out;
    for (std::size_t leaf = 0; leaf < leaf_skylines.size(); ++leaf) {
        const auto& sky = leaf_skylines[leaf].tuples;
        if (sky.empty()) continue;
        std::vector<dist2_t> sf = sky.front().scores;
        for (const DistanceTuple& t : sky)
            for (std::size_t j = 0; j < sf.size(); ++j) sf[j] = std::min(sf[j], t.scores[j]);
        out.push_back(LeafSummary{static_cast<int>(leaf), std::move(sf)});
    }
    return out;
}

namespace detail {

inline bool summary_dominates(const LeafSummary& s, const DistanceTuple& t) {
    bool strict = false;
    for (std::size_t j = 0; j < s.scores.size(); ++j) {
        if (s.scores[j] > t.scores[j]) return false;
        if (s.scores[j] < t.scores[j]) strict = true;
    }
    return strict;
}

inline bool summary_weakly_dominates(const LeafSummary& s, const DistanceTuple& t) {
    for (std::size_t j = 0; j < s.scores.size(); ++j)
        if (s.scores[j] > t.scores[j]) return false;
    return true;
}

}  // namespace detail

/**
 * @brief Merges per-partition local skylines into the global skyline.
 *
 * Optional virtual maximum points prune tuples dominated by a foreign
 * leaf's VMP (skyfilters, when given, screen which VMPs need checking).
 * A final SFS pass makes the result exact for any pruning input, so the
 * output always equals the skyline of the concatenated local skylines.
 */
inline SkylineSet global_merge(const std::vector<SkylineSet>& local_skylines,
                               const std::vector<LeafSummary>* vmps = nullptr,
                               const std::vector<LeafSummary>* skyfilters = nullptr) {
    std::vector<DistanceTuple> candidates;
    for (std::size_t part = 0; part < local_skylines.size(); ++part) {
        for (const DistanceTuple& t : local_skylines[part].tuples) {
            bool pruned = false;
            if (vmps != nullptr) {
                for (std::size_t v = 0; v < vmps->size(); ++v) {
                    const LeafSummary& vmp = (*vmps)[v];
                    if (vmp.leaf == static_cast<int>(part)) continue;
                    if (skyfilters != nullptr && v < skyfilters->size() &&
                        !detail::summary_weakly_dominates((*skyfilters)[v], t))
                        continue;
                    if (detail::summary_dominates(vmp, t)) {
                        pruned = true;
                        break;
                    }
                }
            }
            if (!pruned) candidates.push_back(t);
        }
    }
    return sfs_skyline(candidates);
}

}  // namespace areasky

#endif  // AREASKY_SKYLINE_HPP
