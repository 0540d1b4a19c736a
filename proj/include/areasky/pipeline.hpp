/**
 * @file pipeline.hpp
 * @brief Partitioned area-skyline pipeline: distance transform, distance
 * tuple creation, optional partial-skyline filter, skyline back-end.
 *
 * The driver orchestrates stages separated by barriers; within a stage one
 * task runs per partition (or per reduce group) on a pool of W logical
 * workers. In Proposed mode each partition contributes a local partial
 * skyline (origin-nearest tuple plus per-dimension minima) while tuples are
 * created; the driver computes the skyline of those candidates and
 * broadcasts it as a filter that drops dominated tuples before the
 * back-end. The final skyline is a pure function of the map: identical for
 * every variant, worker count, and schedule.
 */

#ifndef AREASKY_PIPELINE_HPP
#define AREASKY_PIPELINE_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "areasky/edt.hpp"
#include "areasky/model.hpp"
#include "areasky/skyline.hpp"
#include "areasky/worker_pool.hpp"

namespace areasky {

enum class Mode { Existing, Proposed };
enum class Backend { MrBnl, MrSfs, SkyMr };

struct VariantSpec {
    Mode mode = Mode::Existing;
    Backend backend = Backend::MrBnl;
    int workers = 1;
    std::uint64_t seed = 0;
    double sample_rate = 0.01;   ///< SKY-MR sampling rate
    int sample_floor = 256;      ///< SKY-MR minimum sample size
    int leaf_capacity = 64;      ///< SKY-MR quadtree leaf capacity

    /// Parses "e-bnl", "p-sfs", "e-skymr", ... (the six baseline names).
    static VariantSpec parse(std::string_view name) {
        VariantSpec v;
        const auto dash = name.find('-');
        if (dash == std::string_view::npos)
            throw std::invalid_argument("variant must look like e-bnl or p-skymr");
        const std::string_view mode = name.substr(0, dash);
        const std::string_view backend = name.substr(dash + 1);
        if (mode == "e") v.mode = Mode::Existing;
        else if (mode == "p") v.mode = Mode::Proposed;
        else throw std::invalid_argument("variant mode must be e or p");
        if (backend == "bnl") v.backend = Backend::MrBnl;
        else if (backend == "sfs") v.backend = Backend::MrSfs;
        else if (backend == "skymr") v.backend = Backend::SkyMr;
        else throw std::invalid_argument("variant backend must be bnl, sfs or skymr");
        return v;
    }

    std::string name() const {
        std::string out = mode == Mode::Existing ? "e-" : "p-";
        switch (backend) {
            case Backend::MrBnl: out += "bnl"; break;
            case Backend::MrSfs: out += "sfs"; break;
            case Backend::SkyMr: out += "skymr"; break;
        }
        return out;
    }

    static const std::vector<std::string>& all_names() {
        static const std::vector<std::string> names = {"e-bnl", "e-sfs", "e-skymr",
                                                       "p-bnl", "p-sfs", "p-skymr"};
        return names;
    }
};

/// One per-stage instrumentation row, keyed by the task-taxonomy name.
struct StageRecord {
    std::string stage;
    double ms = 0.0;               ///< critical path: max worker busy time
    std::int64_t in_count = 0;
    std::int64_t out_count = 0;
};

struct StageReport {
    std::vector<StageRecord> stages;
    double total_wall_ms = 0.0;

    const StageRecord* find(std::string_view name) const {
        for (const auto& s : stages)
            if (s.stage == name) return &s;
        return nullptr;
    }
};

/// Error escaping a pipeline stage; carries the stages completed so far.
class PipelineError : public std::runtime_error {
public:
    PipelineError(const std::string& what, StageReport partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const StageReport& partial_report() const { return partial_; }

private:
    StageReport partial_;
};

/// Contiguous row block owned by one worker, with its distance tuples.
struct Partition {
    int worker = 0;
    int row_lo = 0;
    int row_hi = 0;  ///< exclusive
    std::vector<DistanceTuple> tuples;
};

/// Row ranges per worker: the first k mod W workers take ceil(k/W) rows,
/// the rest floor(k/W). Covers [0, k) disjointly; pure in (k, W).
inline std::vector<std::pair<int, int>> partition_rows(int k, int workers) {
    if (k < 1 || workers < 1) throw std::invalid_argument("k and workers must be >= 1");
    std::vector<std::pair<int, int>> ranges;
    ranges.reserve(static_cast<std::size_t>(workers));
    const int base = k / workers;
    const int extra = k % workers;
    int row = 0;
    for (int w = 0; w < workers; ++w) {
        const int size = base + (w < extra ? 1 : 0);
        ranges.emplace_back(row, row + size);
        row += size;
    }
    return ranges;
}

namespace detail {

/// Raw (un-normalized) per-grid distance vectors for rows [lo, hi).
inline std::vector<DistanceTuple> assemble_raw_tuples(const std::vector<DistanceField>& fields,
                                                      int k, int row_lo, int row_hi) {
    std::vector<DistanceTuple> out;
    out.reserve(static_cast<std::size_t>(row_hi - row_lo) * static_cast<std::size_t>(k));
    for (int r = row_lo; r < row_hi; ++r) {
        for (int c = 0; c < k; ++c) {
            DistanceTuple t;
            t.grid = GridId{r, c};
            t.scores.resize(fields.size());
            for (std::size_t j = 0; j < fields.size(); ++j) t.scores[j] = fields[j].at(r, c);
            out.push_back(std::move(t));
        }
    }
    return out;
}

inline void normalize_tuples(std::vector<DistanceTuple>& tuples,
                             const std::vector<FacilityType>& types, int k) {
    for (DistanceTuple& t : tuples) t.scores = normalize_scores(t.scores, types, k);
}

}  // namespace detail

/// Distance tuple creation: assembles each grid's raw squared distances
/// across all fields, normalizes polarity, and partitions by row blocks.
inline std::vector<Partition> make_tuples(const std::vector<DistanceField>& fields,
                                          const GridMap& map, int workers) {
    if (static_cast<int>(fields.size()) != map.type_count())
        throw std::invalid_argument("field count does not match facility type count");
    for (const auto& f : fields)
        if (f.k != map.k) throw std::invalid_argument("field size does not match map");
    const auto ranges = partition_rows(map.k, workers);
    std::vector<Partition> parts;
    parts.reserve(ranges.size());
    for (std::size_t w = 0; w < ranges.size(); ++w) {
        Partition p;
        p.worker = static_cast<int>(w);
        p.row_lo = ranges[w].first;
        p.row_hi = ranges[w].second;
        p.tuples = detail::assemble_raw_tuples(fields, map.k, p.row_lo, p.row_hi);
        detail::normalize_tuples(p.tuples, map.types, map.k);
        parts.push_back(std::move(p));
    }
    return parts;
}

/// Per-partition candidate set: the tuple nearest the origin (L2 norm of
/// the score vector, exact integer sum of squares) plus, per dimension, the
/// tuple with the minimum score. Deduplicated; at most n+1 members.
struct LocalPartialSkyline {
    std::vector<DistanceTuple> tuples;  ///< sorted by GridId
};

inline LocalPartialSkyline extract_local_partial_skyline(const Partition& p) {
    LocalPartialSkyline out;
    if (p.tuples.empty()) return out;  // legal when workers exceed rows

    const auto norm2 = [](const DistanceTuple& t) {
        dist2_t s = 0;
        for (dist2_t v : t.scores) s += v * v;
        return s;
    };
    const std::size_t n = p.tuples.front().scores.size();
    const DistanceTuple* origin_min = &p.tuples.front();
    std::vector<const DistanceTuple*> dim_min(n, &p.tuples.front());
    dist2_t best_norm = norm2(p.tuples.front());
    for (const DistanceTuple& t : p.tuples) {
        const dist2_t nn = norm2(t);
        if (nn < best_norm || (nn == best_norm && t.grid < origin_min->grid)) {
            best_norm = nn;
            origin_min = &t;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (t.scores[j] < dim_min[j]->scores[j] ||
                (t.scores[j] == dim_min[j]->scores[j] && t.grid < dim_min[j]->grid))
                dim_min[j] = &t;
        }
    }

    std::vector<const DistanceTuple*> picks;
    picks.push_back(origin_min);
    picks.insert(picks.end(), dim_min.begin(), dim_min.end());
    std::sort(picks.begin(), picks.end(),
              [](const DistanceTuple* a, const DistanceTuple* b) { return a->grid < b->grid; });
    picks.erase(std::unique(picks.begin(), picks.end(),
                            [](const DistanceTuple* a, const DistanceTuple* b) {
                                return a->grid == b->grid;
                            }),
                picks.end());
    out.tuples.reserve(picks.size());
    for (const DistanceTuple* t : picks) out.tuples.push_back(*t);
    return out;
}

/// Driver-side filter: the skyline of all partitions' partial skylines,
/// broadcast by value to every worker.
struct Filter {
    SkylineSet tuples;
};

inline Filter create_filter(const std::vector<LocalPartialSkyline>& partials) {
    std::vector<DistanceTuple> all;
    for (const auto& p : partials) all.insert(all.end(), p.tuples.begin(), p.tuples.end());
    if (all.empty())
        throw std::invalid_argument("filter creation with no partial skyline tuples");
    return Filter{bnl_skyline(all)};
}

/// Keeps exactly the tuples not strictly dominated by any filter tuple.
/// Filter members present in the partition survive (equals never dominate).
inline Partition apply_filter(const Partition& p, const Filter& f) {
    Partition out;
    out.worker = p.worker;
    out.row_lo = p.row_lo;
    out.row_hi = p.row_hi;
    out.tuples.reserve(p.tuples.size());
    for (const DistanceTuple& t : p.tuples) {
        bool dominated = false;
        for (const DistanceTuple& g : f.tuples.tuples) {
            if (dominates(g, t)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.tuples.push_back(t);
    }
    return out;
}

struct PipelineResult {
    SkylineSet skyline;
    StageReport report;
};

namespace detail {

class PipelineRun {
public:
    PipelineRun(const GridMap& map, const VariantSpec& v)
        : map_(map), variant_(v), pool_(v.workers), ranges_(partition_rows(map.k, v.workers)) {}

    PipelineResult execute() {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            distance_stages();
            tuple_stages();
            if (variant_.mode == Mode::Proposed) filter_stages();
            SkylineSet result = variant_.backend == Backend::SkyMr ? skymr_backend()
                                                                   : subspace_backend();
            report_.total_wall_ms = std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
            return PipelineResult{std::move(result), std::move(report_)};
        } catch (const PipelineError&) {
            throw;
        } catch (const std::exception& e) {
            throw PipelineError(e.what(), std::move(report_));
        }
    }

private:
    using Clock = std::chrono::steady_clock;

    static double ms_since(Clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }

    void record(std::string stage, double ms, std::int64_t in, std::int64_t out) {
        report_.stages.push_back(StageRecord{std::move(stage), ms, in, out});
    }

    // GD Map / GD Reduce: row pass over row blocks, column pass over column
    // blocks, one task per (type, block). Empty layers fail loudly first.
    void distance_stages() {
        const int n = map_.type_count();
        const int W = variant_.workers;
        const std::int64_t cells = static_cast<std::int64_t>(map_.k) * map_.k;
        for (int t = 0; t < n; ++t)
            if (map_.placements[static_cast<std::size_t>(t)].empty()) throw EmptyLayerError(t);

        std::vector<RowDistances> rows(static_cast<std::size_t>(n),
                                       RowDistances(static_cast<std::size_t>(map_.k)));
        auto timing = pool_.run(n * W, [&](int task) {
            const int t = task / W;
            const auto [lo, hi] = ranges_[static_cast<std::size_t>(task % W)];
            row_pass_into(map_, t, lo, hi, rows[static_cast<std::size_t>(t)]);
        });
        record("GD Map", timing.critical_path_ms, n * cells, n * cells);

        fields_.assign(static_cast<std::size_t>(n), DistanceField{});
        for (int t = 0; t < n; ++t) {
            fields_[static_cast<std::size_t>(t)] =
                DistanceField{t, map_.k, std::vector<dist2_t>(static_cast<std::size_t>(cells))};
        }
        timing = pool_.run(n * W, [&](int task) {
            const int t = task / W;
            const auto [lo, hi] = ranges_[static_cast<std::size_t>(task % W)];
            column_pass_into(rows[static_cast<std::size_t>(t)], map_.k, lo, hi,
                             fields_[static_cast<std::size_t>(t)]);
        });
        record("GD Reduce", timing.critical_path_ms, n * cells, n * cells);
    }

    // MDT Map / MDT Reduce: raw tuple assembly, then polarity normalization
    // (and, in Proposed mode, partial-skyline extraction alongside).
    void tuple_stages() {
        const int W = variant_.workers;
        const std::int64_t cells = static_cast<std::int64_t>(map_.k) * map_.k;
        const std::int64_t n = map_.type_count();

        parts_.assign(static_cast<std::size_t>(W), Partition{});
        auto timing = pool_.run(W, [&](int w) {
            Partition& p = parts_[static_cast<std::size_t>(w)];
            p.worker = w;
            p.row_lo = ranges_[static_cast<std::size_t>(w)].first;
            p.row_hi = ranges_[static_cast<std::size_t>(w)].second;
            p.tuples = assemble_raw_tuples(fields_, map_.k, p.row_lo, p.row_hi);
        });
        record("MDT Map", timing.critical_path_ms, n * cells, cells);

        partials_.assign(static_cast<std::size_t>(W), LocalPartialSkyline{});
        const bool extract = variant_.mode == Mode::Proposed;
        timing = pool_.run(W, [&](int w) {
            Partition& p = parts_[static_cast<std::size_t>(w)];
            normalize_tuples(p.tuples, map_.types, map_.k);
            if (extract) partials_[static_cast<std::size_t>(w)] =
                extract_local_partial_skyline(p);
        });
        record("MDT Reduce", timing.critical_path_ms, cells, cells);
    }

    // MF / F: driver-side filter creation, then executor-side filtering.
    void filter_stages() {
        std::int64_t partial_count = 0;
        for (const auto& p : partials_) partial_count += static_cast<std::int64_t>(p.tuples.size());

        Filter filter;
        auto timing = pool_.run(1, [&](int) { filter = create_filter(partials_); });
        record("MF", timing.critical_path_ms, partial_count,
               static_cast<std::int64_t>(filter.tuples.size()));

        const std::int64_t before = tuple_count();
        timing = pool_.run(variant_.workers, [&](int w) {
            parts_[static_cast<std::size_t>(w)] =
                apply_filter(parts_[static_cast<std::size_t>(w)], filter);
        });
        record("F", timing.critical_path_ms, before, tuple_count());
    }

    std::int64_t tuple_count() const {
        std::int64_t n = 0;
        for (const auto& p : parts_) n += static_cast<std::int64_t>(p.tuples.size());
        return n;
    }

    /// Backend input in canonical (row-major) order; identical for every
    /// worker count because partitions are ascending contiguous row blocks.
    std::vector<DistanceTuple> canonical_tuples() const {
        std::vector<DistanceTuple> all;
        all.reserve(static_cast<std::size_t>(tuple_count()));
        for (const auto& p : parts_) all.insert(all.end(), p.tuples.begin(), p.tuples.end());
        return all;
    }

    SkylineSet backend_skyline(std::span<const DistanceTuple> tuples) const {
        return variant_.backend == Backend::MrBnl ? bnl_skyline(tuples) : sfs_skyline(tuples);
    }

    // GM / LS / GS: center value, per-subspace local skylines, global merge.
    SkylineSet subspace_backend() {
        const int W = variant_.workers;
        const std::int64_t nb = tuple_count();
        const std::size_t n = static_cast<std::size_t>(map_.type_count());

        // GM Map: per-partition per-dimension value arrays.
        std::vector<std::vector<std::vector<dist2_t>>> dim_values(
            static_cast<std::size_t>(W), std::vector<std::vector<dist2_t>>(n));
        auto timing = pool_.run(W, [&](int w) {
            auto& mine = dim_values[static_cast<std::size_t>(w)];
            for (std::size_t j = 0; j < n; ++j)
                mine[j].reserve(parts_[static_cast<std::size_t>(w)].tuples.size());
            for (const DistanceTuple& t : parts_[static_cast<std::size_t>(w)].tuples)
                for (std::size_t j = 0; j < n; ++j) mine[j].push_back(t.scores[j]);
        });
        record("GM Map", timing.critical_path_ms, nb, static_cast<std::int64_t>(n) * nb);

        // GM Reduce: lower median per dimension over the merged lists.
        std::vector<dist2_t> center(n);
        timing = pool_.run(1, [&](int) {
            std::vector<dist2_t> merged;
            merged.reserve(static_cast<std::size_t>(nb));
            for (std::size_t j = 0; j < n; ++j) {
                merged.clear();
                for (const auto& per_part : dim_values)
                    merged.insert(merged.end(), per_part[j].begin(), per_part[j].end());
                const std::size_t mid = (merged.size() - 1) / 2;
                std::nth_element(merged.begin(),
                                 merged.begin() + static_cast<std::ptrdiff_t>(mid), merged.end());
                center[j] = merged[mid];
            }
        });
        record("GM Reduce", timing.critical_path_ms, static_cast<std::int64_t>(n) * nb,
               static_cast<std::int64_t>(n));

        // LS Map: route tuples to their subspace bucket.
        const std::size_t fan = std::size_t{1} << n;
        std::vector<std::vector<std::vector<DistanceTuple>>> buckets(
            static_cast<std::size_t>(W), std::vector<std::vector<DistanceTuple>>(fan));
        timing = pool_.run(W, [&](int w) {
            for (const DistanceTuple& t : parts_[static_cast<std::size_t>(w)].tuples)
                buckets[static_cast<std::size_t>(w)][subspace_of(t, center)].push_back(t);
        });
        auto t0 = Clock::now();
        std::vector<std::vector<DistanceTuple>> groups(fan);  // shuffle by subspace key
        for (std::size_t s = 0; s < fan; ++s)
            for (std::size_t w = 0; w < static_cast<std::size_t>(W); ++w)
                groups[s].insert(groups[s].end(), buckets[w][s].begin(), buckets[w][s].end());
        record("LS Map", timing.critical_path_ms + ms_since(t0), nb, nb);

        // LS Reduce: one local skyline per nonempty subspace.
        std::vector<SkylineSet> locals(fan);
        timing = pool_.run(static_cast<int>(fan), [&](int s) {
            if (!groups[static_cast<std::size_t>(s)].empty())
                locals[static_cast<std::size_t>(s)] =
                    backend_skyline(groups[static_cast<std::size_t>(s)]);
        });
        std::int64_t local_total = 0;
        for (const auto& l : locals) local_total += static_cast<std::int64_t>(l.size());
        record("LS Reduce", timing.critical_path_ms, nb, local_total);

        // GS Map / GS Reduce: gather local skylines, compute the global one.
        std::vector<DistanceTuple> candidates;
        timing = pool_.run(1, [&](int) {
            candidates.reserve(static_cast<std::size_t>(local_total));
            for (const auto& l : locals)
                candidates.insert(candidates.end(), l.tuples.begin(), l.tuples.end());
        });
        record("GS Map", timing.critical_path_ms, local_total, local_total);

        SkylineSet result;
        timing = pool_.run(1, [&](int) { result = backend_skyline(candidates); });
        record("GS Reduce", timing.critical_path_ms, local_total,
               static_cast<std::int64_t>(result.size()));
        return result;
    }

    // TS / MSQT / MVM / MSF / LS / GS: the SKY-MR back-end.
    SkylineSet skymr_backend() {
        const int W = variant_.workers;
        const std::int64_t nb = tuple_count();

        // TS: deterministic sample of the canonical tuple order.
        std::vector<DistanceTuple> all = canonical_tuples();
        std::size_t target = static_cast<std::size_t>(std::ceil(
            variant_.sample_rate * static_cast<double>(all.size())));
        target = std::max(target, static_cast<std::size_t>(variant_.sample_floor));
        target = std::min(target, all.size());
        std::vector<DistanceTuple> sample;
        auto timing = pool_.run(1, [&](int) {
            sample = skymr_sample_count(all, target, variant_.seed);
        });
        record("TS", timing.critical_path_ms, nb, static_cast<std::int64_t>(sample.size()));

        // MSQT: sky quadtree over the sample, with per-leaf sample skylines.
        SkyQuadtree tree;
        timing = pool_.run(1, [&](int) {
            tree = build_sky_quadtree(sample, variant_.leaf_capacity);
        });
        std::int64_t populated = 0;
        std::int64_t sample_sky_total = 0;
        for (const auto& sky : tree.leaf_skylines) {
            populated += !sky.empty();
            sample_sky_total += static_cast<std::int64_t>(sky.size());
        }
        record("MSQT", timing.critical_path_ms, static_cast<std::int64_t>(sample.size()),
               populated);

        // MVM / MSF: virtual maximum points and skyfilters per leaf.
        std::vector<LeafSummary> vmps;
        timing = pool_.run(1, [&](int) { vmps = virtual_max_points(tree.leaf_skylines); });
        record("MVM", timing.critical_path_ms, sample_sky_total,
               static_cast<std::int64_t>(vmps.size()));

        std::vector<LeafSummary> filters;
        timing = pool_.run(1, [&](int) { filters = sky_filters(tree.leaf_skylines); });
        record("MSF", timing.critical_path_ms, sample_sky_total,
               static_cast<std::int64_t>(filters.size()));

        // LS Map: route tuples to leaves; drop those in pruned regions or
        // dominated by a foreign leaf's virtual maximum point.
        const std::size_t leaf_count = tree.leaves.size();
        std::vector<std::vector<std::vector<DistanceTuple>>> buckets(
            static_cast<std::size_t>(W),
            std::vector<std::vector<DistanceTuple>>(leaf_count));
        timing = pool_.run(W, [&](int w) {
            for (const DistanceTuple& t : parts_[static_cast<std::size_t>(w)].tuples) {
                const int leaf = tree.locate(t);
                if (leaf == SkyQuadtree::kPruned) continue;
                bool dominated = false;
                for (std::size_t v = 0; v < vmps.size(); ++v) {
                    if (vmps[v].leaf == leaf) continue;
                    if (!detail::summary_weakly_dominates(filters[v], t)) continue;
                    if (detail::summary_dominates(vmps[v], t)) {
                        dominated = true;
                        break;
                    }
                }
                if (!dominated)
                    buckets[static_cast<std::size_t>(w)][static_cast<std::size_t>(leaf)]
                        .push_back(t);
            }
        });
        auto t0 = Clock::now();
        std::vector<std::vector<DistanceTuple>> groups(leaf_count);
        std::int64_t survivors = 0;
        for (std::size_t g = 0; g < leaf_count; ++g) {
            for (std::size_t w = 0; w < static_cast<std::size_t>(W); ++w)
                groups[g].insert(groups[g].end(), buckets[w][g].begin(), buckets[w][g].end());
            survivors += static_cast<std::int64_t>(groups[g].size());
        }
        record("LS Map", timing.critical_path_ms + ms_since(t0), nb, survivors);

        // LS Reduce: per-leaf skyline of surviving tuples.
        std::vector<SkylineSet> locals(leaf_count);
        timing = pool_.run(static_cast<int>(leaf_count), [&](int g) {
            if (!groups[static_cast<std::size_t>(g)].empty())
                locals[static_cast<std::size_t>(g)] =
                    sfs_skyline(groups[static_cast<std::size_t>(g)]);
        });
        std::int64_t local_total = 0;
        for (const auto& l : locals) local_total += static_cast<std::int64_t>(l.size());
        record("LS Reduce", timing.critical_path_ms, survivors, local_total);

        // GS Map / GS Reduce: pruned merge of the leaf skylines.
        timing = pool_.run(1, [&](int) {});
        record("GS Map", timing.critical_path_ms, local_total, local_total);

        SkylineSet result;
        timing = pool_.run(1, [&](int) { result = global_merge(locals, &vmps, &filters); });
        record("GS Reduce", timing.critical_path_ms, local_total,
               static_cast<std::int64_t>(result.size()));
        return result;
    }

    const GridMap& map_;
    VariantSpec variant_;
    WorkerPool pool_;
    std::vector<std::pair<int, int>> ranges_;
    std::vector<DistanceField> fields_;
    std::vector<Partition> parts_;
    std::vector<LocalPartialSkyline> partials_;
    StageReport report_;
};

}  // namespace detail

/// Runs the full pipeline for one variant. Throws PipelineError (with the
/// partial stage report) if any stage fails.
inline PipelineResult run_pipeline(const GridMap& map, const VariantSpec& variant) {
    detail::PipelineRun run(map, variant);
    return run.execute();
}

}  // namespace areasky

#endif  // AREASKY_PIPELINE_HPP
