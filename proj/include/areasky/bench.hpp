/**
 * @file bench.hpp
 * @brief Oracle verification and the six-variant benchmark harness.
 *
 * The harness runs every variant on every requested dataset, gates timing
 * publication on correctness (cross-variant skyline equality always; full
 * oracle diff when the map is small enough), and averages wall times over
 * repetitions.
 */

#ifndef AREASKY_BENCH_HPP
#define AREASKY_BENCH_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "areasky/datagen.hpp"
#include "areasky/edt.hpp"
#include "areasky/model.hpp"
#include "areasky/pipeline.hpp"
#include "areasky/report.hpp"
#include "areasky/skyline.hpp"

namespace areasky {

/// Benchmark abort: some variant disagreed with another (or with the
/// oracle). Timings of wrong answers are meaningless.
class CorrectnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FieldMismatch {
    int row = 0;
    int col = 0;
    dist2_t got = 0;
    dist2_t want = 0;
};

/// First differing cell between two equally-sized fields, if any.
inline std::optional<FieldMismatch> diff_fields(const DistanceField& got,
                                                const DistanceField& want) {
    for (int r = 0; r < got.k; ++r)
        for (int c = 0; c < got.k; ++c)
            if (got.at(r, c) != want.at(r, c))
                return FieldMismatch{r, c, got.at(r, c), want.at(r, c)};
    return std::nullopt;
}

/// Skyline by the bare pairwise definition (no sorting, no windows): a
/// tuple survives iff no other tuple dominates it. Test/verify reference,
/// independent of the operator implementations.
inline SkylineSet brute_force_skyline(const std::vector<DistanceTuple>& tuples) {
    std::vector<DistanceTuple> members;
    for (const DistanceTuple& t : tuples) {
        bool dominated = false;
        for (const DistanceTuple& u : tuples) {
            if (dominates(u, t)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) members.push_back(t);
    }
    detail::sort_canonical(members);
    return SkylineSet{std::move(members)};
}

/// All k*k normalized tuples of a map, row-major, from brute-force fields.
inline std::vector<DistanceTuple> oracle_tuples(const GridMap& map) {
    std::vector<DistanceField> fields;
    fields.reserve(static_cast<std::size_t>(map.type_count()));
    for (int t = 0; t < map.type_count(); ++t) fields.push_back(brute_force_edt(map, t));
    std::vector<DistanceTuple> tuples =
        detail::assemble_raw_tuples(fields, map.k, 0, map.k);
    detail::normalize_tuples(tuples, map.types, map.k);
    return tuples;
}

struct VerifyReport {
    bool pass = false;
    std::int64_t skyline_size = 0;
    std::string detail;  ///< first failure, or a short success summary
};

inline constexpr int kDefaultOracleCap = 128;

/**
 * @brief Diffs the fast transform and all six pipeline variants against
 * brute-force references.
 *
 * Refuses maps with k above the oracle cap (std::invalid_argument) because
 * the references are quadratic-ish; raise the cap knowingly if needed.
 */
inline VerifyReport verify_map(const GridMap& map, int workers,
                               int oracle_cap = kDefaultOracleCap) {
    if (map.k > oracle_cap) {
        throw std::invalid_argument(
            "verify: k=" + std::to_string(map.k) + " exceeds the oracle cap " +
            std::to_string(oracle_cap) +
            " (the brute-force reference would be too slow; raise the cap to force)");
    }
    map.validate();
    VerifyReport report;

    for (int t = 0; t < map.type_count(); ++t) {
        const DistanceField want = brute_force_edt(map, t);
        const DistanceField got = edt(map, t);
        if (const auto mismatch = diff_fields(got, want)) {
            std::ostringstream msg;
            msg << "edt mismatch: type " << t << " cell (" << mismatch->row << ","
                << mismatch->col << ") got " << mismatch->got << " want " << mismatch->want;
            report.detail = msg.str();
            return report;
        }
    }

    const SkylineSet want_sky = brute_force_skyline(oracle_tuples(map));
    report.skyline_size = static_cast<std::int64_t>(want_sky.size());
    for (const std::string& name : VariantSpec::all_names()) {
        VariantSpec v = VariantSpec::parse(name);
        v.workers = workers;
        const PipelineResult result = run_pipeline(map, v);
        if (result.skyline.grid_ids() != want_sky.grid_ids()) {
            report.detail = "skyline mismatch: variant " + name + " returned " +
                            std::to_string(result.skyline.size()) + " grids, oracle has " +
                            std::to_string(want_sky.size());
            return report;
        }
    }
    report.pass = true;
    report.detail = "all fields and all 6 variant skylines match the oracle";
    return report;
}

struct BenchRow {
    std::string dataset;
    int k = 0;
    int n = 0;
    std::string variant;
    double avg_ms = 0.0;
    double min_ms = 0.0;
    std::int64_t backend_input = 0;  ///< tuples entering the skyline back-end
    std::int64_t skyline_size = 0;
    std::string verified;  ///< "oracle" below the cap, otherwise "cross"
};

struct BenchStageRow {
    std::string dataset;
    std::string variant;
    std::string stage;
    double avg_ms = 0.0;
    double min_ms = 0.0;
    std::int64_t in_count = 0;
    std::int64_t out_count = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::vector<BenchStageRow> stage_rows;
};

struct BenchOptions {
    std::vector<DatasetSpec> datasets;
    int repetitions = 1;
    int workers = 1;
    int oracle_cap = kDefaultOracleCap;
};

/// Tuples entering the back-end: "LS Map" input (MR back-ends) or "TS"
/// input (SKY-MR); both equal the post-filter tuple count.
inline std::int64_t backend_input_count(const StageReport& report) {
    if (const StageRecord* ts = report.find("TS")) return ts->in_count;
    if (const StageRecord* ls = report.find("LS Map")) return ls->in_count;
    return 0;
}

/// Runs every variant on every dataset, `repetitions` times each.
/// Correctness gates publication: any disagreement throws CorrectnessError.
inline BenchResult bench_suite(const BenchOptions& opts) {
    if (opts.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    BenchResult result;

    for (const DatasetSpec& spec : opts.datasets) {
        const GridMap map = generate(spec);
        std::optional<std::vector<GridId>> reference;
        std::string verified = "cross";
        if (map.k <= opts.oracle_cap) {
            reference = brute_force_skyline(oracle_tuples(map)).grid_ids();
            verified = "oracle";
        }

        for (const std::string& name : VariantSpec::all_names()) {
            VariantSpec v = VariantSpec::parse(name);
            v.workers = opts.workers;
            v.seed = spec.seed;

            BenchRow row;
            row.dataset = spec.name;
            row.k = map.k;
            row.n = map.type_count();
            row.variant = name;
            row.verified = verified;
            row.min_ms = std::numeric_limits<double>::infinity();

            std::vector<StageReport> reports;
            reports.reserve(static_cast<std::size_t>(opts.repetitions));
            for (int rep = 0; rep < opts.repetitions; ++rep) {
                PipelineResult run = run_pipeline(map, v);
                const std::vector<GridId> ids = run.skyline.grid_ids();
                if (!reference) {
                    reference = ids;  // first run of the first variant anchors
                } else if (ids != *reference) {
                    throw CorrectnessError("bench aborted: variant " + name + " on set " +
                                           spec.name + " disagrees on the skyline");
                }
                row.avg_ms += run.report.total_wall_ms;
                row.min_ms = std::min(row.min_ms, run.report.total_wall_ms);
                row.skyline_size = static_cast<std::int64_t>(run.skyline.size());
                row.backend_input = backend_input_count(run.report);
                reports.push_back(std::move(run.report));
            }
            row.avg_ms /= opts.repetitions;
            result.rows.push_back(row);

            // Stage rows averaged across repetitions (stage lists agree).
            const StageReport& first = reports.front();
            for (std::size_t s = 0; s < first.stages.size(); ++s) {
                BenchStageRow srow;
                srow.dataset = spec.name;
                srow.variant = name;
                srow.stage = first.stages[s].stage;
                srow.min_ms = std::numeric_limits<double>::infinity();
                for (const StageReport& rep : reports) {
                    srow.avg_ms += rep.stages[s].ms;
                    srow.min_ms = std::min(srow.min_ms, rep.stages[s].ms);
                }
                srow.avg_ms /= static_cast<double>(reports.size());
                srow.in_count = first.stages[s].in_count;
                srow.out_count = first.stages[s].out_count;
                result.stage_rows.push_back(std::move(srow));
            }
        }
    }
    return result;
}

inline void write_bench_csv(std::ostream& out, const BenchResult& result) {
    out << "dataset,k,n,variant,avg_ms,min_ms,backend_input,skyline_size,verified\n";
    for (const BenchRow& r : result.rows) {
        out << r.dataset << ',' << r.k << ',' << r.n << ',' << r.variant << ','
            << detail::fixed3(r.avg_ms) << ',' << detail::fixed3(r.min_ms) << ','
            << r.backend_input << ',' << r.skyline_size << ',' << r.verified << "\n";
    }
}

inline void write_bench_stages_csv(std::ostream& out, const BenchResult& result) {
    out << "dataset,variant,stage,avg_ms,min_ms,in_count,out_count\n";
    for (const BenchStageRow& r : result.stage_rows) {
        out << r.dataset << ',' << r.variant << ',' << r.stage << ','
            << detail::fixed3(r.avg_ms) << ',' << detail::fixed3(r.min_ms) << ','
            << r.in_count << ',' << r.out_count << "\n";
    }
}

}  // namespace areasky

#endif  // AREASKY_BENCH_HPP
