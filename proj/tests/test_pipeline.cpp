#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <string>

#include "areasky/bench.hpp"
#include "areasky/pipeline.hpp"
#include "areasky/report.hpp"
#include "fixtures.hpp"

using namespace areasky;
using fixtures::dt;

namespace {

std::vector<DistanceField> fields_of(const GridMap& map) {
    std::vector<DistanceField> fields;
    for (int t = 0; t < map.type_count(); ++t) fields.push_back(edt(map, t));
    return fields;
}

std::set<std::string> stage_names(const StageReport& report) {
    std::set<std::string> names;
    for (const auto& s : report.stages) names.insert(s.stage);
    return names;
}

const std::set<std::string> kMrStages = {"GD Map", "GD Reduce", "MDT Map", "MDT Reduce",
                                         "GM Map", "GM Reduce", "LS Map", "LS Reduce",
                                         "GS Map", "GS Reduce"};
const std::set<std::string> kSkyMrStages = {"GD Map", "GD Reduce", "MDT Map", "MDT Reduce",
                                            "TS", "MSQT", "MVM", "MSF", "LS Map", "LS Reduce",
                                            "GS Map", "GS Reduce"};
const std::set<std::string> kNonBackendStages = {"GD Map", "GD Reduce", "MDT Map",
                                                 "MDT Reduce", "MF", "F"};

std::set<std::string> with_filter_stages(std::set<std::string> base) {
    base.insert("MF");
    base.insert("F");
    return base;
}

std::int64_t backend_in_sum(const StageReport& r) {
    std::int64_t sum = 0;
    for (const auto& s : r.stages)
        if (kNonBackendStages.count(s.stage) == 0) sum += s.in_count;
    return sum;
}

}  // namespace

TEST_CASE("partition_rows: balanced remainder-first ranges") {
    CHECK(partition_rows(4, 3) ==
          std::vector<std::pair<int, int>>{{0, 2}, {2, 3}, {3, 4}});
    CHECK(partition_rows(4, 4) ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    // more workers than rows: trailing partitions are empty
    CHECK(partition_rows(2, 4) ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 2}, {2, 2}});
    CHECK_THROWS_AS(partition_rows(0, 1), std::invalid_argument);

    fixtures::TestRng rng(0xC07);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = rng.range(1, 200);
        const int w = rng.range(1, 16);
        const auto ranges = partition_rows(k, w);
        REQUIRE(ranges.size() == static_cast<std::size_t>(w));
        int row = 0;
        for (const auto& [lo, hi] : ranges) {
            CHECK(lo == row);  // contiguous and disjoint
            CHECK(hi >= lo);
            row = hi;
        }
        CHECK(row == k);  // full coverage
    }
}

TEST_CASE("make_tuples: worked 4x4 example, one partition") {
    const GridMap map = fixtures::table1_map();
    const auto parts = make_tuples(fields_of(map), map, 1);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].tuples == fixtures::table1_tuples());
}

TEST_CASE("make_tuples: one row per partition when W == k") {
    const GridMap map = fixtures::table1_map();
    const auto parts = make_tuples(fields_of(map), map, 4);
    REQUIRE(parts.size() == 4);
    for (int w = 0; w < 4; ++w) {
        CHECK(parts[static_cast<std::size_t>(w)].row_lo == w);
        CHECK(parts[static_cast<std::size_t>(w)].row_hi == w + 1);
        CHECK(parts[static_cast<std::size_t>(w)].tuples.size() == 4);
        for (const auto& t : parts[static_cast<std::size_t>(w)].tuples)
            CHECK(t.grid.row == w);
    }
}

TEST_CASE("make_tuples: every grid lands in exactly one partition") {
    const GridMap map = fixtures::random_map(0xFA, 11, 3, fixtures::Density::OnePerRow);
    const auto parts = make_tuples(fields_of(map), map, 3);
    std::set<std::pair<int, int>> seen;
    for (const auto& p : parts)
        for (const auto& t : p.tuples) CHECK(seen.insert({t.grid.row, t.grid.col}).second);
    CHECK(seen.size() == static_cast<std::size_t>(map.k * map.k));
}

TEST_CASE("make_tuples: field/type mismatch is an error") {
    const GridMap map = fixtures::table1_map();
    auto fields = fields_of(map);
    fields.pop_back();
    CHECK_THROWS_AS(make_tuples(fields, map, 1), std::invalid_argument);
}

TEST_CASE("extract_local_partial_skyline: worked point set") {
    Partition p{0, 0, 3, fixtures::fig4_points()};
    const auto partial = extract_local_partial_skyline(p);
    REQUIRE(partial.tuples.size() == 3);
    std::set<std::vector<dist2_t>> scores;
    for (const auto& t : partial.tuples) scores.insert(t.scores);
    CHECK(scores == std::set<std::vector<dist2_t>>{{2, 2}, {1, 6}, {7, 1}});
}

TEST_CASE("extract_local_partial_skyline: degenerate partitions") {
    SECTION("singleton partition deduplicates to one tuple") {
        Partition p{0, 0, 1, {dt(0, 0, {3, 4})}};
        CHECK(extract_local_partial_skyline(p).tuples.size() == 1);
    }
    SECTION("origin-min that also wins every dimension -> one tuple") {
        Partition p{0, 0, 1, {dt(0, 0, {1, 1}), dt(0, 1, {5, 9}), dt(0, 2, {9, 5})}};
        const auto partial = extract_local_partial_skyline(p);
        REQUIRE(partial.tuples.size() == 1);
        CHECK(partial.tuples[0].scores == std::vector<dist2_t>{1, 1});
    }
    SECTION("empty partition is legal and yields nothing") {
        Partition p{3, 2, 2, {}};
        CHECK(extract_local_partial_skyline(p).tuples.empty());
    }
    SECTION("norm ties break by grid id") {
        Partition p{0, 0, 1, {dt(0, 1, {3, 4}), dt(0, 0, {4, 3}), dt(1, 1, {5, 0})}};
        const auto partial = extract_local_partial_skyline(p);
        // norms tie at 25: (0,0) wins the origin slot by id
        bool found = false;
        for (const auto& t : partial.tuples)
            if (t.grid == GridId{0, 0}) found = true;
        CHECK(found);
    }
}

TEST_CASE("create_filter: sizes and errors") {
    SECTION("three mutually incomparable partials") {
        std::vector<LocalPartialSkyline> partials = {{{dt(0, 0, {2, 2})}},
                                                     {{dt(0, 1, {1, 6})}},
                                                     {{dt(0, 2, {7, 1})}}};
        const Filter f = create_filter(partials);
        CHECK(f.tuples.size() == 3);
    }
    SECTION("filter size is bounded by m*(n+1)") {
        const GridMap map = fixtures::random_map(0xF1, 32, 3, fixtures::Density::OnePerRow);
        const int m = 8;
        const auto parts = make_tuples(fields_of(map), map, m);
        std::vector<LocalPartialSkyline> partials;
        for (const auto& p : parts) partials.push_back(extract_local_partial_skyline(p));
        for (const auto& p : partials)
            CHECK(p.tuples.size() <= static_cast<std::size_t>(map.type_count() + 1));
        const Filter f = create_filter(partials);
        CHECK(f.tuples.size() <= static_cast<std::size_t>(m * (map.type_count() + 1)));
        // no internal domination
        for (const auto& a : f.tuples.tuples)
            for (const auto& b : f.tuples.tuples) CHECK_FALSE(dominates(a, b));
    }
    SECTION("one partition: filter is the skyline of its partials") {
        std::vector<LocalPartialSkyline> partials = {
            {{dt(0, 0, {1, 1}), dt(0, 1, {2, 2})}}};
        const Filter f = create_filter(partials);
        CHECK(f.tuples.size() == 1);
    }
    SECTION("all-empty partials are a misconfiguration") {
        std::vector<LocalPartialSkyline> partials(3);
        CHECK_THROWS_AS(create_filter(partials), std::invalid_argument);
    }
}

TEST_CASE("apply_filter: worked point set") {
    Partition p{0, 0, 3, fixtures::fig4_points()};
    const Filter f = create_filter({extract_local_partial_skyline(p)});
    const Partition filtered = apply_filter(p, f);
    REQUIRE(filtered.tuples.size() == 3);  // only the three filter points survive
    std::set<std::vector<dist2_t>> scores;
    for (const auto& t : filtered.tuples) scores.insert(t.scores);
    CHECK(scores == std::set<std::vector<dist2_t>>{{2, 2}, {1, 6}, {7, 1}});
}

TEST_CASE("apply_filter: edge filters") {
    Partition p{0, 0, 1, {dt(0, 0, {0, 0}), dt(0, 1, {3, 4}), dt(0, 2, {0, 0})}};
    SECTION("empty filter keeps everything") {
        const Filter empty{};
        CHECK(apply_filter(p, empty).tuples.size() == 3);
    }
    SECTION("zero filter keeps only zero tuples") {
        Filter zero;
        zero.tuples = bnl_skyline(std::vector<DistanceTuple>{dt(9, 9, {0, 0})});
        const Partition filtered = apply_filter(p, zero);
        REQUIRE(filtered.tuples.size() == 2);
        for (const auto& t : filtered.tuples) CHECK(t.scores == std::vector<dist2_t>{0, 0});
    }
}

TEST_CASE("apply_filter is idempotent") {
    const GridMap map = fixtures::random_map(0x1D1, 24, 3, fixtures::Density::OnePerRow);
    const auto parts = make_tuples(fields_of(map), map, 4);
    std::vector<LocalPartialSkyline> partials;
    for (const auto& p : parts) partials.push_back(extract_local_partial_skyline(p));
    const Filter f = create_filter(partials);
    for (const auto& p : parts) {
        const Partition once = apply_filter(p, f);
        const Partition twice = apply_filter(once, f);
        CHECK(once.tuples == twice.tuples);
    }
}

TEST_CASE("filter soundness: the oracle skyline always survives") {
    fixtures::TestRng rng(0x50F7);
    for (int trial = 0; trial < 12; ++trial) {
        const int k = rng.range(2, 40);
        const int n = rng.range(2, 4);
        const GridMap map = fixtures::random_map(rng.next(), k, n,
                                                 fixtures::Density::OnePerRow);
        const auto want = brute_force_skyline(oracle_tuples(map));

        for (const int workers : {1, 3, 7}) {
            const auto parts = make_tuples(fields_of(map), map, workers);
            std::vector<LocalPartialSkyline> partials;
            for (const auto& p : parts) partials.push_back(extract_local_partial_skyline(p));
            const Filter f = create_filter(partials);

            std::set<std::pair<int, int>> survivors;
            for (const auto& p : parts)
                for (const auto& t : apply_filter(p, f).tuples)
                    survivors.insert({t.grid.row, t.grid.col});
            for (const auto& t : want.tuples)
                CHECK(survivors.count({t.grid.row, t.grid.col}) == 1);
        }
    }
}

TEST_CASE("run_pipeline: worked 4x4 example under every variant") {
    const GridMap map = fixtures::table1_map();
    for (const auto& name : VariantSpec::all_names()) {
        VariantSpec v = VariantSpec::parse(name);
        v.workers = 2;
        const PipelineResult result = run_pipeline(map, v);
        INFO("variant " << name);
        CHECK(result.skyline.grid_ids() == fixtures::table1_skyline_ids());
    }
}

TEST_CASE("run_pipeline: proposed filtering shrinks the backend input") {
    const GridMap map = fixtures::random_map(0xBEE, 64, 3, fixtures::Density::OnePerRow);
    for (const char* backend : {"bnl", "sfs", "skymr"}) {
        VariantSpec existing = VariantSpec::parse(std::string("e-") + backend);
        VariantSpec proposed = VariantSpec::parse(std::string("p-") + backend);
        existing.workers = proposed.workers = 4;
        const PipelineResult e = run_pipeline(map, existing);
        const PipelineResult p = run_pipeline(map, proposed);
        CHECK(e.skyline == p.skyline);
        CHECK(backend_input_count(p.report) <= backend_input_count(e.report));
        CHECK(backend_in_sum(p.report) <= backend_in_sum(e.report));
    }
}

TEST_CASE("run_pipeline: skyline is independent of worker count") {
    const GridMap map = fixtures::random_map(0xDE7, 48, 3, fixtures::Density::OnePerRow);
    for (const auto& name : VariantSpec::all_names()) {
        std::string first_csv;
        for (const int workers : {1, 2, 5}) {
            VariantSpec v = VariantSpec::parse(name);
            v.workers = workers;
            v.seed = 99;
            const PipelineResult result = run_pipeline(map, v);
            std::ostringstream csv;
            write_skyline_csv(csv, result.skyline, map);
            if (first_csv.empty()) first_csv = csv.str();
            else CHECK(first_csv == csv.str());
        }
    }
}

TEST_CASE("run_pipeline: stage names match the variant exactly") {
    const GridMap map = fixtures::table1_map();
    auto run_names = [&](const char* name) {
        VariantSpec v = VariantSpec::parse(name);
        v.workers = 2;
        return stage_names(run_pipeline(map, v).report);
    };
    CHECK(run_names("e-bnl") == kMrStages);
    CHECK(run_names("e-sfs") == kMrStages);
    CHECK(run_names("p-bnl") == with_filter_stages(kMrStages));
    CHECK(run_names("p-sfs") == with_filter_stages(kMrStages));
    CHECK(run_names("e-skymr") == kSkyMrStages);
    CHECK(run_names("p-skymr") == with_filter_stages(kSkyMrStages));
}

TEST_CASE("run_pipeline: stage cardinalities are consistent") {
    const GridMap map = fixtures::random_map(0xCAD, 20, 3, fixtures::Density::OnePerRow);
    const std::int64_t cells = 20 * 20;
    const std::int64_t n = 3;

    for (const auto& name : VariantSpec::all_names()) {
        VariantSpec v = VariantSpec::parse(name);
        v.workers = 3;
        const PipelineResult result = run_pipeline(map, v);
        const StageReport& r = result.report;
        INFO("variant " << name);

        for (const auto& s : r.stages) {
            CHECK(s.ms >= 0.0);
            CHECK(s.in_count >= 0);
            CHECK(s.out_count >= 0);
        }

        CHECK(r.find("GD Map")->out_count == n * cells);
        CHECK(r.find("GD Reduce")->out_count == n * cells);
        CHECK(r.find("MDT Map")->in_count == n * cells);
        CHECK(r.find("MDT Reduce")->out_count == cells);

        std::int64_t backend_in = cells;
        if (v.mode == Mode::Proposed) {
            const auto* mf = r.find("MF");
            const auto* f = r.find("F");
            REQUIRE(mf != nullptr);
            REQUIRE(f != nullptr);
            CHECK(mf->in_count <= 3 * (n + 1));  // m partials of <= n+1 tuples
            CHECK(mf->out_count <= mf->in_count);
            CHECK(f->in_count == cells);
            CHECK(f->out_count <= f->in_count);
            backend_in = f->out_count;
        }

        if (v.backend == Backend::SkyMr) {
            CHECK(r.find("TS")->in_count == backend_in);
            CHECK(r.find("MSQT")->in_count == r.find("TS")->out_count);
            CHECK(r.find("LS Map")->in_count == backend_in);
            CHECK(r.find("LS Map")->out_count <= backend_in);
            CHECK(r.find("LS Reduce")->in_count == r.find("LS Map")->out_count);
        } else {
            CHECK(r.find("GM Map")->in_count == backend_in);
            CHECK(r.find("GM Reduce")->out_count == n);
            CHECK(r.find("LS Map")->in_count == backend_in);
            CHECK(r.find("LS Map")->out_count == backend_in);
            CHECK(r.find("LS Reduce")->in_count == backend_in);
        }
        CHECK(r.find("GS Map")->in_count == r.find("LS Reduce")->out_count);
        CHECK(r.find("GS Reduce")->out_count ==
              static_cast<std::int64_t>(result.skyline.size()));
        CHECK(r.total_wall_ms >= 0.0);
    }
}

TEST_CASE("run_pipeline: empty layer aborts with a partial report") {
    GridMap map = fixtures::table1_map();
    map.placements[2].clear();
    VariantSpec v = VariantSpec::parse("p-sfs");
    v.workers = 2;
    try {
        run_pipeline(map, v);
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(std::string(e.what()).find("no placements") != std::string::npos);
        CHECK(e.partial_report().stages.empty());  // failed before GD Map completed
    }
}

TEST_CASE("VariantSpec: parse and name round-trip") {
    for (const auto& name : VariantSpec::all_names())
        CHECK(VariantSpec::parse(name).name() == name);
    CHECK_THROWS_AS(VariantSpec::parse("q-bnl"), std::invalid_argument);
    CHECK_THROWS_AS(VariantSpec::parse("e-fast"), std::invalid_argument);
    CHECK_THROWS_AS(VariantSpec::parse("nodash"), std::invalid_argument);
}
