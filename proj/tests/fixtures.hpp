// Shared test fixtures: the 4x4 worked-example map, its oracle-verified
// distance table, and seeded random generators for property tests.

#ifndef AREASKY_TESTS_FIXTURES_HPP
#define AREASKY_TESTS_FIXTURES_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "areasky/model.hpp"
#include "areasky/skyline.hpp"

namespace fixtures {

using areasky::DistanceTuple;
using areasky::dist2_t;
using areasky::FacilityType;
using areasky::GridId;
using areasky::GridMap;
using areasky::Polarity;

// 4x4 map: station at G00, apartments at G02/G10, warehouses at G03/G31,
// landfill (undesirable) at G23.
inline GridMap table1_map() {
    std::vector<FacilityType> types = {
        {0, "station", Polarity::Desirable},
        {1, "apartment", Polarity::Desirable},
        {2, "warehouse", Polarity::Desirable},
        {3, "landfill", Polarity::Undesirable},
    };
    std::vector<std::vector<GridId>> placements = {
        {{0, 0}},
        {{0, 2}, {1, 0}},
        {{0, 3}, {3, 1}},
        {{2, 3}},
    };
    return areasky::make_grid_map(4, std::move(types), std::move(placements));
}

// Squared distances per grid (row-major), columns station/apartment/
// warehouse/landfill. Frozen from the brute-force oracle; the G23 apartment
// entry is 5 (squared), the printed table's "5" being unattainable on a
// 4x4 grid.
inline const std::array<std::array<dist2_t, 4>, 16>& table1_squared() {
    static const std::array<std::array<dist2_t, 4>, 16> table = {{
        {0, 1, 9, 13},   // G00
        {1, 1, 4, 8},    // G01
        {4, 0, 1, 5},    // G02
        {9, 1, 0, 4},    // G03
        {1, 0, 5, 10},   // G10
        {2, 1, 4, 5},    // G11
        {5, 1, 2, 2},    // G12
        {10, 2, 1, 1},   // G13
        {4, 1, 2, 9},    // G20
        {5, 2, 1, 4},    // G21
        {8, 4, 2, 1},    // G22
        {13, 5, 4, 0},   // G23
        {9, 4, 1, 10},   // G30
        {10, 5, 0, 5},   // G31
        {13, 8, 1, 2},   // G32
        {18, 10, 4, 1},  // G33
    }};
    return table;
}

inline std::vector<GridId> table1_skyline_ids() {
    return {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}, {3, 0}, {3, 1}};
}

// Normalized tuples of the 4x4 map (landfill reflected by Dmax2 = 18).
inline std::vector<DistanceTuple> table1_tuples() {
    std::vector<DistanceTuple> tuples;
    const auto& table = table1_squared();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const auto& row = table[static_cast<std::size_t>(r * 4 + c)];
            tuples.push_back(DistanceTuple{{r, c}, {row[0], row[1], row[2], 18 - row[3]}});
        }
    }
    return tuples;
}

inline DistanceTuple dt(int row, int col, std::vector<dist2_t> scores) {
    return DistanceTuple{{row, col}, std::move(scores)};
}

// Two-dimensional point set around the worked filter example: the three
// partial-skyline points (2,2), (1,6), (7,1) plus dominated company.
inline std::vector<DistanceTuple> fig4_points() {
    return {dt(0, 0, {2, 2}), dt(0, 1, {1, 6}), dt(0, 2, {7, 1}), dt(1, 0, {3, 5}),
            dt(1, 1, {5, 3}), dt(1, 2, {6, 6}), dt(2, 0, {4, 2})};
}

struct TestRng {
    std::uint64_t state;

    explicit TestRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() { return areasky::detail::splitmix64(state); }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

enum class Density { SingleCell, OnePerRow, TenPercent, Full };

inline GridMap random_map(std::uint64_t seed, int k, int n, Density density) {
    TestRng rng(seed);
    std::vector<FacilityType> types;
    for (int j = 0; j < n; ++j) {
        const bool undes = j == n - 1 && n > 1;
        types.push_back(FacilityType{j, "F" + std::to_string(j),
                                     undes ? Polarity::Undesirable : Polarity::Desirable});
    }
    std::vector<std::vector<GridId>> placements(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        auto& layer = placements[static_cast<std::size_t>(j)];
        switch (density) {
            case Density::SingleCell:
                layer.push_back({rng.range(0, k - 1), rng.range(0, k - 1)});
                break;
            case Density::OnePerRow:
                for (int r = 0; r < k; ++r) layer.push_back({r, rng.range(0, k - 1)});
                break;
            case Density::TenPercent: {
                const int count = std::max(1, k * k / 10);
                for (int i = 0; i < count; ++i)
                    layer.push_back({rng.range(0, k - 1), rng.range(0, k - 1)});
                break;
            }
            case Density::Full:
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c) layer.push_back({r, c});
                break;
        }
    }
    return areasky::make_grid_map(k, std::move(types), std::move(placements));
}

inline std::vector<DistanceTuple> random_tuples(std::uint64_t seed, int count, int dims,
                                                dist2_t max_value) {
    TestRng rng(seed);
    std::vector<DistanceTuple> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        DistanceTuple t;
        t.grid = {i / 1000, i % 1000};
        t.scores.resize(static_cast<std::size_t>(dims));
        for (auto& s : t.scores)
            s = static_cast<dist2_t>(rng.below(static_cast<std::uint64_t>(max_value) + 1));
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace fixtures

#endif  // AREASKY_TESTS_FIXTURES_HPP
