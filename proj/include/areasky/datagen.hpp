/**
 * @file datagen.hpp
 * @brief Seeded synthetic grid-map generator (one facility per row per type).
 *
 * The generator is a pure function of its spec. The PRNG is SplitMix64
 * (increment 0x9E3779B97F4A7C15, finalizer constants 0xBF58476D1CE4E5B9 and
 * 0x94D049BB133111EB) so maps reproduce bit-identically across runs,
 * machines and language ports; columns are drawn as next() mod k.
 */

#ifndef AREASKY_DATAGEN_HPP
#define AREASKY_DATAGEN_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "areasky/model.hpp"
#include "areasky/skyline.hpp"  // detail::splitmix64

namespace areasky {

struct DatasetSpec {
    std::string name;       ///< "A".."H" or custom
    int k = 0;              ///< grid side
    int n = 0;              ///< facility type count
    int undesirable = 1;    ///< how many (trailing) types are undesirable
    std::uint64_t seed = 0;
};

/// Preset shapes: A..E have 3 types with k = 1000..5000; F/G/H have 4/5/6
/// types at k = 3000. scale in (0, 1] multiplies k (rounded).
inline DatasetSpec preset(char name, double scale, std::uint64_t seed = 0) {
    if (!(scale > 0.0) || scale > 1.0)
        throw std::invalid_argument("preset scale must be in (0, 1]");
    int k = 0, n = 0;
    switch (name) {
        case 'A': k = 1000; n = 3; break;
        case 'B': k = 2000; n = 3; break;
        case 'C': k = 3000; n = 3; break;
        case 'D': k = 4000; n = 3; break;
        case 'E': k = 5000; n = 3; break;
        case 'F': k = 3000; n = 4; break;
        case 'G': k = 3000; n = 5; break;
        case 'H': k = 3000; n = 6; break;
        default: throw std::invalid_argument("unknown preset (expected A..H)");
    }
    DatasetSpec spec;
    spec.name = std::string(1, name);
    spec.k = std::max(1, static_cast<int>(std::llround(scale * k)));
    spec.n = n;
    spec.seed = seed;
    return spec;
}

/// Generates the map: per type, exactly one facility per row at a uniformly
/// drawn column. The trailing `undesirable` types are undesirable, the rest
/// desirable.
inline GridMap generate(const DatasetSpec& spec) {
    if (spec.k < 1 || spec.n < 1) throw std::invalid_argument("dataset needs k >= 1, n >= 1");
    if (spec.undesirable < 0 || spec.undesirable > spec.n)
        throw std::invalid_argument("undesirable count out of [0, n]");

    std::vector<FacilityType> types;
    types.reserve(static_cast<std::size_t>(spec.n));
    for (int j = 0; j < spec.n; ++j) {
        const bool undes = j >= spec.n - spec.undesirable;
        types.push_back(FacilityType{j, "F" + std::to_string(j),
                                     undes ? Polarity::Undesirable : Polarity::Desirable});
    }

    std::uint64_t state = spec.seed;
    std::vector<std::vector<GridId>> placements(static_cast<std::size_t>(spec.n));
    for (int j = 0; j < spec.n; ++j) {
        auto& layer = placements[static_cast<std::size_t>(j)];
        layer.reserve(static_cast<std::size_t>(spec.k));
        for (int r = 0; r < spec.k; ++r) {
            const int col = static_cast<int>(detail::splitmix64(state) %
                                             static_cast<std::uint64_t>(spec.k));
            layer.push_back(GridId{r, col});
        }
    }
    return make_grid_map(spec.k, std::move(types), std::move(placements));
}

}  // namespace areasky

#endif  // AREASKY_DATAGEN_HPP
