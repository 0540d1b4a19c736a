/**
 * @file model.hpp
 * @brief Core domain types for area-skyline computation over grid maps.
 *
 * A map is a k-by-k grid with facilities of several typed layers placed on
 * grid cells. Each facility type is desirable (closer is better) or
 * undesirable (farther is better). Every grid gets one score per type; all
 * scores are squared Euclidean distances kept in exact integer arithmetic,
 * with undesirable dimensions reflected so that every dimension minimizes.
 */

#ifndef AREASKY_MODEL_HPP
#define AREASKY_MODEL_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace areasky {

/// Squared grid distance / normalized score. Exact integer, never floating.
using dist2_t = std::int64_t;

/// Largest squared distance between two cells of a k-by-k grid: 2*(k-1)^2.
constexpr dist2_t max_squared_distance(int k) {
    const dist2_t e = k - 1;
    return 2 * e * e;
}

enum class Polarity { Desirable, Undesirable };

struct FacilityType {
    int id = 0;              ///< dense index in [0, n)
    std::string name;        ///< short label, no whitespace
    Polarity polarity = Polarity::Desirable;

    friend bool operator==(const FacilityType&, const FacilityType&) = default;
};

/// Grid coordinate. Ordered lexicographically by (row, col).
struct GridId {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const GridId&, const GridId&) = default;
};

/**
 * @brief A k-by-k grid map with per-type facility placements.
 *
 * Construction via make_grid_map / parse_map enforces: k >= 1, at least one
 * type, dense unique type ids, in-bounds placements, sorted + deduplicated
 * placement lists. The "every layer nonempty" invariant is deliberately
 * deferred to validate(): distance-field construction reports an explicit
 * error for empty layers instead of hiding them at parse time.
 */
struct GridMap {
    int k = 0;
    std::vector<FacilityType> types;
    std::vector<std::vector<GridId>> placements;  ///< indexed by type id

    int type_count() const { return static_cast<int>(types.size()); }

    /// Throws std::invalid_argument if any facility layer has no placement.
    void validate() const {
        for (const auto& t : types) {
            if (placements[static_cast<std::size_t>(t.id)].empty()) {
                throw std::invalid_argument("facility layer '" + t.name +
                                            "' (id " + std::to_string(t.id) +
                                            ") has no placements");
            }
        }
    }

    friend bool operator==(const GridMap&, const GridMap&) = default;
};

/// Builds a GridMap, normalizing placements (sort + dedup) and checking
/// structural invariants. Throws std::invalid_argument on violation.
inline GridMap make_grid_map(int k, std::vector<FacilityType> types,
                             std::vector<std::vector<GridId>> placements) {
    if (k < 1) throw std::invalid_argument("grid side k must be >= 1");
    if (types.empty()) throw std::invalid_argument("at least one facility type required");
    if (placements.size() != types.size())
        throw std::invalid_argument("placements/type count mismatch");
    for (std::size_t j = 0; j < types.size(); ++j) {
        if (types[j].id != static_cast<int>(j))
            throw std::invalid_argument("facility type ids must be dense 0..n-1");
    }
    for (auto& layer : placements) {
        for (const GridId& g : layer) {
            if (g.row < 0 || g.row >= k || g.col < 0 || g.col >= k)
                throw std::invalid_argument("placement outside the k x k grid");
        }
        std::sort(layer.begin(), layer.end());
        layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    }
    return GridMap{k, std::move(types), std::move(placements)};
}

/**
 * @brief One grid's score vector, polarity-normalized to minimize convention.
 *
 * scores[j] is the squared distance to the nearest type-j facility for
 * desirable types, and Dmax2 - (squared distance) for undesirable ones.
 */
struct DistanceTuple {
    GridId grid;
    std::vector<dist2_t> scores;

    int dims() const { return static_cast<int>(scores.size()); }

    friend bool operator==(const DistanceTuple&, const DistanceTuple&) = default;
};

enum class DominanceResult { FirstDominates, SecondDominates, Incomparable, Equal };

namespace detail {
inline void require_same_dims(const DistanceTuple& a, const DistanceTuple& b) {
    if (a.scores.size() != b.scores.size())
        throw std::invalid_argument("dominance on tuples of different dimension");
}
}  // namespace detail

/**
 * @brief Pareto dominance under componentwise minimization.
 *
 * a dominates b iff a.scores <= b.scores in every component and < in at
 * least one. Equal tuples never dominate each other (both stay in a
 * skyline). Throws std::invalid_argument on dimension mismatch.
 */
inline bool dominates(const DistanceTuple& a, const DistanceTuple& b) {
    detail::require_same_dims(a, b);
    bool strict = false;
    for (std::size_t j = 0; j < a.scores.size(); ++j) {
        if (a.scores[j] > b.scores[j]) return false;
        if (a.scores[j] < b.scores[j]) strict = true;
    }
    return strict;
}

/// Classifies an ordered pair of tuples under the dominance relation.
inline DominanceResult compare(const DistanceTuple& a, const DistanceTuple& b) {
    detail::require_same_dims(a, b);
    bool a_better = false;
    bool b_better = false;
    for (std::size_t j = 0; j < a.scores.size(); ++j) {
        if (a.scores[j] < b.scores[j]) a_better = true;
        else if (a.scores[j] > b.scores[j]) b_better = true;
        if (a_better && b_better) return DominanceResult::Incomparable;
    }
    if (!a_better && !b_better) return DominanceResult::Equal;
    return a_better ? DominanceResult::FirstDominates : DominanceResult::SecondDominates;
}

/**
 * @brief Maps raw squared distances into the uniform minimize convention.
 *
 * Desirable dimensions pass through; undesirable ones are reflected to
 * Dmax2 - raw, which reverses their order while keeping scores nonnegative.
 * raw[j] must be the exact squared distance to the nearest type-j facility,
 * in [0, Dmax2]; values above Dmax2 are a contract violation.
 */
inline std::vector<dist2_t> normalize_scores(const std::vector<dist2_t>& raw,
                                             const std::vector<FacilityType>& types,
                                             int k) {
    if (raw.size() != types.size())
        throw std::invalid_argument("raw distance count does not match type count");
    const dist2_t dmax2 = max_squared_distance(k);
    std::vector<dist2_t> scores(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (raw[j] < 0 || raw[j] > dmax2)
            throw std::invalid_argument("raw squared distance out of [0, Dmax2]");
        scores[j] = types[j].polarity == Polarity::Desirable ? raw[j] : dmax2 - raw[j];
    }
    return scores;
}

/// Inverse of normalize_scores (reflection is an involution).
inline std::vector<dist2_t> denormalize_scores(const std::vector<dist2_t>& scores,
                                               const std::vector<FacilityType>& types,
                                               int k) {
    const dist2_t dmax2 = max_squared_distance(k);
    std::vector<dist2_t> raw(scores.size());
    for (std::size_t j = 0; j < scores.size(); ++j)
        raw[j] = types[j].polarity == Polarity::Desirable ? scores[j] : dmax2 - scores[j];
    return raw;
}

// ---------------------------------------------------------------------------
// Map file format (line-oriented text, '#' starts a comment):
//   map k=<int> n=<int>
//   facility <id> <name> <desirable|undesirable>     (n lines)
//   place <type_id> <row> <col>                      (any number of lines)
// Serialization is canonical (facilities by id, places sorted), so
// parse(serialize(m)) == m holds bit-exactly.
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("map parse error at line " + std::to_string(line) + ": " + what) {}
};

inline GridMap parse_map(std::istream& in) {
    int k = -1, n = -1;
    std::vector<FacilityType> types;
    std::vector<std::vector<GridId>> placements;
    std::vector<bool> seen_facility;
    bool header_seen = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank or comment-only line

        if (tag == "map") {
            if (header_seen) throw ParseError(lineno, "duplicate map header");
            std::string kv;
            while (ls >> kv) {
                if (kv.rfind("k=", 0) == 0) k = std::stoi(kv.substr(2));
                else if (kv.rfind("n=", 0) == 0) n = std::stoi(kv.substr(2));
                else throw ParseError(lineno, "unknown header field '" + kv + "'");
            }
            if (k < 1) throw ParseError(lineno, "missing or invalid k");
            if (n < 1) throw ParseError(lineno, "missing or invalid n");
            types.resize(static_cast<std::size_t>(n));
            placements.resize(static_cast<std::size_t>(n));
            seen_facility.assign(static_cast<std::size_t>(n), false);
            header_seen = true;
        } else if (tag == "facility") {
            if (!header_seen) throw ParseError(lineno, "facility before map header");
            int id;
            std::string name, pol;
            if (!(ls >> id >> name >> pol)) throw ParseError(lineno, "malformed facility line");
            if (id < 0 || id >= n) throw ParseError(lineno, "facility id out of range");
            if (seen_facility[static_cast<std::size_t>(id)])
                throw ParseError(lineno, "duplicate facility id");
            Polarity p;
            if (pol == "desirable") p = Polarity::Desirable;
            else if (pol == "undesirable") p = Polarity::Undesirable;
            else throw ParseError(lineno, "polarity must be desirable|undesirable");
            types[static_cast<std::size_t>(id)] = FacilityType{id, name, p};
            seen_facility[static_cast<std::size_t>(id)] = true;
        } else if (tag == "place") {
            if (!header_seen) throw ParseError(lineno, "place before map header");
            int id, row, col;
            if (!(ls >> id >> row >> col)) throw ParseError(lineno, "malformed place line");
            if (id < 0 || id >= n) throw ParseError(lineno, "place type id out of range");
            if (row < 0 || row >= k || col < 0 || col >= k)
                throw ParseError(lineno, "placement outside the grid");
            placements[static_cast<std::size_t>(id)].push_back({row, col});
        } else {
            throw ParseError(lineno, "unknown directive '" + tag + "'");
        }
    }
    if (!header_seen) throw ParseError(lineno, "missing map header");
    for (int j = 0; j < n; ++j) {
        if (!seen_facility[static_cast<std::size_t>(j)])
            throw ParseError(lineno, "facility " + std::to_string(j) + " never declared");
    }
    return make_grid_map(k, std::move(types), std::move(placements));
}

inline GridMap parse_map(const std::string& text) {
    std::istringstream in(text);
    return parse_map(in);
}

inline void serialize_map(std::ostream& out, const GridMap& map) {
    out << "map k=" << map.k << " n=" << map.type_count() << "\n";
    for (const auto& t : map.types) {
        out << "facility " << t.id << ' ' << t.name << ' '
            << (t.polarity == Polarity::Desirable ? "desirable" : "undesirable") << "\n";
    }
    for (const auto& t : map.types) {
        for (const GridId& g : map.placements[static_cast<std::size_t>(t.id)])
            out << "place " << t.id << ' ' << g.row << ' ' << g.col << "\n";
    }
}

inline std::string serialize_map(const GridMap& map) {
    std::ostringstream out;
    serialize_map(out, map);
    return out.str();
}

}  // namespace areasky

#endif  // AREASKY_MODEL_HPP
