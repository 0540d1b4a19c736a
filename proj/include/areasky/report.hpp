/**
 * @file report.hpp
 * @brief CSV emission for distance fields, skylines and stage timings.
 *
 * Skyline rows report RAW per-type squared distances (plus their square
 * roots to six decimals, matching the presentation convention); polarity
 * normalization is undone before writing. All writers are byte-deterministic
 * for a given input.
 */

#ifndef AREASKY_REPORT_HPP
#define AREASKY_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "areasky/edt.hpp"
#include "areasky/model.hpp"
#include "areasky/pipeline.hpp"
#include "areasky/skyline.hpp"

namespace areasky {

namespace detail {

inline std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace detail

/// `row,col,dist2,dist` for one facility type, row-major order.
inline void write_distance_field_csv(std::ostream& out, const DistanceField& field) {
    out << "row,col,dist2,dist\n";
    for (int r = 0; r < field.k; ++r) {
        for (int c = 0; c < field.k; ++c) {
            const dist2_t d2 = field.at(r, c);
            out << r << ',' << c << ',' << d2 << ','
                << detail::fixed6(std::sqrt(static_cast<double>(d2))) << "\n";
        }
    }
}

/// `row,col,d2_1..d2_n,d_1..d_n` sorted by (row, col); d2_j is the raw
/// squared distance to the nearest type-j facility.
inline void write_skyline_csv(std::ostream& out, const SkylineSet& skyline,
                              const GridMap& map) {
    const int n = map.type_count();
    out << "row,col";
    for (int j = 1; j <= n; ++j) out << ",d2_" << j;
    for (int j = 1; j <= n; ++j) out << ",d_" << j;
    out << "\n";
    for (const DistanceTuple& t : skyline.tuples) {
        const std::vector<dist2_t> raw = denormalize_scores(t.scores, map.types, map.k);
        out << t.grid.row << ',' << t.grid.col;
        for (dist2_t v : raw) out << ',' << v;
        for (dist2_t v : raw)
            out << ',' << detail::fixed6(std::sqrt(static_cast<double>(v)));
        out << "\n";
    }
}

/// `variant,stage,ms,in_count,out_count`, stages in execution order.
inline void write_stages_csv(std::ostream& out, const std::string& variant,
                             const StageReport& report) {
    out << "variant,stage,ms,in_count,out_count\n";
    for (const StageRecord& s : report.stages) {
        out << variant << ',' << s.stage << ',' << detail::fixed3(s.ms) << ',' << s.in_count
            << ',' << s.out_count << "\n";
    }
}

inline std::ofstream open_output_file(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace areasky

#endif  // AREASKY_REPORT_HPP
