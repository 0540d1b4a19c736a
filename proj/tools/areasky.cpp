// areasky: generate maps, run the distance transform and the area-skyline
// pipeline, verify against brute-force oracles, and benchmark all variants.
//
// Exit codes: 0 success, 1 correctness failure, 2 usage error.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "areasky/bench.hpp"
#include "areasky/datagen.hpp"
#include "areasky/edt.hpp"
#include "areasky/model.hpp"
#include "areasky/pipeline.hpp"
#include "areasky/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCorrectness = 1;
constexpr int kExitUsage = 2;

areasky::GridMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--map", "cannot open map file: " + path);
    return areasky::parse_map(in);
}

struct GenArgs {
    std::string preset;
    double scale = 1.0;
    int k = 0;
    int n = 0;
    int undesirable = 1;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenArgs& args) {
    areasky::DatasetSpec spec;
    if (!args.preset.empty()) {
        if (args.preset.size() != 1)
            throw CLI::ValidationError("--preset", "expected a single letter A..H");
        spec = areasky::preset(args.preset[0], args.scale, args.seed);
        spec.undesirable = args.undesirable;
    } else {
        if (args.k < 1 || args.n < 1)
            throw CLI::ValidationError("gen", "need --preset or both --k and --n");
        spec = areasky::DatasetSpec{"custom", args.k, args.n, args.undesirable, args.seed};
    }
    const areasky::GridMap map = areasky::generate(spec);
    auto out = areasky::open_output_file(args.out);
    areasky::serialize_map(out, map);
    std::cout << "wrote " << args.out << " (k=" << map.k << ", n=" << map.type_count()
              << ", seed=" << spec.seed << ")\n";
    return kExitOk;
}

int run_edt(const std::string& map_path, const std::string& prefix) {
    const areasky::GridMap map = load_map(map_path);
    map.validate();
    for (int t = 0; t < map.type_count(); ++t) {
        const areasky::DistanceField field = areasky::edt(map, t);
        const std::string path = prefix + std::to_string(t) + ".csv";
        auto out = areasky::open_output_file(path);
        areasky::write_distance_field_csv(out, field);
        std::cout << "wrote " << path << " (type " << t << " '"
                  << map.types[static_cast<std::size_t>(t)].name << "')\n";
    }
    return kExitOk;
}

struct SkylineArgs {
    std::string map_path;
    std::string variant = "p-sfs";
    int workers = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::string timings;
};

int run_skyline(const SkylineArgs& args) {
    const areasky::GridMap map = load_map(args.map_path);
    map.validate();
    areasky::VariantSpec variant = areasky::VariantSpec::parse(args.variant);
    variant.workers = args.workers;
    variant.seed = args.seed;

    const areasky::PipelineResult result = areasky::run_pipeline(map, variant);
    if (!args.out.empty()) {
        auto out = areasky::open_output_file(args.out);
        areasky::write_skyline_csv(out, result.skyline, map);
    }
    if (!args.timings.empty()) {
        auto out = areasky::open_output_file(args.timings);
        areasky::write_stages_csv(out, variant.name(), result.report);
    }
    std::cout << "variant " << variant.name() << " k=" << map.k << " workers="
              << variant.workers << ": skyline size " << result.skyline.size() << ", "
              << areasky::detail::fixed3(result.report.total_wall_ms) << " ms total\n";
    return kExitOk;
}

int run_verify(const std::string& map_path, int workers, int oracle_cap) {
    const areasky::GridMap map = load_map(map_path);
    const areasky::VerifyReport report = areasky::verify_map(map, workers, oracle_cap);
    std::cout << (report.pass ? "PASS" : "FAIL") << ": " << report.detail
              << " (skyline size " << report.skyline_size << ")\n";
    return report.pass ? kExitOk : kExitCorrectness;
}

struct BenchArgs {
    std::string presets = "A,B,C,D,E";
    double scale = 1.0;
    int repetitions = 1;
    int workers = 1;
    std::uint64_t seed = 0;
    int oracle_cap = areasky::kDefaultOracleCap;
    std::string out = "bench.csv";
    std::string stages = "bench_stages.csv";
};

int run_bench(const BenchArgs& args) {
    areasky::BenchOptions opts;
    opts.repetitions = args.repetitions;
    opts.workers = args.workers;
    opts.oracle_cap = args.oracle_cap;
    std::stringstream names(args.presets);
    std::string token;
    while (std::getline(names, token, ',')) {
        if (token.empty()) continue;
        if (token.size() != 1)
            throw CLI::ValidationError("--presets", "expected letters A..H, got '" + token + "'");
        opts.datasets.push_back(areasky::preset(token[0], args.scale, args.seed));
    }
    if (opts.datasets.empty()) throw CLI::ValidationError("--presets", "no presets given");

    const areasky::BenchResult result = areasky::bench_suite(opts);
    {
        auto out = areasky::open_output_file(args.out);
        areasky::write_bench_csv(out, result);
    }
    {
        auto out = areasky::open_output_file(args.stages);
        areasky::write_bench_stages_csv(out, result);
    }
    std::cout << "wrote " << args.out << " (" << result.rows.size() << " rows) and "
              << args.stages << " (" << result.stage_rows.size() << " stage rows)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "areasky: parallel area-skyline computation on grid maps\n"
        "Environment: AREASKY_WORKERS overrides default worker counts,\n"
        "AREASKY_ORACLE_CAP overrides the verify/bench oracle size cap."};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic map file");
    gen_cmd->add_option("--preset", gen.preset, "dataset preset A..H");
    gen_cmd->add_option("--scale", gen.scale, "grid-size scale factor in (0,1]")
        ->default_val(1.0);
    gen_cmd->add_option("--k", gen.k, "custom grid side (alternative to --preset)");
    gen_cmd->add_option("--n", gen.n, "custom facility type count");
    gen_cmd->add_option("--undesirable", gen.undesirable, "trailing undesirable type count")
        ->default_val(1);
    gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->default_val(0);
    gen_cmd->add_option("--out", gen.out, "output map file")->required();

    std::string edt_map, edt_prefix = "edt_";
    auto* edt_cmd = app.add_subcommand("edt", "exact distance transform, one CSV per type");
    edt_cmd->add_option("--map", edt_map, "input map file")->required();
    edt_cmd->add_option("--out-prefix", edt_prefix,
                        "per-type CSV prefix (files <prefix><type>.csv)")
        ->default_val("edt_");

    SkylineArgs sky;
    auto* sky_cmd = app.add_subcommand("skyline", "run one pipeline variant");
    sky_cmd->add_option("--map", sky.map_path, "input map file")->required();
    sky_cmd->add_option("--variant", sky.variant, "{e,p}-{bnl,sfs,skymr}")
        ->default_val("p-sfs");
    sky_cmd->add_option("--workers", sky.workers, "logical worker count")
        ->envname("AREASKY_WORKERS")
        ->default_val(1);
    sky_cmd->add_option("--seed", sky.seed, "sampling seed (SKY-MR)")->default_val(0);
    sky_cmd->add_option("--out", sky.out, "skyline CSV path");
    sky_cmd->add_option("--timings", sky.timings, "per-stage timing CSV path");

    std::string verify_map_path;
    int verify_workers = 1;
    int verify_cap = areasky::kDefaultOracleCap;
    auto* verify_cmd =
        app.add_subcommand("verify", "diff transform and all variants against oracles");
    verify_cmd->add_option("--map", verify_map_path, "input map file")->required();
    verify_cmd->add_option("--workers", verify_workers, "logical worker count")
        ->envname("AREASKY_WORKERS")
        ->default_val(1);
    verify_cmd->add_option("--oracle-cap", verify_cap, "max k the oracle will accept")
        ->envname("AREASKY_ORACLE_CAP")
        ->default_val(areasky::kDefaultOracleCap);

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "run the six-variant benchmark suite");
    bench_cmd->add_option("--presets", bench.presets, "comma list of presets A..H")
        ->default_val("A,B,C,D,E");
    bench_cmd->add_option("--scale", bench.scale, "grid-size scale factor in (0,1]")
        ->default_val(1.0);
    bench_cmd->add_option("--reps", bench.repetitions, "repetitions per variant")
        ->default_val(1);
    bench_cmd->add_option("--workers", bench.workers, "logical worker count")
        ->envname("AREASKY_WORKERS")
        ->default_val(1);
    bench_cmd->add_option("--seed", bench.seed, "dataset seed")->default_val(0);
    bench_cmd->add_option("--oracle-cap", bench.oracle_cap,
                          "verify against the oracle when k is at most this")
        ->envname("AREASKY_ORACLE_CAP")
        ->default_val(areasky::kDefaultOracleCap);
    bench_cmd->add_option("--out", bench.out, "summary CSV path")->default_val("bench.csv");
    bench_cmd->add_option("--stages", bench.stages, "per-stage CSV path")
        ->default_val("bench_stages.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen);
        if (edt_cmd->parsed()) return run_edt(edt_map, edt_prefix);
        if (sky_cmd->parsed()) return run_skyline(sky);
        if (verify_cmd->parsed()) return run_verify(verify_map_path, verify_workers, verify_cap);
        if (bench_cmd->parsed()) return run_bench(bench);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const areasky::CorrectnessError& e) {
        std::cerr << "correctness failure: " << e.what() << "\n";
        return kExitCorrectness;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const areasky::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorrectness;
    }
    return kExitUsage;
}
