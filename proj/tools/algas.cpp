#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "algas/default_rules_text.hpp"
#include "algas/scenario.hpp"
#include "algas/trace.hpp"

namespace {

using namespace algas;

// Auditable per-tick fixed-point operation accounting for the bench report.
// Multiplies, adds, compares, min/max, and shifts each count as one op.
// Per corner:
//   FIR        2 filters x (15 mul + 15 add + shift + clamp)      = 64
//   PMU        2 pushes + amortized frame stats (~170 ops / 16)   = 13
//   fuzzify    2 channels x 4 trapezoids x 4 ops                  = 32
//   infer      16 rules x (min + 2 weight mul/shift pairs)        = 80
//   defuzzify  256 points x (4 min/max pairs + MAC) + divide      = 2561
//   FRU        4 rows x ~4 mask/threshold ops + degree mapping    = 20
//   fusion     priority select + mean                             = 4
inline constexpr std::uint64_t kOpsPerCornerTick = 64 + 13 + 32 + 80 + 2561 + 20 + 4;
// Plus the tick barrier: 2 pair checks (~3 ops) and alarm aggregation.
inline constexpr std::uint64_t kOpsPerTick = 4 * kOpsPerCornerTick + 2 * 3 + 10;

std::string dirname_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

void print_diagnostics(const std::string& file, const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        std::cerr << format_diagnostic(file, d) << '\n';
    }
}

int cmd_run(const std::string& config_path, const std::string& trace_path,
            std::optional<std::uint64_t> seed_override, bool parallel) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << config_path << ": cannot open config file\n";
        return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();
    const auto parsed = parse_scenario_config(text.str());
    if (!parsed.config) {
        for (const auto& e : parsed.errors) std::cerr << config_path << ": " << e << '\n';
        return 1;
    }
    auto loaded = load_rules_for_config(*parsed.config, dirname_of(config_path));
    print_diagnostics(parsed.config->rules_path == "default" ? "<builtin>"
                                                             : parsed.config->rules_path,
                      loaded.diagnostics);
    if (!loaded.compiled) return 1;
    auto rules = std::make_shared<const CompiledRules>(std::move(*loaded.compiled));

    RunOptions options;
    options.parallel = parallel;
    options.seed_override = seed_override;
    SystemTrace trace;
    const auto start = std::chrono::steady_clock::now();
    try {
        trace = run_scenario(*parsed.config, rules, options);
    } catch (const std::invalid_argument& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return 1;
    }
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();

    if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) {
            std::cerr << trace_path << ": cannot open trace output\n";
            return 1;
        }
        write_trace_csv(out, trace, *rules);
    }
    const RunSummary summary = summarize(trace);
    std::cout << format_summary(summary, seconds);
    return summary.any_safety_alarm ? 2 : 0;
}

int cmd_check_rules(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << path << ": cannot open rules file\n";
        return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();
    const auto result = load_rules(text.str());
    print_diagnostics(path, result.diagnostics);
    if (!result.compiled) return 1;
    if (result.compiled->table.rows.empty() && result.compiled->fls.rules.empty()) {
        std::cerr << path << ":1:1: warning: no rules in file\n";
    }
    return 0;
}

ScenarioConfig bench_config(std::uint64_t ticks) {
    ScenarioConfig config;
    config.profile.kind = ProfileSpec::Kind::Constant;
    config.profile.altitude = 800;
    config.radar_sigma = 8;
    config.lidar_sigma = 8;
    config.duration = ticks;
    config.seed = 12345;
    config.initial_modes = {"Landing-Mode"};
    return config;
}

int cmd_bench(std::uint64_t ticks, bool parallel) {
    auto loaded = load_rules(kDefaultRulesText);
    if (!loaded.compiled) {
        std::cerr << "built-in rulebase failed to compile\n";
        return 1;
    }
    auto rules = std::make_shared<const CompiledRules>(std::move(*loaded.compiled));
    const auto config = bench_config(ticks);
    RunOptions options;
    options.parallel = parallel;
    const auto start = std::chrono::steady_clock::now();
    const SystemTrace trace = run_scenario(config, rules, options);
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();
    const double tick_rate = static_cast<double>(ticks) / seconds;
    std::cout << "ticks:            " << ticks << '\n';
    std::cout << "wall time:        " << seconds << " s\n";
    std::cout << "ticks/second:     " << static_cast<std::uint64_t>(tick_rate) << '\n';
    std::cout << "samples/second:   " << static_cast<std::uint64_t>(tick_rate * 8) << '\n';
    std::cout << "ops/tick:         " << kOpsPerTick << " (documented fixed-point op count)\n";
    std::cout << "fixed-point op/s: "
              << static_cast<std::uint64_t>(tick_rate * static_cast<double>(kOpsPerTick)) << '\n';
    std::cout << "note: FPGA GOPS figures for the hardware ALGAS3 are synthesis results and are\n"
                 "      not comparable to this software model's throughput.\n";
    return trace.outputs.size() == ticks ? 0 : 1;
}

int cmd_selftest() {
    int failures = 0;
    auto check = [&](bool ok, const char* name) {
        std::cout << (ok ? "[ OK ] " : "[FAIL] ") << name << '\n';
        if (!ok) ++failures;
    };

    {  // FIR impulse and DC tracking
        FirFilter fir(kRadarWidth, FirMode::Functional);
        bool ok = true;
        for (int t = 0; t < 30; ++t) {
            const std::uint16_t x = t == 0 ? 1024 : 0;
            const auto out = fir.step(CrispSample::make(x, kRadarWidth)).sample.value;
            ok = ok && (out == (t < 15 ? 68 : 0));
        }
        FirFilter dc(kRadarWidth, FirMode::Functional);
        std::uint16_t last = 0;
        for (int t = 0; t < 40; ++t) {
            last = dc.step(CrispSample::make(1500, kRadarWidth)).sample.value;
        }
        check(ok && last == 1500, "fir impulse response and dc tracking");
    }
    {  // timed mode = functional shifted by 15
        FirFilter f(kRadarWidth, FirMode::Functional);
        FirFilter t(kRadarWidth, FirMode::Timed);
        std::vector<std::uint16_t> ref;
        bool ok = true;
        std::uint64_t state = 99;
        for (int i = 0; i < 500; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            const auto x = CrispSample::make(static_cast<std::uint32_t>(state >> 53), kRadarWidth);
            ref.push_back(f.step(x).sample.value);
            const auto timed = t.step(x).sample.value;
            if (i >= 15) ok = ok && timed == ref[static_cast<std::size_t>(i - 15)];
        }
        check(ok, "fir systolic timing (15-tick delay)");
    }
    auto loaded = load_rules(kDefaultRulesText);
    check(loaded.compiled.has_value() && !has_errors(loaded.diagnostics),
          "built-in rulebase compiles clean");
    if (!loaded.compiled) {
        std::cout << failures << " selftest failure(s)\n";
        return 1;
    }
    auto rules = std::make_shared<const CompiledRules>(std::move(*loaded.compiled));
    {  // FLS identities
        const auto gates = rules->fls.all_enabled();
        const auto zero = fls_step(CrispSample::make(0, kRadarWidth),
                                   CrispSample::make(0, kLidarWidth), rules->fls, gates);
        GateVector off(gates.size(), GateEntry{false, 0});
        const auto failsafe = fls_step(CrispSample::make(0, kRadarWidth),
                                       CrispSample::make(0, kLidarWidth), rules->fls, off);
        check(zero.value == 0 && failsafe.value == kFailSafeCommand,
              "fls hold centroid and fail-safe");
    }
    {  // PMU framing
        Pmu pmu;
        int verdicts = 0;
        bool divergent = false;
        for (int i = 0; i < 35; ++i) {
            const auto v = pmu.push(CrispSample::make(1000, kRadarWidth),
                                    CrispSample::make(700, kRadarWidth));
            if (v) {
                ++verdicts;
                divergent = v->classification != PmuClass::Nominal &&
                            v->stats.mean_abs_diff == 300;
            }
        }
        check(verdicts == 2 && divergent, "pmu tumbling frames and divergence stats");
    }
    {  // codec round-trip and corruption detection
        const HsdciFields fields{3, 7, 1024, 0};
        const auto frame = encode_frame(fields);
        auto decoded = decode_frame(frame);
        bool ok = decoded && *decoded == fields;
        auto corrupted = frame;
        corrupted[2] ^= 0x10;
        ok = ok && !decode_frame(corrupted);
        check(ok, "hsdci codec round-trip and checksum");
    }
    {  // serial/parallel determinism
        auto config = bench_config(128);
        RunOptions serial;
        RunOptions parallel;
        parallel.parallel = true;
        const auto a = run_scenario(config, rules, serial);
        const auto b = run_scenario(config, rules, parallel);
        std::ostringstream csv_a, csv_b;
        write_trace_csv(csv_a, a, *rules);
        write_trace_csv(csv_b, b, *rules);
        check(csv_a.str() == csv_b.str(), "serial and parallel runs byte-identical");
    }
    if (failures > 0) {
        std::cout << failures << " selftest failure(s)\n";
        return 1;
    }
    std::cout << "selftest passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ALGAS3 distributed landing-assistance processor model"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a scenario and emit trace + summary");
    std::string config_path;
    std::string trace_path;
    std::uint64_t seed = 0;
    bool parallel = false;
    run->add_option("--config", config_path, "Scenario config file")->required();
    run->add_option("--trace", trace_path, "Trace CSV output path");
    auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
    run->add_flag("--parallel", parallel, "Step the four corners concurrently");

    auto* check = app.add_subcommand("check-rules", "Compile a rule file and print diagnostics");
    std::string rules_path;
    check->add_option("file", rules_path, "Rule file")->required();

    auto* bench = app.add_subcommand("bench", "Measure pipeline throughput");
    std::uint64_t bench_ticks = 20000;
    bench->add_option("--ticks", bench_ticks, "Tick count")->check(CLI::PositiveNumber);
    bool bench_parallel = false;
    bench->add_flag("--parallel", bench_parallel, "Step the four corners concurrently");

    auto* selftest = app.add_subcommand("selftest", "Run the built-in oracle checks");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        std::optional<std::uint64_t> seed_override;
        if (seed_opt->count() > 0) seed_override = seed;
        return cmd_run(config_path, trace_path, seed_override, parallel);
    }
    if (check->parsed()) return cmd_check_rules(rules_path);
    if (bench->parsed()) return cmd_bench(bench_ticks, bench_parallel);
    if (selftest->parsed()) return cmd_selftest();
    return 1;
}
