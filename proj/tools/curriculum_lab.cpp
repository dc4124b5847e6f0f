// curriculum-lab command line: theorem verification, delta sweeps, policy
// races, and counterexample construction, all seeded and reproducible.
//
// Exit codes: 0 success, 1 verification/run failure, 2 usage or config error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "curriculum_lab/experiments.hpp"
#include "curriculum_lab/verify.hpp"

namespace cl = curriculum_lab;
namespace fs = std::filesystem;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::string out_dir = ".";
    std::string format = "csv";
};

cl::json load_config(const GlobalArgs& args) {
    if (args.config_path.empty()) return cl::json::object();
    std::ifstream in(args.config_path);
    if (!in) throw cl::config_error("cannot open config file: " + args.config_path);
    cl::json parsed;
    try {
        in >> parsed;
    } catch (const std::exception& e) {
        throw cl::config_error(std::string("malformed config: ") + e.what());
    }
    if (!parsed.is_object()) throw cl::config_error("config root must be an object");
    return parsed;
}

int default_jobs() {
    if (const char* env = std::getenv("CURRICULUM_LAB_JOBS")) {
        const int value = std::atoi(env);
        if (value >= 1) return value;
    }
    return 1;
}

// Flags win over the config file.
std::uint64_t resolve_seed(const GlobalArgs& args, const cl::json& config) {
    if (args.seed) return *args.seed;
    return config.value("seed", std::uint64_t{20260808});
}

int resolve_jobs(const GlobalArgs& args, const cl::json& config) {
    const int jobs = args.jobs ? *args.jobs : config.value("jobs", default_jobs());
    if (jobs < 1) throw cl::config_error("--jobs must be >= 1");
    return jobs;
}

void write_text_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cl::error("cannot open output file: " + path.string());
    out << contents;
}

// CSV files carry the bare schema; seed and config hash live in a sidecar.
void write_meta(const fs::path& dir, const char* name, std::uint64_t seed,
                std::uint64_t hash, std::size_t rows) {
    const cl::json meta = {{"seed", seed}, {"config_hash", cl::hash_hex(hash)}, {"rows", rows}};
    write_text_file(dir / name, meta.dump(2) + "\n");
}

int run_verify(const GlobalArgs& args) {
    const cl::json config = load_config(args);
    cl::VerifyConfig vcfg = cl::VerifyConfig::from_json(config.value("verify", cl::json::object()));
    if (args.seed) vcfg.seed = *args.seed;
    vcfg.jobs = resolve_jobs(args, config);
    const std::uint64_t hash = cl::fnv1a_hash(config.dump());

    const auto results = cl::run_all_criteria(vcfg);
    for (const auto& r : results) {
        const char* status = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
        std::printf("[%s] %2d %s — %s\n", status, r.id, r.name.c_str(), r.details.c_str());
    }
    const bool ok = cl::all_passed(results);
    std::printf("verify: %s (%zu criteria)\n", ok ? "all passed" : "FAILURES PRESENT",
                results.size());

    fs::create_directories(args.out_dir);
    const cl::json report = cl::verify_report_json(vcfg, hash, results);
    write_text_file(fs::path(args.out_dir) / "verify_report.json", report.dump(2) + "\n");
    return ok ? 0 : 1;
}

int run_sweep_cmd(const GlobalArgs& args) {
    const cl::json config = load_config(args);
    const auto cfg = cl::SweepConfig::from_json(config.value("sweep", cl::json::object()));
    const std::uint64_t seed = resolve_seed(args, config);
    const int jobs = resolve_jobs(args, config);
    const std::uint64_t hash = cl::fnv1a_hash(config.dump());

    const auto rows = cl::run_sweep(cfg, seed, jobs);
    fs::create_directories(args.out_dir);
    if (args.format == "csv") {
        std::ostringstream csv;
        cl::write_sweep_csv(csv, rows);
        write_text_file(fs::path(args.out_dir) / "sweep.csv", csv.str());
        write_meta(fs::path(args.out_dir), "sweep_meta.json", seed, hash, rows.size());
    } else {
        cl::json out = {{"seed", seed}, {"config_hash", cl::hash_hex(hash)},
                        {"rows", cl::json::array()}};
        for (const auto& row : rows) {
            cl::json jrow = {{"problem", row.problem},
                             {"psi", cl::checked_finite(row.psi, "psi")},
                             {"lambda_or_theta", row.lambda_or_theta},
                             {"eta", row.eta},
                             {"n", row.n},
                             {"method", row.method}};
            if (row.upsilon) jrow["upsilon"] = cl::checked_finite(*row.upsilon, "upsilon");
            if (row.delta_mc) jrow["delta_mc"] = cl::checked_finite(*row.delta_mc, "delta");
            if (row.delta_se) jrow["delta_se"] = cl::checked_finite(*row.delta_se, "se");
            if (row.delta_closed) {
                jrow["delta_closed"] = cl::checked_finite(*row.delta_closed, "closed delta");
            }
            out["rows"].push_back(jrow);
        }
        write_text_file(fs::path(args.out_dir) / "sweep.json", out.dump(2) + "\n");
    }
    std::printf("sweep: %zu rows written to %s\n", rows.size(), args.out_dir.c_str());
    return 0;
}

int run_race_cmd(const GlobalArgs& args) {
    const cl::json config = load_config(args);
    const auto cfg = cl::RaceConfig::from_json(config.value("race", cl::json::object()));
    const std::uint64_t seed = resolve_seed(args, config);
    const std::uint64_t hash = cl::fnv1a_hash(config.dump());

    cl::RaceOutput out = cl::run_race(cfg, seed);
    out.summary["config_hash"] = cl::hash_hex(hash);
    fs::create_directories(args.out_dir);
    std::ostringstream csv;
    cl::write_trajectory_csv(csv, out.trajectories);
    write_text_file(fs::path(args.out_dir) / "race_trajectories.csv", csv.str());
    write_text_file(fs::path(args.out_dir) / "race_summary.json", out.summary.dump(2) + "\n");
    std::printf("race: %zu trajectory rows, summary written to %s\n", out.trajectories.size(),
                args.out_dir.c_str());
    return 0;
}

int run_counterexample_cmd(const GlobalArgs& args) {
    const cl::json config = load_config(args);
    const auto cfg =
        cl::CounterexampleConfig::from_json(config.value("counterexample", cl::json::object()));
    const std::uint64_t seed = resolve_seed(args, config);
    const int jobs = resolve_jobs(args, config);
    const std::uint64_t hash = cl::fnv1a_hash(config.dump());

    cl::json report = cl::run_counterexample(cfg, seed, jobs);
    report["config_hash"] = cl::hash_hex(hash);
    if (!cl::validate_counterexample_report(report)) {
        throw cl::error("internal: counterexample report failed schema validation");
    }
    fs::create_directories(args.out_dir);
    write_text_file(fs::path(args.out_dir) / "counterexample.json", report.dump(2) + "\n");
    const bool verdict = report.at("verdict").get<bool>();
    std::printf("counterexample (%s): verdict %s\n", cfg.mode.c_str(),
                verdict ? "true" : "false");
    return verdict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curriculum-lab: difficulty-conditioned SGD convergence laboratory"};
    app.fallthrough();  // global flags may follow the subcommand
    app.require_subcommand(1);

    GlobalArgs args;
    args.jobs = std::nullopt;
    app.add_option("--config", args.config_path, "JSON config file");
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed override");
    int jobs_flag = 0;
    auto* jobs_opt = app.add_option("--jobs", jobs_flag, "worker threads for MC estimation");
    app.add_option("--out", args.out_dir, "output directory (default .)");
    app.add_option("--format", args.format, "sweep output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* verify_cmd = app.add_subcommand("verify", "run the full verification suite");
    auto* sweep_cmd = app.add_subcommand("sweep", "emit delta curves (MC + closed form)");
    auto* race_cmd = app.add_subcommand("race", "run policy races over a finite pool");
    auto* counter_cmd = app.add_subcommand("counterexample", "construct negative-result witnesses");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*seed_opt) args.seed = seed_flag;
    if (*jobs_opt) args.jobs = jobs_flag;

    try {
        if (verify_cmd->parsed()) return run_verify(args);
        if (sweep_cmd->parsed()) return run_sweep_cmd(args);
        if (race_cmd->parsed()) return run_race_cmd(args);
        if (counter_cmd->parsed()) return run_counterexample_cmd(args);
        return 2;
    } catch (const cl::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const cl::contract_error& e) {
        std::fprintf(stderr, "precondition error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
