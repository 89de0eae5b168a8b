#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "qswap/protocol.hpp"
#include "qswap/reports.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitInternal = 4;

qswap::OutputFormat pick_format(const std::string& flag) {
    if (flag == "table") return qswap::OutputFormat::Table;
    if (flag == "json") return qswap::OutputFormat::Json;
    if (flag == "csv") return qswap::OutputFormat::Csv;
    // auto: humans get a table, pipelines get JSON
    return isatty(fileno(stdout)) ? qswap::OutputFormat::Table : qswap::OutputFormat::Json;
}

int run_script(const std::string& path, const std::string& mode, std::uint64_t seed,
               std::uint64_t trials, qswap::OutputFormat fmt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open '" << path << "'\n";
        return kExitUsage;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    const qswap::ParseResult parsed = qswap::parse(buf.str());
    if (!parsed.ok()) {
        const qswap::ParseError& e = *parsed.error;
        std::cerr << path << ": line " << e.line << ", column " << e.column << ": " << e.message;
        if (!e.token.empty()) std::cerr << " (got '" << e.token << "')";
        std::cerr << "\n";
        return kExitParse;
    }
    const std::vector<qswap::SemanticError> issues = qswap::validate(*parsed.program);
    if (!issues.empty()) {
        for (const qswap::SemanticError& e : issues)
            std::cerr << path << ": line " << e.pos.line << ", column " << e.pos.column << ": "
                      << e.message << "\n";
        return kExitParse;
    }

    if (mode == "sampled") {
        std::cout << qswap::render(qswap::monte_carlo_program(*parsed.program, trials, seed), fmt);
    } else {
        std::cout << qswap::render(qswap::interpret(*parsed.program), fmt);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator for the two-singlet swapping experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "auto";
    app.add_option("--format", format, "Output format: table, json or csv")
        ->check(CLI::IsMember({"auto", "table", "json", "csv"}));

    auto* exp1 = app.add_subcommand("exp1", "Spin-z measurement on particles 2 and 3");
    auto* exp2 = app.add_subcommand("exp2", "Bell-operator measurement on particles 2 and 3");
    auto* decompose =
        app.add_subcommand("decompose", "Bell-basis expansion of the two-singlet state");

    auto* nosignal =
        app.add_subcommand("nosignal", "Outcome-averaged reduced states of particles 1 and 4");
    std::uint64_t sweep_count = 0;
    std::uint64_t nosignal_seed = qswap::kDefaultSeed;
    nosignal->add_option("--sweep", sweep_count, "Also check N random joint bases on (2,3)");
    nosignal->add_option("--seed", nosignal_seed, "Sweep RNG seed");

    auto* run = app.add_subcommand("run", "Parse and execute a .qproto protocol script");
    std::string script_path;
    std::string mode = "exhaustive";
    std::uint64_t run_seed = qswap::kDefaultSeed;
    std::uint64_t run_trials = 1;
    run->add_option("file", script_path, "Protocol script")->required();
    run->add_option("--mode", mode, "exhaustive (analytic branches) or sampled (Monte Carlo)")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    run->add_option("--seed", run_seed, "Base RNG seed for sampled mode");
    run->add_option("--trials", run_trials, "Trial count for sampled mode");

    auto* sampleCmd = app.add_subcommand("sample", "Monte Carlo run of a canned experiment");
    std::string which;
    std::uint64_t sample_seed = qswap::kDefaultSeed;
    std::uint64_t sample_trials = 0;
    sampleCmd->add_option("experiment", which, "exp1 or exp2")
        ->required()
        ->check(CLI::IsMember({"exp1", "exp2"}));
    sampleCmd->add_option("--trials", sample_trials, "Trial count")->required();
    sampleCmd->add_option("--seed", sample_seed, "Base RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    const qswap::OutputFormat fmt = pick_format(format);
    try {
        if (exp1->parsed()) {
            std::cout << qswap::render(qswap::run_experiment_1(), fmt);
        } else if (exp2->parsed()) {
            std::cout << qswap::render(qswap::run_experiment_2(), fmt);
        } else if (decompose->parsed()) {
            std::cout << qswap::render(qswap::bell_decompose_initial(), fmt);
        } else if (nosignal->parsed()) {
            std::optional<qswap::SweepInfo> sweep;
            if (sweep_count > 0)
                sweep = qswap::SweepInfo{nosignal_seed,
                                         qswap::no_signaling_sweep(sweep_count, nosignal_seed)};
            const qswap::NoSignalingReport report = qswap::no_signaling_report();
            switch (fmt) {
                case qswap::OutputFormat::Json: std::cout << qswap::to_json(report, sweep); break;
                case qswap::OutputFormat::Csv: std::cout << qswap::to_csv(report, sweep); break;
                case qswap::OutputFormat::Table: std::cout << qswap::to_table(report, sweep); break;
            }
        } else if (run->parsed()) {
            return run_script(script_path, mode, run_seed, run_trials, fmt);
        } else if (sampleCmd->parsed()) {
            const int id = which == "exp1" ? 1 : 2;
            std::cout << qswap::render(
                qswap::monte_carlo_experiment(id, sample_trials, sample_seed), fmt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
