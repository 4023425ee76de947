#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lingam/bootstrap.hpp"
#include "lingam/direct_lingam.hpp"
#include "lingam/eval.hpp"
#include "lingam/ica_baseline.hpp"
#include "lingam/io.hpp"
#include "lingam/synth.hpp"

namespace {

using namespace lingam;

struct CsvFlags {
    bool no_header = false;
    bool variables_as_rows = false;

    io::CsvOptions options() const { return {!no_header, variables_as_rows}; }
};

void add_csv_flags(CLI::App* cmd, CsvFlags& flags) {
    cmd->add_flag("--no-header", flags.no_header, "CSV has no header row; labels become x1..xp");
    cmd->add_flag("--variables-as-rows", flags.variables_as_rows, "each CSV record is one variable");
}

std::string dump(const io::Json& doc) { return doc.dump(2) + "\n"; }

struct FitArgs {
    std::string input;
    std::string output;
    std::string method = "direct";
    std::uint64_t seed = 0;
    unsigned threads = 1;
    CsvFlags csv;
};

void run_fit(const FitArgs& args) {
    const Dataset data = io::load_csv(args.input, args.csv.options());
    io::ModelDocument doc;
    doc.estimator = std::string(to_string(parse_estimator(args.method)));
    doc.seed = args.seed;
    doc.labels = data.labels();
    if (doc.estimator == "direct") {
        FittedModel model = fit(data, {}, args.threads);
        doc.order = std::move(model.order);
        doc.strengths = std::move(model.strengths);
        doc.diagnostics = std::move(model.diagnostics);
    } else {
        FastIcaConfig cfg;
        cfg.seed = args.seed;
        BaselineModel model = ica_lingam_fit(data, cfg);
        doc.order = std::move(model.order);
        doc.strengths = std::move(model.strengths);
        doc.pruned = std::move(model.pruned);
        doc.converged = model.converged;
    }
    io::write_file_atomic(args.output, dump(io::to_json(doc)));

    std::cout << "order:";
    for (std::size_t v : doc.order) std::cout << ' ' << v + 1;
    std::cout << '\n' << io::strength_list(doc.order, doc.pruned ? *doc.pruned : doc.strengths);
}

struct SimulateArgs {
    SynthConfig cfg;
    std::string network = "random";
    std::string out_data;
    std::string out_truth;
};

void run_simulate(SimulateArgs args) {
    args.cfg.network = parse_network_kind(args.network);
    const SyntheticData sample = generate(args.cfg);
    io::write_file_atomic(args.out_data, io::to_csv(sample.data));
    io::write_file_atomic(args.out_truth, dump(io::truth_to_json(sample.truth, args.cfg, sample.data.labels())));
}

struct BenchmarkArgs {
    std::string grid;
    std::string out;
    std::string csv;
    bool summary = false;
    bool timings = false;
    unsigned threads = 1;
};

void run_benchmark_command(const BenchmarkArgs& args) {
    io::Json grid_doc;
    try {
        grid_doc = io::Json::parse(io::read_file(args.grid));
    } catch (const io::Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("grid is not valid JSON: ") + e.what());
    }
    const EvaluationReport report = run_benchmark(io::grid_from_json(grid_doc), args.threads);
    io::write_file_atomic(args.out, dump(io::report_to_json(report, args.timings)));
    if (!args.csv.empty()) io::write_file_atomic(args.csv, io::report_csv(report, args.timings));
    if (args.summary) std::cout << io::summary_table(report);
}

struct BootstrapArgs {
    std::string input;
    std::string model;
    std::string out;
    BootstrapConfig cfg;
    unsigned threads = 1;
    CsvFlags csv;
};

void run_bootstrap(const BootstrapArgs& args) {
    const Dataset data = io::load_csv(args.input, args.csv.options());
    io::Json model_doc;
    try {
        model_doc = io::Json::parse(io::read_file(args.model));
    } catch (const io::Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("model is not valid JSON: ") + e.what());
    }
    const io::ModelDocument model = io::model_from_json(model_doc);
    const BootstrapResult result = bootstrap_cis(data, model.order, args.cfg, args.threads);
    io::write_file_atomic(args.out, dump(io::edges_to_json(result, args.cfg, data.labels())));
    std::cout << io::edge_list(result.edges);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LiNGAM causal discovery: fit, simulate, benchmark, bootstrap"};
    app.set_version_flag("--version", std::string(io::kToolVersion));
    app.require_subcommand(1);

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "estimate causal order and connection strengths");
    fit_cmd->add_option("--input", fit_args.input, "data CSV")->required();
    fit_cmd->add_option("--output", fit_args.output, "model JSON to write")->required();
    fit_cmd->add_option("--method", fit_args.method, "direct or ica")->check(CLI::IsMember({"direct", "ica"}));
    fit_cmd->add_option("--seed", fit_args.seed, "seed for the ica estimator");
    fit_cmd->add_option("--threads", fit_args.threads, "worker threads")->check(CLI::PositiveNumber);
    add_csv_flags(fit_cmd, fit_args.csv);

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "generate a random LiNGAM dataset");
    sim_cmd->add_option("--p", sim_args.cfg.p, "variables")->required();
    sim_cmd->add_option("--n", sim_args.cfg.n, "observations")->required();
    sim_cmd->add_option("--network", sim_args.network, "dense, sparse or random")
        ->check(CLI::IsMember({"dense", "sparse", "random"}));
    sim_cmd->add_option("--seed", sim_args.cfg.seed, "random seed");
    sim_cmd->add_option("--out-data", sim_args.out_data, "data CSV to write")->required();
    sim_cmd->add_option("--out-truth", sim_args.out_truth, "ground-truth JSON to write")->required();

    BenchmarkArgs bench_args;
    auto* bench_cmd = app.add_subcommand("benchmark", "run the synthetic evaluation grid");
    bench_cmd->add_option("--grid", bench_args.grid, "grid JSON")->required();
    bench_cmd->add_option("--out", bench_args.out, "report JSON to write")->required();
    bench_cmd->add_option("--csv", bench_args.csv, "per-trial CSV to write");
    bench_cmd->add_flag("--summary", bench_args.summary, "print medians per cell");
    bench_cmd->add_flag("--timings", bench_args.timings, "include wall times (output no longer reproducible)");
    bench_cmd->add_option("--threads", bench_args.threads, "worker threads")->check(CLI::PositiveNumber);

    BootstrapArgs boot_args;
    auto* boot_cmd = app.add_subcommand("bootstrap", "percentile intervals for edges under a stored order");
    boot_cmd->add_option("--input", boot_args.input, "data CSV")->required();
    boot_cmd->add_option("--model", boot_args.model, "model JSON from fit")->required();
    boot_cmd->add_option("--out", boot_args.out, "edges JSON to write")->required();
    boot_cmd->add_option("--level", boot_args.cfg.level, "confidence level");
    boot_cmd->add_option("--resamples", boot_args.cfg.resamples, "bootstrap resamples");
    boot_cmd->add_option("--seed", boot_args.cfg.seed, "random seed");
    boot_cmd->add_option("--threads", boot_args.threads, "worker threads")->check(CLI::PositiveNumber);
    add_csv_flags(boot_cmd, boot_args.csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: InvalidArgument: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*fit_cmd) run_fit(fit_args);
        else if (*sim_cmd) run_simulate(sim_args);
        else if (*bench_cmd) run_benchmark_command(bench_args);
        else if (*boot_cmd) run_bootstrap(boot_args);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: InternalError: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
