// gdd: command-line front end for graph generation, upsampling plans, decoder
// fits and experiment runs.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdd/coarsening.hpp"
#include "gdd/decoder.hpp"
#include "gdd/error.hpp"
#include "gdd/graph.hpp"
#include "gdd/lab/experiment.hpp"
#include "gdd/lab/io.hpp"
#include "gdd/lab/results.hpp"
#include "gdd/params_io.hpp"
#include "gdd/plan_io.hpp"
#include "gdd/signals.hpp"

namespace {

using namespace gdd;
using lab::format_double;

constexpr int kUsage = 1;
constexpr int kDataError = 2;
constexpr int kNumerical = 3;

struct DecoderOptions {
    std::string graph;
    std::string variant = "wei";
    std::string linkage = "average";
    double gamma = 0.5;
    std::vector<int> widths{3, 3, 3, 3, 3, 1};
    std::vector<int> sizes;
    int n0 = 4;
    std::string activation = "relu";
    std::string output_activation = "identity";
    bool rescale_last = false;
    int iters = 3000;
    double lr = 5e-3;
    std::uint64_t seed = 0;
};

void add_plan_options(CLI::App* cmd, DecoderOptions& o) {
    cmd->add_option("--graph", o.graph, "edge-list file")->required();
    cmd->add_option("--variant", o.variant, "none|noa|bin|wei|regular")
        ->check(CLI::IsMember({"none", "noa", "bin", "wei", "regular"}))
        ->capture_default_str();
    cmd->add_option("--linkage", o.linkage, "single|complete|average")
        ->check(CLI::IsMember({"single", "complete", "average"}))
        ->capture_default_str();
    cmd->add_option("--gamma", o.gamma, "parent-copy weight")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    cmd->add_option("--widths", o.widths, "channel widths F_0..F_L")->delimiter(',')->capture_default_str();
    cmd->add_option("--sizes", o.sizes, "cluster counts N_0..N_L (default: geometric from --n0)")->delimiter(',');
    cmd->add_option("--n0", o.n0, "coarsest cluster count when --sizes is omitted")->capture_default_str();
}

void add_fit_options(CLI::App* cmd, DecoderOptions& o) {
    add_plan_options(cmd, o);
    cmd->add_option("--activation", o.activation, "hidden activation: relu|identity")->capture_default_str();
    cmd->add_option("--output-activation", o.output_activation, "last-layer activation")->capture_default_str();
    cmd->add_flag("--rescale-last", o.rescale_last, "apply channel rescaling on the output layer");
    cmd->add_option("--iters", o.iters, "Adam iterations")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--lr", o.lr, "Adam learning rate")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--seed", o.seed, "latent and weight seed")->capture_default_str();
}

decoder::Architecture architecture(const DecoderOptions& o, int n) {
    if (o.widths.size() < 2) throw std::invalid_argument("--widths needs at least two entries");
    const int layers = static_cast<int>(o.widths.size()) - 1;
    auto sizes = o.sizes.empty() ? coarsen::default_sizes(n, layers, o.n0) : o.sizes;
    auto arch = decoder::Architecture::make(o.widths, std::move(sizes), decoder::parse_activation(o.activation),
                                            decoder::parse_activation(o.output_activation), o.rescale_last);
    arch.validate();
    return arch;
}

coarsen::UpsamplingPlan plan_for(const graph::Graph& g, const DecoderOptions& o,
                                 const decoder::Architecture& arch) {
    return coarsen::build_plan(g, arch.sizes, coarsen::parse_variant(o.variant), o.gamma,
                               coarsen::parse_linkage(o.linkage));
}

void write_json(const nlohmann::json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

void report_size(const decoder::Architecture& arch) {
    std::cout << "parameters " << decoder::parameter_count(arch) << '\n'
              << "eta " << format_double(decoder::compression_ratio(arch)) << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Graph deep decoder toolkit"};
    app.require_subcommand(1);

    // gen-graph
    auto* gen = app.add_subcommand("gen-graph", "sample a stochastic block model graph");
    graph::SbmConfig sbm;
    std::string gen_out;
    gen->add_option("--n", sbm.n, "node count")->capture_default_str();
    gen->add_option("--k", sbm.k, "community count")->capture_default_str();
    gen->add_option("--pin", sbm.p_in, "within-community edge probability")->capture_default_str();
    gen->add_option("--pout", sbm.p_out, "cross-community edge probability")->capture_default_str();
    gen->add_option("--seed", sbm.seed, "graph seed")->capture_default_str();
    gen->add_option("--out", gen_out, "edge-list output")->required();

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "build an upsampling plan");
    DecoderOptions plan_opts;
    std::string plan_out;
    add_plan_options(plan_cmd, plan_opts);
    plan_cmd->add_option("--out", plan_out, "plan JSON output")->required();

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit a decoder to a signal");
    DecoderOptions fit_opts;
    std::string fit_signal, fit_out, fit_params;
    add_fit_options(fit_cmd, fit_opts);
    fit_cmd->add_option("--signal", fit_signal, "signal file")->required();
    fit_cmd->add_option("--out", fit_out, "reconstruction output");
    fit_cmd->add_option("--params", fit_params, "fitted parameters JSON output");

    // denoise
    auto* den_cmd = app.add_subcommand("denoise", "denoise a signal with a decoder");
    DecoderOptions den_opts;
    std::string den_signal, den_out;
    double den_variance = 0.0;
    add_fit_options(den_cmd, den_opts);
    den_cmd->add_option("--signal", den_signal, "noisy signal file")->required();
    den_cmd->add_option("--variance", den_variance, "per-entry noise variance")
        ->required()
        ->check(CLI::PositiveNumber);
    den_cmd->add_option("--out", den_out, "estimate output")->required();

    // compress
    auto* cmp_cmd = app.add_subcommand("compress", "encode a signal as decoder parameters");
    DecoderOptions cmp_opts;
    std::string cmp_signal, cmp_out;
    add_fit_options(cmp_cmd, cmp_opts);
    cmp_cmd->add_option("--signal", cmp_signal, "signal file")->required();
    cmp_cmd->add_option("--out", cmp_out, "parameters JSON output");

    // decode
    auto* dec_cmd = app.add_subcommand("decode", "regenerate a signal from stored parameters");
    DecoderOptions dec_opts;
    std::string dec_params, dec_out;
    add_plan_options(dec_cmd, dec_opts);
    dec_cmd->add_option("--params", dec_params, "parameters JSON")->required();
    dec_cmd->add_option("--out", dec_out, "signal output")->required();

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run an experiment config");
    std::string exp_config, exp_out;
    int exp_threads = -1;
    exp_cmd->add_option("--config", exp_config, "experiment JSON")->required();
    exp_cmd->add_option("--out", exp_out, "results (.csv or .json)")->required();
    exp_cmd->add_option("--threads", exp_threads, "override worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    if (gen->parsed()) {
        lab::save_graph(graph::sbm_generate(sbm), gen_out);
        return 0;
    }

    if (plan_cmd->parsed()) {
        const auto g = lab::load_graph(plan_opts.graph);
        const auto arch = architecture(plan_opts, g.size());
        coarsen::save_plan(plan_for(g, plan_opts, arch), plan_out);
        return 0;
    }

    if (fit_cmd->parsed() || cmp_cmd->parsed()) {
        const bool compress = cmp_cmd->parsed();
        const DecoderOptions& o = compress ? cmp_opts : fit_opts;
        const auto g = lab::load_graph(o.graph);
        const auto x = lab::load_signal(compress ? cmp_signal : fit_signal, g.size());
        const auto arch = architecture(o, g.size());
        const auto plan = plan_for(g, o, arch);
        decoder::FitConfig cfg;
        cfg.max_iters = o.iters;
        cfg.adam.learning_rate = o.lr;
        cfg.seed = o.seed;
        const auto result = decoder::fit(x, plan, arch, cfg);
        const std::string& params_path = compress ? cmp_out : fit_params;
        if (!params_path.empty())
            write_json(decoder::params_to_json(arch, result.params, result.latent.seed), params_path);
        if (!compress && !fit_out.empty()) lab::save_signal(result.estimate, fit_out);
        std::cout << "error " << format_double(graph::normalized_error(result.estimate, x)) << '\n'
                  << "iterations " << result.iterations << '\n';
        report_size(arch);
        return 0;
    }

    if (den_cmd->parsed()) {
        const auto g = lab::load_graph(den_opts.graph);
        const auto y = lab::load_signal(den_signal, g.size());
        const auto arch = architecture(den_opts, g.size());
        const auto plan = plan_for(g, den_opts, arch);
        decoder::FitConfig cfg;
        cfg.max_iters = den_opts.iters;
        cfg.adam.learning_rate = den_opts.lr;
        cfg.seed = den_opts.seed;
        lab::save_signal(decoder::denoise(y, den_variance, plan, arch, cfg), den_out);
        return 0;
    }

    if (dec_cmd->parsed()) {
        const auto g = lab::load_graph(dec_opts.graph);
        std::ifstream in(dec_params);
        if (!in) throw DataError("cannot open " + dec_params);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw DataError(dec_params + ": " + e.what());
        }
        const auto stored = decoder::params_from_json(doc);
        if (stored.arch.output_size() != g.size())
            throw DataError("stored decoder produces " + std::to_string(stored.arch.output_size()) +
                            " values, graph has " + std::to_string(g.size()) + " nodes");
        const auto plan = plan_for(g, dec_opts, stored.arch);
        lab::save_signal(decoder::decode(stored, plan), dec_out);
        return 0;
    }

    if (exp_cmd->parsed()) {
        auto cfg = lab::load_config(exp_config);
        if (exp_threads >= 0) cfg.threads = exp_threads;
        const auto table = lab::run_experiment(cfg);
        lab::emit(table, exp_out, lab::format_for(exp_out));
        for (const auto& f : table.failures)
            std::cerr << "failed: " << f.method << " trial " << f.trial << " noise " << format_double(f.noise_power)
                      << ": " << f.message << '\n';
        std::cout << table.rows.size() << " rows, " << table.failures.size() << " failures, " << table.plan_builds
                  << " plans built\n";
        return 0;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gdd::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const gdd::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
}
