#include "gdd/lab/config.hpp"

#include <fstream>
#include <set>

#include "gdd/error.hpp"

namespace gdd::lab {

using nlohmann::json;

decoder::Architecture MethodSpec::architecture(int n) const {
    const int layers = static_cast<int>(widths.size()) - 1;
    std::vector<int> s = sizes.empty() ? coarsen::default_sizes(n, layers, n0) : sizes;
    return decoder::Architecture::make(widths, std::move(s), hidden, output, rescale_last);
}

decoder::FitConfig MethodSpec::fit_config(std::uint64_t seed) const {
    decoder::FitConfig cfg;
    cfg.max_iters = iters;
    cfg.adam.learning_rate = learning_rate;
    cfg.seed = seed;
    cfg.tolerance = tolerance;
    return cfg;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw DataError("config: trials must be >= 1");
    if (threads < 0) throw DataError("config: threads must be >= 0");
    if (noise.empty()) throw DataError("config: noise grid must not be empty");
    for (double p : noise)
        if (!(p >= 0.0)) throw DataError("config: noise powers must be >= 0");
    if (methods.empty()) throw DataError("config: at least one method is required");
    std::set<std::string> names;
    for (const auto& m : methods) {
        if (m.name.empty()) throw DataError("config: every method needs a name");
        if (!names.insert(m.name).second) throw DataError("config: duplicate method name '" + m.name + "'");
        if (m.kind == MethodSpec::Kind::decoder) {
            if (m.iters < 0) throw DataError("config: " + m.name + ": iters must be >= 0");
            if (!(m.learning_rate > 0.0)) throw DataError("config: " + m.name + ": lr must be > 0");
            if (!(m.gamma >= 0.0 && m.gamma <= 1.0)) throw DataError("config: " + m.name + ": gamma must lie in [0, 1]");
            if (m.widths.size() < 2) throw DataError("config: " + m.name + ": need at least one layer");
        } else if (m.bandwidth < 0) {
            throw DataError("config: " + m.name + ": bandwidth must be >= 1");
        }
    }
    if (graph.kind == GraphSource::Kind::edge_list && graph.paths.empty())
        throw DataError("config: edge-list graph source needs at least one path");
}

namespace {

graph::SignalKind parse_signal_kind(const std::string& s) {
    if (s == "linear-diffusion" || s == "linear") return graph::SignalKind::linear_diffusion;
    if (s == "median") return graph::SignalKind::median;
    if (s == "bandlimited") return graph::SignalKind::bandlimited;
    if (s == "constant") return graph::SignalKind::constant;
    throw DataError("config: unknown signal kind '" + s + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
}

MethodSpec parse_method(const json& j) {
    MethodSpec m;
    m.name = j.at("name").get<std::string>();
    const std::string type = j.value("type", std::string("decoder"));
    if (type == "bandlimited") {
        m.kind = MethodSpec::Kind::bandlimited;
        m.bandwidth = j.value("bandwidth", 0);
        const std::string shift = j.value("shift", std::string("laplacian"));
        if (shift == "laplacian") m.shift = graph::ShiftOperator::laplacian;
        else if (shift == "adjacency") m.shift = graph::ShiftOperator::adjacency;
        else throw DataError("config: unknown shift operator '" + shift + "'");
        return m;
    }
    if (type != "decoder") throw DataError("config: unknown method type '" + type + "'");
    m.variant = coarsen::parse_variant(j.value("variant", std::string("wei")));
    m.linkage = coarsen::parse_linkage(j.value("linkage", std::string("average")));
    m.gamma = j.value("gamma", 0.5);
    if (j.contains("widths")) m.widths = j.at("widths").get<std::vector<int>>();
    if (j.contains("sizes") && !j.at("sizes").is_null()) m.sizes = j.at("sizes").get<std::vector<int>>();
    m.n0 = j.value("n0", 4);
    m.hidden = decoder::parse_activation(j.value("activation", std::string("relu")));
    m.output = decoder::parse_activation(j.value("output_activation", std::string("identity")));
    m.rescale_last = j.value("rescale_last", false);
    m.iters = j.value("iters", 3000);
    m.learning_rate = j.value("lr", 5e-3);
    if (j.contains("tolerance") && !j.at("tolerance").is_null()) m.tolerance = j.at("tolerance").get<double>();
    return m;
}

}  // namespace

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    try {
        ExperimentConfig cfg;
        cfg.base_dir = base_dir;

        const json& g = doc.at("graph");
        const std::string type = g.value("type", std::string("sbm"));
        if (type == "sbm") {
            cfg.graph.kind = GraphSource::Kind::sbm;
            cfg.graph.sbm.n = g.value("n", 256);
            cfg.graph.sbm.k = g.value("k", 4);
            cfg.graph.sbm.p_in = g.value("p_in", 0.15);
            cfg.graph.sbm.p_out = g.value("p_out", 2.25e-3);
            if (g.contains("seed")) {
                cfg.graph.sbm.seed = g.at("seed").get<std::uint64_t>();
                cfg.graph.explicit_seed = true;
            }
            cfg.graph.resample = g.value("resample", false);
        } else if (type == "edgelist") {
            cfg.graph.kind = GraphSource::Kind::edge_list;
            if (g.contains("path")) cfg.graph.paths.push_back(resolve(base_dir, g.at("path").get<std::string>()));
            if (g.contains("paths"))
                for (const auto& p : g.at("paths")) cfg.graph.paths.push_back(resolve(base_dir, p.get<std::string>()));
        } else {
            throw DataError("config: unknown graph type '" + type + "'");
        }

        const json& s = doc.at("signal");
        const std::string kind = s.value("kind", std::string("linear-diffusion"));
        if (kind == "file") {
            cfg.signal.file = resolve(base_dir, s.at("path").get<std::string>());
        } else {
            cfg.signal.model.kind = parse_signal_kind(kind);
            cfg.signal.model.taps = s.value("taps", 6);
            cfg.signal.model.sparsity = s.value("sparsity", 0);
            cfg.signal.model.bandwidth = s.value("bandwidth", 10);
            const std::string dist = s.value("distribution", std::string("gaussian"));
            if (dist == "gaussian") cfg.signal.model.coefficients = graph::Distribution::gaussian;
            else if (dist == "uniform") cfg.signal.model.coefficients = graph::Distribution::uniform;
            else throw DataError("config: unknown distribution '" + dist + "'");
        }

        if (doc.contains("noise")) cfg.noise = doc.at("noise").get<std::vector<double>>();
        cfg.trials = doc.value("trials", 50);
        cfg.seed = doc.value("seed", std::uint64_t{1});
        cfg.threads = doc.value("threads", 1);
        cfg.record_timing = doc.value("record_timing", false);
        for (const auto& m : doc.at("methods")) cfg.methods.push_back(parse_method(m));

        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw DataError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

}  // namespace gdd::lab
