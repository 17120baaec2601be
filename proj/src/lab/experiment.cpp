#include "gdd/lab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#include "gdd/error.hpp"
#include "gdd/lab/io.hpp"
#include "gdd/rng.hpp"

namespace gdd::lab {

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    return make_rng(seed, stream)();
}

namespace {

struct GraphSlot {
    graph::Graph graph;
    std::map<graph::ShiftOperator, graph::Spectrum> spectra;
    std::vector<std::shared_ptr<const coarsen::UpsamplingPlan>> plans;  ///< per method, null for baselines
    std::vector<decoder::Architecture> archs;
    std::vector<int> bandwidths;
};

using PlanKey = std::tuple<coarsen::Variant, coarsen::Linkage, double, std::vector<int>>;

int graph_index(const ExperimentConfig& cfg, int trial) {
    if (cfg.graph.kind == GraphSource::Kind::edge_list) return trial % static_cast<int>(cfg.graph.paths.size());
    return cfg.graph.resample ? trial : 0;
}

int graph_count(const ExperimentConfig& cfg) {
    if (cfg.graph.kind == GraphSource::Kind::edge_list)
        return std::min<int>(cfg.trials, static_cast<int>(cfg.graph.paths.size()));
    return cfg.graph.resample ? cfg.trials : 1;
}

graph::Graph make_graph(const ExperimentConfig& cfg, int index) {
    if (cfg.graph.kind == GraphSource::Kind::edge_list) return load_graph(cfg.graph.paths[index]);
    graph::SbmConfig sbm = cfg.graph.sbm;
    const std::uint64_t base = cfg.graph.explicit_seed ? sbm.seed : derive_seed(cfg.seed, {stream::graph});
    sbm.seed = cfg.graph.resample ? derive_seed(base, {stream::graph, static_cast<std::uint64_t>(index)}) : base;
    return graph::sbm_generate(sbm);
}

GraphSlot prepare(const ExperimentConfig& cfg, int index, std::size_t& plan_builds) {
    GraphSlot slot{make_graph(cfg, index), {}, {}, {}, {}};
    const int n = slot.graph.size();
    std::map<PlanKey, std::shared_ptr<const coarsen::UpsamplingPlan>> cache;
    int first_decoder_params = 0;

    for (const auto& m : cfg.methods) {
        if (m.kind != MethodSpec::Kind::decoder) {
            slot.plans.push_back(nullptr);
            slot.archs.emplace_back();
            continue;
        }
        decoder::Architecture arch = m.architecture(n);
        arch.validate();
        if (first_decoder_params == 0) first_decoder_params = static_cast<int>(decoder::parameter_count(arch));
        const PlanKey key{m.variant, m.linkage, m.gamma, arch.sizes};
        auto it = cache.find(key);
        if (it == cache.end()) {
            auto plan = std::make_shared<const coarsen::UpsamplingPlan>(
                coarsen::build_plan(slot.graph, arch.sizes, m.variant, m.gamma, m.linkage));
            ++plan_builds;
            it = cache.emplace(key, std::move(plan)).first;
        }
        slot.plans.push_back(it->second);
        slot.archs.push_back(std::move(arch));
    }

    for (const auto& m : cfg.methods) {
        if (m.kind != MethodSpec::Kind::bandlimited) {
            slot.bandwidths.push_back(0);
            continue;
        }
        int k = m.bandwidth > 0 ? m.bandwidth : first_decoder_params;
        if (k <= 0) throw DataError("config: " + m.name + ": bandwidth unset and no decoder method to match");
        slot.bandwidths.push_back(std::min(k, n));
        if (!slot.spectra.contains(m.shift)) slot.spectra.emplace(m.shift, graph::graph_spectrum(slot.graph, m.shift));
    }
    return slot;
}

struct TrialOutput {
    std::vector<TrialResult> rows;
    std::vector<TrialFailure> failures;
};

TrialOutput run_trial(const ExperimentConfig& cfg, const GraphSlot& slot, const graph::Vector* fixed_signal,
                      int trial) {
    using Clock = std::chrono::steady_clock;
    const auto t = static_cast<std::uint64_t>(trial);
    TrialOutput out;

    const graph::Vector x = fixed_signal != nullptr
                                ? *fixed_signal
                                : graph::generate_signal(slot.graph, cfg.signal.model,
                                                         derive_seed(cfg.seed, {stream::signal, t}));

    for (std::size_t j = 0; j < cfg.noise.size(); ++j) {
        const double power = cfg.noise[j];
        const auto noisy = graph::add_noise(x, power, derive_seed(cfg.seed, {stream::noise, t, j}));
        const std::uint64_t fit_seed = derive_seed(cfg.seed, {stream::fit, t, j});

        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            const MethodSpec& m = cfg.methods[mi];
            const auto start = Clock::now();
            try {
                graph::Vector estimate;
                int iters = 0;
                if (m.kind == MethodSpec::Kind::decoder) {
                    decoder::FitConfig fc = m.fit_config(fit_seed);
                    if (power > 0.0) fc.loss = {decoder::LossKind::weighted_mse, noisy.variance};
                    auto result = decoder::fit(noisy.noisy, *slot.plans[mi], slot.archs[mi], fc);
                    estimate = std::move(result.estimate);
                    iters = result.iterations;
                } else {
                    estimate = graph::bandlimited_fit(slot.spectra.at(m.shift), noisy.noisy, slot.bandwidths[mi])
                                   .estimate;
                }
                const double err = graph::normalized_error(estimate, x);
                if (!std::isfinite(err)) throw NumericalError("non-finite reconstruction error");
                double ms = 0.0;
                if (cfg.record_timing)
                    ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
                out.rows.push_back({m.name, trial, power, err, iters, ms});
            } catch (const std::exception& e) {
                out.failures.push_back({m.name, trial, power, e.what()});
            }
        }
    }
    return out;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultTable table;

    std::vector<GraphSlot> slots;
    for (int i = 0; i < graph_count(cfg); ++i) slots.push_back(prepare(cfg, i, table.plan_builds));

    std::optional<graph::Vector> fixed;
    if (cfg.signal.file) {
        fixed = load_signal(*cfg.signal.file);
        for (const auto& s : slots)
            if (fixed->size() != s.graph.size())
                throw DataError(cfg.signal.file->string() + ": signal length " + std::to_string(fixed->size()) +
                                " does not match graph size " + std::to_string(s.graph.size()));
    }

    std::vector<TrialOutput> outputs(static_cast<std::size_t>(cfg.trials));
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (int t = next++; t < cfg.trials; t = next++) {
            try {
                outputs[t] = run_trial(cfg, slots[graph_index(cfg, t)], fixed ? &*fixed : nullptr, t);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = cfg.trials;
            }
        }
    };
    int threads = cfg.threads == 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency())) : cfg.threads;
    threads = std::min(threads, cfg.trials);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    for (auto& o : outputs) {
        std::move(o.rows.begin(), o.rows.end(), std::back_inserter(table.rows));
        std::move(o.failures.begin(), o.failures.end(), std::back_inserter(table.failures));
    }

    std::map<std::string, std::size_t> order;
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) order[cfg.methods[i].name] = i;
    auto key = [&](const auto& r) { return std::tuple(order.at(r.method), r.noise_power, r.trial); };
    std::stable_sort(table.rows.begin(), table.rows.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    std::stable_sort(table.failures.begin(), table.failures.end(),
                     [&](const auto& a, const auto& b) { return key(a) < key(b); });
    return table;
}

}  // namespace gdd::lab
