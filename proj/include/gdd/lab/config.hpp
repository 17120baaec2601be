#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdd/decoder.hpp"
#include "gdd/signals.hpp"
#include "gdd/spectrum.hpp"

namespace gdd::lab {

struct GraphSource {
    enum class Kind { sbm, edge_list };
    Kind kind = Kind::sbm;
    graph::SbmConfig sbm;  ///< sbm.seed is overridden by the experiment seed unless set explicitly
    bool explicit_seed = false;
    bool resample = false;  ///< draw a fresh SBM per trial
    std::vector<std::filesystem::path> paths;  ///< edge-list files, trial t uses paths[t % size]
};

struct SignalSource {
    graph::SignalModel model;
    std::optional<std::filesystem::path> file;  ///< fixed signal read from disk instead of a model
};

/// One compared estimator.
struct MethodSpec {
    enum class Kind { decoder, bandlimited };
    std::string name;
    Kind kind = Kind::decoder;

    // decoder
    coarsen::Variant variant = coarsen::Variant::wei;
    coarsen::Linkage linkage = coarsen::Linkage::average;
    double gamma = 0.5;
    std::vector<int> widths{3, 3, 3, 3, 3, 1};
    std::vector<int> sizes;  ///< empty: coarsen::default_sizes(n, L, n0)
    int n0 = 4;
    decoder::Activation hidden = decoder::Activation::relu;
    decoder::Activation output = decoder::Activation::identity;
    bool rescale_last = false;
    int iters = 3000;
    double learning_rate = 5e-3;
    std::optional<double> tolerance;

    // bandlimited
    int bandwidth = 0;  ///< 0: parameter count of the first decoder method
    graph::ShiftOperator shift = graph::ShiftOperator::laplacian;

    decoder::Architecture architecture(int n) const;
    decoder::FitConfig fit_config(std::uint64_t seed) const;
};

struct ExperimentConfig {
    GraphSource graph;
    SignalSource signal;
    std::vector<double> noise{0.0, 0.025, 0.05, 0.1, 0.2, 0.3};
    std::vector<MethodSpec> methods;
    int trials = 50;
    std::uint64_t seed = 1;
    int threads = 1;  ///< 0: hardware concurrency
    bool record_timing = false;
    std::filesystem::path base_dir;  ///< relative paths are resolved against this

    void validate() const;
};

/// Parses and validates a config document; relative file paths are resolved
/// against base_dir. Throws gdd::DataError.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace gdd::lab
