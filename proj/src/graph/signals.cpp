#include "gdd/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gdd/error.hpp"
#include "gdd/rng.hpp"
#include "gdd/spectrum.hpp"

namespace gdd::graph {

namespace {

double draw(Distribution d, Rng& rng) {
    if (d == Distribution::gaussian) return std::normal_distribution<double>(0.0, 1.0)(rng);
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

Vector unit(Vector x) {
    const double norm = x.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NumericalError("generated signal has zero or non-finite norm");
    return x / norm;
}

}  // namespace

int resolved_sparsity(const SignalModel& model, int n) {
    if (model.sparsity > 0) return model.sparsity;
    return std::max(1, static_cast<int>(std::lround(0.15 * n)));
}

Vector diffusion_signal(const Graph& g, const Vector& taps, const Vector& seed_signal) {
    if (seed_signal.size() != g.size())
        throw std::invalid_argument("diffusion_signal: seed signal length does not match graph");
    Vector out = Vector::Zero(g.size());
    Vector power = seed_signal;
    for (Eigen::Index t = 0; t < taps.size(); ++t) {
        if (t > 0) power = g.adjacency() * power;
        out += taps(t) * power;
    }
    return out;
}

Vector diffusion_signal(const Graph& g, const SignalModel& model, std::uint64_t seed) {
    const int n = g.size();
    if (model.taps < 1) throw std::invalid_argument("diffusion_signal: need at least one tap");
    const int sparsity = resolved_sparsity(model, n);
    if (sparsity > n) throw std::invalid_argument("diffusion_signal: sparsity exceeds node count");

    auto rng = make_rng(seed, {stream::signal});
    std::vector<int> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::shuffle(nodes.begin(), nodes.end(), rng);

    Vector s = Vector::Zero(n);
    for (int i = 0; i < sparsity; ++i) {
        double v = 0.0;
        while (v == 0.0) v = draw(model.coefficients, rng);
        s(nodes[i]) = v;
    }
    Vector h(model.taps);
    for (int t = 0; t < model.taps; ++t) h(t) = draw(model.coefficients, rng);

    return unit(diffusion_signal(g, h, s));
}

Vector neighbor_median(const Graph& g, const Vector& base) {
    if (base.size() != g.size())
        throw std::invalid_argument("median_signal: base length does not match graph");
    Vector out(g.size());
    std::vector<double> values;
    for (int i = 0; i < g.size(); ++i) {
        values.clear();
        for (int j : g.neighbors(i)) values.push_back(base(j));
        if (values.empty()) {
            out(i) = base(i);
            continue;
        }
        std::sort(values.begin(), values.end());
        const std::size_t m = values.size();
        out(i) = m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
    }
    return out;
}

Vector median_signal(const Graph& g, const Vector& base) { return unit(neighbor_median(g, base)); }

Vector generate_signal(const Graph& g, const SignalModel& model, std::uint64_t seed) {
    switch (model.kind) {
        case SignalKind::linear_diffusion:
            return diffusion_signal(g, model, seed);
        case SignalKind::median:
            return median_signal(g, diffusion_signal(g, model, seed));
        case SignalKind::bandlimited: {
            if (model.bandwidth < 1 || model.bandwidth > g.size())
                throw std::invalid_argument("bandlimited signal: bandwidth must lie in [1, n]");
            const Spectrum spec = graph_spectrum(g);
            auto rng = make_rng(seed, {stream::signal});
            Vector c(model.bandwidth);
            for (int k = 0; k < model.bandwidth; ++k) c(k) = draw(model.coefficients, rng);
            return unit(spec.eigenvectors.leftCols(model.bandwidth) * c);
        }
        case SignalKind::constant:
            return Vector::Constant(g.size(), 1.0 / std::sqrt(static_cast<double>(g.size())));
    }
    throw std::invalid_argument("unknown signal kind");
}

NoisySignal add_noise(const Vector& x, double noise_power, std::uint64_t seed) {
    if (!(noise_power >= 0.0)) throw std::invalid_argument("add_noise: noise power must be >= 0");
    const double variance = noise_power / static_cast<double>(x.size());
    NoisySignal out{x, variance};
    if (noise_power == 0.0) return out;
    auto rng = make_rng(seed, {stream::noise});
    std::normal_distribution<double> normal(0.0, std::sqrt(variance));
    for (Eigen::Index i = 0; i < x.size(); ++i) out.noisy(i) += normal(rng);
    return out;
}

double normalized_error(const Vector& estimate, const Vector& truth) {
    if (estimate.size() != truth.size())
        throw std::invalid_argument("normalized_error: length mismatch");
    const double denom = truth.squaredNorm();
    if (!(denom > 0.0)) throw std::invalid_argument("normalized_error: reference signal is zero");
    return (estimate - truth).squaredNorm() / denom;
}

}  // namespace gdd::graph
