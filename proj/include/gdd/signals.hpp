#pragma once

#include <cstdint>

#include "gdd/graph.hpp"

namespace gdd::graph {

enum class SignalKind { linear_diffusion, median, bandlimited, constant };
enum class Distribution { gaussian, uniform };

/// Parameters of the synthetic graph-signal generators.
///
/// linear_diffusion: x = sum_{t<T} h_t A^t s with `sparsity` nonzeros in s.
/// median: a linear-diffusion draw passed through median_signal.
/// bandlimited: V_K c with c drawn from `coefficients` on the Laplacian basis.
/// A sparsity of 0 means max(1, round(0.15 n)).
struct SignalModel {
    SignalKind kind = SignalKind::linear_diffusion;
    int taps = 6;
    int sparsity = 0;
    Distribution coefficients = Distribution::gaussian;
    int bandwidth = 10;
};

int resolved_sparsity(const SignalModel& model, int n);

/// Linear diffusion of a sparse seed signal, normalised to unit l2 norm.
Vector diffusion_signal(const Graph& g, const SignalModel& model, std::uint64_t seed);

/// Same, with explicit taps h and seed signal s (no normalisation).
Vector diffusion_signal(const Graph& g, const Vector& taps, const Vector& seed_signal);

/// Per-node median of neighbour values, renormalised to unit norm.
/// Isolated nodes keep their own value; even counts take the midpoint.
Vector median_signal(const Graph& g, const Vector& base);

/// Unnormalised neighbour medians (the map median_signal normalises).
Vector neighbor_median(const Graph& g, const Vector& base);

/// Dispatch on model.kind; output is unit-norm for every kind.
Vector generate_signal(const Graph& g, const SignalModel& model, std::uint64_t seed);

struct NoisySignal {
    Vector noisy;
    double variance;  ///< per-entry sigma^2, R_ww = sigma^2 I
};

/// Adds i.i.d. Gaussian noise with per-entry variance noise_power / n, so
/// that E||w||^2 = noise_power.
NoisySignal add_noise(const Vector& x, double noise_power, std::uint64_t seed);

/// ||estimate - truth||^2 / ||truth||^2.
double normalized_error(const Vector& estimate, const Vector& truth);

}  // namespace gdd::graph
