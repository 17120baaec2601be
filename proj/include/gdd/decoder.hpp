#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gdd/coarsening.hpp"

namespace gdd::decoder {

using coarsen::UpsamplingPlan;
using graph::Matrix;
using graph::Vector;

enum class Activation { relu, identity };

/// Layer shapes of a graph deep decoder with L layers.
///
/// widths[l] = F_l and sizes[l] = N_l for l = 0..L; activations[l-1] is the
/// scalar nonlinearity of layer l. Layers 1..L-1 always carry the channel
/// rescale; layer L carries it only when rescale_last is set.
struct Architecture {
    std::vector<int> widths;
    std::vector<int> sizes;
    std::vector<Activation> activations;
    bool rescale_last = false;

    int layers() const noexcept { return static_cast<int>(widths.size()) - 1; }
    bool rescaled(int layer) const noexcept { return layer < layers() || rescale_last; }
    int output_size() const noexcept { return sizes.empty() ? 0 : sizes.back(); }

    /// Throws std::invalid_argument when shapes are inconsistent.
    void validate() const;

    /// ReLU on the hidden layers, identity on the output layer (signals are signed).
    static Architecture make(std::vector<int> widths, std::vector<int> sizes,
                             Activation hidden = Activation::relu,
                             Activation output = Activation::identity, bool rescale_last = false);
};

/// Trainable parameters. phis[l-1] is F_l x F_{l-1}; psis[l-1] is F_l x 2
/// (column 0 scale, column 1 shift) for rescaled layers and 0 x 2 otherwise.
struct DecoderParams {
    std::vector<Matrix> phis;
    std::vector<Matrix> psis;

    std::size_t count() const;
    DecoderParams zeros_like() const;
};

std::size_t parameter_count(const Architecture& arch);

/// Trainable parameter count divided by the output signal length.
double compression_ratio(const Architecture& arch);

/// Fixed random decoder input Z (N_0 x F_0), white across rows and columns.
struct LatentInput {
    Matrix z;
    std::uint64_t seed = 0;
};

/// Z with i.i.d. standard normal entries drawn from `seed`.
LatentInput make_latent(const Architecture& arch, std::uint64_t seed);

struct Initialization {
    DecoderParams params;
    LatentInput latent;
};

/// Phi entries ~ N(0, 1/F_{l-1}), psi = (1, 0) per channel, Z ~ N(0, 1).
/// Throws std::invalid_argument if arch does not match the plan.
Initialization init(const Architecture& arch, const UpsamplingPlan& plan, std::uint64_t seed);

/// Intermediates of one forward pass, per layer l = 1..L at index l-1.
struct ForwardCache {
    std::vector<Matrix> inputs;        ///< Y^(l-1)
    std::vector<Matrix> upsampled;     ///< U^(l) Y^(l-1)
    std::vector<Matrix> preact;        ///< U Y Phi^T
    std::vector<Matrix> standardized;  ///< column-standardised g(preact), rescaled layers only
    std::vector<Vector> inv_std;       ///< 1 / sqrt(var + eps) per column
    Vector output;
};

inline constexpr double kRescaleEpsilon = 1e-8;

/// Evaluates the decoder. When `cache` is non-null it receives every
/// intermediate needed by backward().
Vector forward(const DecoderParams& params, const Matrix& z, const UpsamplingPlan& plan,
               const Architecture& arch, ForwardCache* cache = nullptr);

/// Reverse-mode gradient of a scalar loss given dLoss/dx for the cached pass.
DecoderParams backward(const ForwardCache& cache, const DecoderParams& params,
                       const UpsamplingPlan& plan, const Architecture& arch, const Vector& grad_output);

enum class LossKind { mse, weighted_mse };

/// ||x_hat - x||^2, or ||x_hat - x||^2 / sigma^2 for R_ww = sigma^2 I.
struct Loss {
    LossKind kind = LossKind::mse;
    double variance = 1.0;

    double value(const Vector& estimate, const Vector& target) const;
    Vector gradient(const Vector& estimate, const Vector& target) const;
};

struct AdamConfig {
    double learning_rate = 5e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

class Adam {
public:
    Adam(AdamConfig cfg, const DecoderParams& shape);
    void step(DecoderParams& params, const DecoderParams& grads);

private:
    AdamConfig cfg_;
    DecoderParams m_;
    DecoderParams v_;
    long step_ = 0;
};

struct FitConfig {
    int max_iters = 3000;
    AdamConfig adam;
    Loss loss;
    std::uint64_t seed = 0;
    /// Stop early once |loss_t - loss_{t-1}| < tolerance * max(1, loss_t).
    std::optional<double> tolerance;
};

struct FitResult {
    Vector estimate;
    DecoderParams params;
    LatentInput latent;
    std::vector<double> loss_trace;
    int iterations = 0;
};

/// Fits the decoder to one observed signal from a seeded random start.
/// Throws gdd::FitDivergence if the loss becomes non-finite.
FitResult fit(const Vector& observed, const UpsamplingPlan& plan, const Architecture& arch,
              const FitConfig& cfg);

/// fit() with the noise-whitened loss; returns the estimate only.
Vector denoise(const Vector& noisy, double variance, const UpsamplingPlan& plan,
               const Architecture& arch, FitConfig cfg);

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view s);

}  // namespace gdd::decoder
