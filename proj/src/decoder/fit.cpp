#include <cmath>
#include <stdexcept>

#include "gdd/decoder.hpp"
#include "gdd/error.hpp"

namespace gdd::decoder {

Adam::Adam(AdamConfig cfg, const DecoderParams& shape)
    : cfg_(cfg), m_(shape.zeros_like()), v_(shape.zeros_like()) {
    if (!(cfg_.learning_rate > 0.0)) throw std::invalid_argument("adam: learning rate must be > 0");
}

void Adam::step(DecoderParams& params, const DecoderParams& grads) {
    ++step_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_));
    auto update = [&](Matrix& p, const Matrix& g, Matrix& m, Matrix& v) {
        m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * g;
        v = cfg_.beta2 * v + (1.0 - cfg_.beta2) * g.cwiseAbs2();
        p.array() -= cfg_.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + cfg_.epsilon);
    };
    for (std::size_t k = 0; k < params.phis.size(); ++k)
        update(params.phis[k], grads.phis[k], m_.phis[k], v_.phis[k]);
    for (std::size_t k = 0; k < params.psis.size(); ++k)
        update(params.psis[k], grads.psis[k], m_.psis[k], v_.psis[k]);
}

FitResult fit(const Vector& observed, const UpsamplingPlan& plan, const Architecture& arch,
              const FitConfig& cfg) {
    if (cfg.max_iters < 0) throw std::invalid_argument("fit: max_iters must be >= 0");
    if (observed.size() != arch.output_size())
        throw std::invalid_argument("fit: signal length does not match the architecture");

    Initialization start = init(arch, plan, cfg.seed);
    FitResult out;
    out.params = std::move(start.params);
    out.latent = std::move(start.latent);
    out.loss_trace.reserve(static_cast<std::size_t>(cfg.max_iters));

    Adam adam(cfg.adam, out.params);
    ForwardCache cache;
    double previous = 0.0;
    for (int t = 0; t < cfg.max_iters; ++t) {
        const Vector estimate = forward(out.params, out.latent.z, plan, arch, &cache);
        const double loss = cfg.loss.value(estimate, observed);
        if (!std::isfinite(loss)) throw FitDivergence(static_cast<std::size_t>(t), loss);
        out.loss_trace.push_back(loss);

        const DecoderParams grads =
            backward(cache, out.params, plan, arch, cfg.loss.gradient(estimate, observed));
        adam.step(out.params, grads);
        out.iterations = t + 1;

        if (cfg.tolerance && t > 0 &&
            std::abs(loss - previous) < *cfg.tolerance * std::max(1.0, loss))
            break;
        previous = loss;
    }

    out.estimate = forward(out.params, out.latent.z, plan, arch);
    if (!out.estimate.allFinite())
        throw FitDivergence(static_cast<std::size_t>(out.iterations), out.estimate.squaredNorm());
    return out;
}

Vector denoise(const Vector& noisy, double variance, const UpsamplingPlan& plan,
               const Architecture& arch, FitConfig cfg) {
    if (!(variance > 0.0)) throw std::invalid_argument("denoise: noise variance must be > 0");
    cfg.loss = Loss{LossKind::weighted_mse, variance};
    return fit(noisy, plan, arch, cfg).estimate;
}

}  // namespace gdd::decoder
