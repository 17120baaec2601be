#include "gdd/decoder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gdd/rng.hpp"

namespace gdd::decoder {

void Architecture::validate() const {
    if (widths.empty()) throw std::invalid_argument("architecture: widths must not be empty");
    if (sizes.size() != widths.size())
        throw std::invalid_argument("architecture: widths and sizes must both have L + 1 entries");
    if (static_cast<int>(activations.size()) != layers())
        throw std::invalid_argument("architecture: need one activation per layer");
    for (int w : widths)
        if (w < 1) throw std::invalid_argument("architecture: feature widths must be positive");
    for (int s : sizes)
        if (s < 1) throw std::invalid_argument("architecture: node counts must be positive");
    if (widths.back() != 1)
        throw std::invalid_argument("architecture: the output layer must have a single feature");
}

Architecture Architecture::make(std::vector<int> widths, std::vector<int> sizes, Activation hidden,
                                Activation output, bool rescale_last) {
    Architecture a;
    a.widths = std::move(widths);
    a.sizes = std::move(sizes);
    const int layers = a.layers();
    for (int l = 1; l <= layers; ++l) a.activations.push_back(l == layers ? output : hidden);
    a.rescale_last = rescale_last;
    a.validate();
    return a;
}

std::size_t DecoderParams::count() const {
    std::size_t n = 0;
    for (const auto& m : phis) n += static_cast<std::size_t>(m.size());
    for (const auto& m : psis) n += static_cast<std::size_t>(m.size());
    return n;
}

DecoderParams DecoderParams::zeros_like() const {
    DecoderParams z;
    for (const auto& m : phis) z.phis.push_back(Matrix::Zero(m.rows(), m.cols()));
    for (const auto& m : psis) z.psis.push_back(Matrix::Zero(m.rows(), m.cols()));
    return z;
}

std::size_t parameter_count(const Architecture& arch) {
    std::size_t n = 0;
    for (int l = 1; l <= arch.layers(); ++l) {
        const std::size_t fl = arch.widths[l];
        const std::size_t fp = arch.widths[l - 1];
        n += fl * (fp + (arch.rescaled(l) ? 2 : 0));
    }
    return n;
}

double compression_ratio(const Architecture& arch) {
    arch.validate();
    return static_cast<double>(parameter_count(arch)) / arch.output_size();
}

LatentInput make_latent(const Architecture& arch, std::uint64_t seed) {
    auto rng = make_rng(seed, {stream::latent});
    std::normal_distribution<double> normal(0.0, 1.0);
    LatentInput in;
    in.seed = seed;
    in.z.resize(arch.sizes.front(), arch.widths.front());
    // Row-major fill order.
    for (Eigen::Index i = 0; i < in.z.rows(); ++i)
        for (Eigen::Index j = 0; j < in.z.cols(); ++j) in.z(i, j) = normal(rng);
    return in;
}

namespace {

void check_against_plan(const Architecture& arch, const UpsamplingPlan& plan) {
    arch.validate();
    if (arch.sizes != plan.sizes())
        throw std::invalid_argument("architecture node counts do not match the upsampling plan");
}

}  // namespace

Initialization init(const Architecture& arch, const UpsamplingPlan& plan, std::uint64_t seed) {
    check_against_plan(arch, plan);
    Initialization out;
    out.latent = make_latent(arch, seed);

    auto rng = make_rng(seed, {stream::weights});
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int l = 1; l <= arch.layers(); ++l) {
        const int fl = arch.widths[l];
        const int fp = arch.widths[l - 1];
        const double scale = 1.0 / std::sqrt(static_cast<double>(fp));
        Matrix phi(fl, fp);
        for (int i = 0; i < fl; ++i)
            for (int j = 0; j < fp; ++j) phi(i, j) = scale * normal(rng);
        out.params.phis.push_back(std::move(phi));

        Matrix psi(arch.rescaled(l) ? fl : 0, 2);
        if (psi.rows() > 0) {
            psi.col(0).setOnes();
            psi.col(1).setZero();
        }
        out.params.psis.push_back(std::move(psi));
    }
    return out;
}

Vector forward(const DecoderParams& params, const Matrix& z, const UpsamplingPlan& plan,
               const Architecture& arch, ForwardCache* cache) {
    const int layers = arch.layers();
    if (static_cast<int>(params.phis.size()) != layers || static_cast<int>(params.psis.size()) != layers)
        throw std::invalid_argument("forward: parameter list does not match the layer count");
    if (plan.levels() != layers || z.rows() != arch.sizes.front() || z.cols() != arch.widths.front())
        throw std::invalid_argument("forward: input shape does not match the architecture");

    ForwardCache local;
    ForwardCache& c = cache ? *cache : local;
    c.inputs.resize(layers);
    c.upsampled.resize(layers);
    c.preact.resize(layers);
    c.standardized.resize(layers);
    c.inv_std.resize(layers);

    Matrix y = z;
    for (int l = 1; l <= layers; ++l) {
        const int k = l - 1;
        const Matrix& phi = params.phis[k];
        if (phi.rows() != arch.widths[l] || phi.cols() != arch.widths[l - 1])
            throw std::invalid_argument("forward: Phi shape mismatch at layer " + std::to_string(l));

        c.upsampled[k].noalias() = plan.sparse_upsampler(l) * y;
        c.preact[k].noalias() = c.upsampled[k] * phi.transpose();
        c.inputs[k] = std::move(y);

        Matrix g = arch.activations[k] == Activation::relu ? Matrix(c.preact[k].cwiseMax(0.0))
                                                           : c.preact[k];
        if (arch.rescaled(l)) {
            const Matrix& psi = params.psis[k];
            if (psi.rows() != arch.widths[l] || psi.cols() != 2)
                throw std::invalid_argument("forward: psi shape mismatch at layer " + std::to_string(l));
            const double rows = static_cast<double>(g.rows());
            Vector& inv = c.inv_std[k];
            inv.resize(g.cols());
            for (Eigen::Index j = 0; j < g.cols(); ++j) {
                const double mean = g.col(j).mean();
                g.col(j).array() -= mean;
                inv(j) = 1.0 / std::sqrt(g.col(j).squaredNorm() / rows + kRescaleEpsilon);
                g.col(j) *= inv(j);
            }
            c.standardized[k] = g;
            y = g;
            for (Eigen::Index j = 0; j < y.cols(); ++j)
                y.col(j) = (psi(j, 0) * y.col(j).array() + psi(j, 1)).matrix();
        } else {
            c.standardized[k].resize(0, 0);
            c.inv_std[k].resize(0);
            y = std::move(g);
        }
    }
    c.output = y.col(0);
    return c.output;
}

DecoderParams backward(const ForwardCache& cache, const DecoderParams& params,
                       const UpsamplingPlan& plan, const Architecture& arch, const Vector& grad_output) {
    const int layers = arch.layers();
    if (static_cast<int>(cache.preact.size()) != layers || cache.output.size() != grad_output.size())
        throw std::invalid_argument("backward: cache does not match this architecture");

    DecoderParams grads = params.zeros_like();
    Matrix dy = grad_output;  // N_L x 1
    for (int l = layers; l >= 1; --l) {
        const int k = l - 1;
        Matrix dg;
        if (arch.rescaled(l)) {
            const Matrix& s = cache.standardized[k];
            const Matrix& psi = params.psis[k];
            const double rows = static_cast<double>(s.rows());
            dg.resize(s.rows(), s.cols());
            for (Eigen::Index j = 0; j < s.cols(); ++j) {
                grads.psis[k](j, 0) = dy.col(j).dot(s.col(j));
                grads.psis[k](j, 1) = dy.col(j).sum();
                const Vector ds = psi(j, 0) * dy.col(j);
                const double mean_ds = ds.sum() / rows;
                const double mean_dss = ds.dot(s.col(j)) / rows;
                dg.col(j) = cache.inv_std[k](j) *
                            (ds.array() - mean_ds - s.col(j).array() * mean_dss).matrix();
            }
        } else {
            dg = std::move(dy);
        }

        Matrix dh = arch.activations[k] == Activation::relu
                        ? Matrix((cache.preact[k].array() > 0.0).select(dg, 0.0))
                        : std::move(dg);
        grads.phis[k].noalias() = dh.transpose() * cache.upsampled[k];
        if (l > 1) {
            const Matrix dm = dh * params.phis[k];
            dy.noalias() = plan.sparse_upsampler(l).transpose() * dm;
        }
    }
    return grads;
}

double Loss::value(const Vector& estimate, const Vector& target) const {
    if (estimate.size() != target.size()) throw std::invalid_argument("loss: length mismatch");
    const double sq = (estimate - target).squaredNorm();
    if (kind == LossKind::mse) return sq;
    if (!(variance > 0.0)) throw std::invalid_argument("loss: weighted loss needs sigma^2 > 0");
    return sq / variance;
}

Vector Loss::gradient(const Vector& estimate, const Vector& target) const {
    if (estimate.size() != target.size()) throw std::invalid_argument("loss: length mismatch");
    if (kind == LossKind::mse) return 2.0 * (estimate - target);
    if (!(variance > 0.0)) throw std::invalid_argument("loss: weighted loss needs sigma^2 > 0");
    return (2.0 / variance) * (estimate - target);
}

std::string_view to_string(Activation a) { return a == Activation::relu ? "relu" : "identity"; }

Activation parse_activation(std::string_view s) {
    if (s == "relu") return Activation::relu;
    if (s == "identity" || s == "linear") return Activation::identity;
    throw std::invalid_argument("unknown activation '" + std::string(s) + "'");
}

}  // namespace gdd::decoder
