#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gdd/coarsening.hpp"

namespace gdd::coarsen {

namespace {

void check_level(const LayerCut& cut, int level) {
    if (level < 1 || level > cut.levels())
        throw std::invalid_argument("level " + std::to_string(level) + " out of range [1, " +
                                    std::to_string(cut.levels()) + "]");
}

void normalize_rows(Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double s = m.row(i).sum();
        if (s > 0.0) {
            m.row(i) /= s;
        } else {
            m.row(i).setZero();
            m(i, i) = 1.0;
        }
    }
}

SparseMatrix to_sparse(const Matrix& m) { return m.sparseView(0.0, 0.0); }

}  // namespace

Matrix parent_matrix(const LayerCut& cut, int level) {
    check_level(cut, level);
    Matrix p = Matrix::Zero(cut.sizes[level], cut.sizes[level - 1]);
    for (int c = 0; c < cut.sizes[level]; ++c) p(c, cut.parents[level][c]) = 1.0;
    return p;
}

Matrix coarse_adjacency(const Graph& g, const LayerCut& cut, int level, Variant variant) {
    check_level(cut, level);
    const int m = cut.sizes[level];
    if (variant == Variant::noa || variant == Variant::none || variant == Variant::regular)
        return Matrix::Identity(m, m);

    const auto& of = cut.assignment[level];
    Matrix w = Matrix::Zero(m, m);
    for (int u = 0; u < g.size(); ++u) {
        for (int v = u + 1; v < g.size(); ++v) {
            if (!g.has_edge(u, v)) continue;
            const int i = of[u];
            const int j = of[v];
            if (i == j) continue;
            if (variant == Variant::bin) {
                w(i, j) = w(j, i) = 1.0;
            } else {
                w(i, j) += g.weight(u, v);
                w(j, i) += g.weight(u, v);
            }
        }
    }
    normalize_rows(w);
    return w;
}

Matrix build_upsampler(const Matrix& parents, const Matrix& adjacency, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("build_upsampler: gamma must lie in [0, 1]");
    if (adjacency.rows() != adjacency.cols() || adjacency.cols() != parents.rows())
        throw std::invalid_argument("build_upsampler: adjacency must be N_l x N_l with N_l = rows(P)");
    return gamma * parents + (1.0 - gamma) * (adjacency * parents);
}

Matrix linear_interpolator(int to, int from) {
    if (to < 1 || from < 1) throw std::invalid_argument("linear_interpolator: sizes must be positive");
    Matrix u = Matrix::Zero(to, from);
    const double scale = static_cast<double>(from) / to;
    for (int i = 0; i < to; ++i) {
        const double src = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(from - 1));
        const int lo = static_cast<int>(std::floor(src));
        const int hi = std::min(lo + 1, from - 1);
        const double t = src - lo;
        u(i, lo) += 1.0 - t;
        u(i, hi) += t;
    }
    return u;
}

UpsamplingPlan assemble_plan(const Graph& g, LayerCut cut, Variant variant, double gamma,
                             Linkage linkage) {
    if (cut.sizes.empty() || cut.sizes.back() != g.size())
        throw std::invalid_argument("plan: finest level must match the graph node count");
    UpsamplingPlan plan;
    plan.variant = variant;
    plan.linkage = linkage;
    plan.gamma = gamma;
    plan.cut = std::move(cut);
    for (int l = 1; l <= plan.levels(); ++l) {
        Matrix p = parent_matrix(plan.cut, l);
        Matrix a = coarse_adjacency(g, plan.cut, l, variant);
        Matrix u = variant == Variant::regular
                       ? linear_interpolator(plan.cut.sizes[l], plan.cut.sizes[l - 1])
                       : build_upsampler(p, a, variant == Variant::none ? 1.0 : gamma);
        plan.sparse_upsamplers.push_back(to_sparse(u));
        plan.parent_matrices.push_back(std::move(p));
        plan.coarse_adjacencies.push_back(std::move(a));
        plan.upsamplers.push_back(std::move(u));
    }
    return plan;
}

UpsamplingPlan build_plan(const Graph& g, std::span<const int> sizes, Variant variant, double gamma,
                          Linkage linkage) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("build_plan: gamma must lie in [0, 1]");
    const bool graph_aware = variant == Variant::noa || variant == Variant::bin || variant == Variant::wei;
    LayerCut layers = graph_aware && sizes.size() > 1 ? cut(cluster(g, linkage), sizes)
                                                      : balanced_cut(g.size(), sizes);
    return assemble_plan(g, std::move(layers), variant, gamma, linkage);
}

std::vector<int> default_sizes(int n, int layers, int n0) {
    if (layers < 0) throw std::invalid_argument("default_sizes: negative layer count");
    if (layers == 0) return {n};
    if (n0 < 1 || n - n0 < layers)
        throw std::invalid_argument("default_sizes: cannot fit " + std::to_string(layers) +
                                    " strictly increasing levels between " + std::to_string(n0) +
                                    " and " + std::to_string(n));
    std::vector<int> s(layers + 1);
    for (int l = 0; l <= layers; ++l)
        s[l] = static_cast<int>(std::lround(n0 * std::pow(static_cast<double>(n) / n0,
                                                          static_cast<double>(l) / layers)));
    s.front() = n0;
    s.back() = n;
    for (int l = 1; l <= layers; ++l) s[l] = std::max(s[l], s[l - 1] + 1);
    for (int l = layers - 1; l >= 0; --l) s[l] = std::min(s[l], s[l + 1] - 1);
    return s;
}

graph::Vector upsample_chain(const UpsamplingPlan& plan, const graph::Vector& coarse) {
    if (coarse.size() != plan.sizes().front())
        throw std::invalid_argument("upsample_chain: input length must equal N_0");
    graph::Vector x = coarse;
    for (int l = 1; l <= plan.levels(); ++l) x = plan.upsampler(l) * x;
    return x;
}

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::none: return "none";
        case Variant::noa: return "noa";
        case Variant::bin: return "bin";
        case Variant::wei: return "wei";
        case Variant::regular: return "regular";
    }
    return "?";
}

std::string_view to_string(Linkage l) {
    switch (l) {
        case Linkage::single: return "single";
        case Linkage::complete: return "complete";
        case Linkage::average: return "average";
    }
    return "?";
}

Variant parse_variant(std::string_view s) {
    for (Variant v : {Variant::none, Variant::noa, Variant::bin, Variant::wei, Variant::regular})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown upsampling variant '" + std::string(s) + "'");
}

Linkage parse_linkage(std::string_view s) {
    for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average})
        if (s == to_string(l)) return l;
    throw std::invalid_argument("unknown linkage '" + std::string(s) + "'");
}

}  // namespace gdd::coarsen
