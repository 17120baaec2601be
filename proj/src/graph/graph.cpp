#include "gdd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "gdd/rng.hpp"

namespace gdd::graph {

Graph::Graph(Matrix adjacency, std::vector<int> labels)
    : adjacency_(std::move(adjacency)), labels_(std::move(labels)) {
    if (adjacency_.rows() != adjacency_.cols())
        throw std::invalid_argument("adjacency must be square");
    const auto n = adjacency_.rows();
    if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != n)
        throw std::invalid_argument("label count does not match node count");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (adjacency_(i, i) != 0.0)
            throw std::invalid_argument("adjacency has a nonzero diagonal at node " +
                                        std::to_string(i));
        for (Eigen::Index j = 0; j < n; ++j) {
            const double w = adjacency_(i, j);
            if (!std::isfinite(w) || w < 0.0)
                throw std::invalid_argument("edge weights must be finite and nonnegative");
            if (std::abs(w - adjacency_(j, i)) > 1e-12)
                throw std::invalid_argument("adjacency is not symmetric");
        }
    }
}

std::vector<int> Graph::neighbors(int i) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
        if (adjacency_(i, j) > 0.0) out.push_back(j);
    return out;
}

std::size_t Graph::edge_count() const {
    std::size_t count = 0;
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (adjacency_(i, j) > 0.0) ++count;
    return count;
}

Vector Graph::degrees() const { return adjacency_.rowwise().sum(); }

Graph sbm_generate(const SbmConfig& cfg) {
    if (cfg.n < 1 || cfg.k < 1)
        throw std::invalid_argument("SBM needs n >= 1 and k >= 1");
    if (cfg.n % cfg.k != 0)
        throw std::invalid_argument("SBM node count must be divisible by the community count");
    if (!(0.0 <= cfg.p_out && cfg.p_out <= cfg.p_in && cfg.p_in <= 1.0))
        throw std::invalid_argument("SBM probabilities must satisfy 0 <= p_out <= p_in <= 1");

    auto rng = make_rng(cfg.seed, {stream::graph});
    std::vector<int> order(cfg.n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    const int block = cfg.n / cfg.k;
    std::vector<int> labels(cfg.n);
    for (int r = 0; r < cfg.n; ++r) labels[order[r]] = r / block;

    Matrix a = Matrix::Zero(cfg.n, cfg.n);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < cfg.n; ++i) {
        for (int j = i + 1; j < cfg.n; ++j) {
            const double p = labels[i] == labels[j] ? cfg.p_in : cfg.p_out;
            // Always consume one draw so the stream layout is independent of p.
            if (unif(rng) < p) a(i, j) = a(j, i) = 1.0;
        }
    }
    return Graph(std::move(a), std::move(labels));
}

Matrix laplacian(const Graph& g) {
    Matrix l = -g.adjacency();
    l.diagonal() = g.degrees();
    return l;
}

std::vector<int> connected_components(const Graph& g) {
    const int n = g.size();
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                if (g.has_edge(u, v) && comp[v] < 0) {
                    comp[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

Eigen::MatrixXi hop_distances(const Graph& g) {
    const int n = g.size();
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) adj[i] = g.neighbors(i);

    Eigen::MatrixXi dist = Eigen::MatrixXi::Constant(n, n, -1);
    std::vector<int> queue(n);
    for (int s = 0; s < n; ++s) {
        int head = 0, tail = 0;
        queue[tail++] = s;
        dist(s, s) = 0;
        while (head < tail) {
            const int u = queue[head++];
            for (int v : adj[u]) {
                if (dist(s, v) < 0) {
                    dist(s, v) = dist(s, u) + 1;
                    queue[tail++] = v;
                }
            }
        }
    }
    return dist;
}

}  // namespace gdd::graph
