#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace gdd::graph {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Undirected weighted graph stored as a dense symmetric adjacency matrix.
///
/// The adjacency is validated on construction: square, symmetric within
/// 1e-12, zero diagonal, nonnegative. `labels` carries optional per-node
/// community tags (empty when unknown).
class Graph {
public:
    Graph() = default;
    explicit Graph(Matrix adjacency, std::vector<int> labels = {});

    int size() const noexcept { return static_cast<int>(adjacency_.rows()); }
    const Matrix& adjacency() const noexcept { return adjacency_; }
    const std::vector<int>& labels() const noexcept { return labels_; }

    double weight(int i, int j) const { return adjacency_(i, j); }
    bool has_edge(int i, int j) const { return adjacency_(i, j) > 0.0; }

    /// Neighbour list of node i in increasing index order.
    std::vector<int> neighbors(int i) const;
    std::size_t edge_count() const;
    Vector degrees() const;

private:
    Matrix adjacency_;
    std::vector<int> labels_;
};

struct SbmConfig {
    int n = 256;
    int k = 4;
    double p_in = 0.15;
    double p_out = 2.25e-3;
    std::uint64_t seed = 0;
};

/// Stochastic block model with k equal-size communities.
///
/// Community membership is assigned to a seeded random permutation of the
/// node indices, so node order carries no information about the blocks.
Graph sbm_generate(const SbmConfig& cfg);

/// Combinatorial Laplacian diag(A1) - A.
Matrix laplacian(const Graph& g);

/// Connected component id per node (ids are 0-based, in order of first node).
std::vector<int> connected_components(const Graph& g);

/// All-pairs shortest-path hop counts on the unweighted graph.
/// Unreachable pairs get -1.
Eigen::MatrixXi hop_distances(const Graph& g);

}  // namespace gdd::graph
