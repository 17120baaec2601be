#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "gdd/graph.hpp"

namespace gdd::coarsen {

using graph::Graph;
using graph::Matrix;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class Linkage { single, complete, average };

/// One agglomeration step. `a` < `b` are the merged cluster ids, `id` the id
/// of the new cluster. Leaves are 0..n-1; the k-th merge creates n + k.
struct Merge {
    int a = 0;
    int b = 0;
    double resolution = 0.0;
    int id = 0;

    bool operator==(const Merge&) const = default;
};

struct Dendrogram {
    int leaves = 0;
    std::vector<Merge> merges;
};

/// Node dissimilarity used for clustering: hop distance on the unweighted
/// graph, with unreachable pairs set to (largest finite distance + 1).
Matrix hop_dissimilarity(const Graph& g);

/// Agglomerative clustering over an explicit symmetric dissimilarity matrix.
/// Ties are broken by the lexicographically smallest (id_a, id_b) pair.
Dendrogram cluster(const Matrix& dissimilarity, Linkage linkage);

/// cluster(hop_dissimilarity(g), linkage). Throws for graphs with < 2 nodes.
Dendrogram cluster(const Graph& g, Linkage linkage = Linkage::average);

/// Nested partitions of the node set, coarsest first.
///
/// Level l has sizes[l] clusters, ordered by their smallest member node;
/// the last level is the node set itself in natural order.
struct LayerCut {
    std::vector<int> sizes;
    /// parents[l][c]: cluster at level l-1 that contains cluster c of level l.
    /// parents[0] is empty.
    std::vector<std::vector<int>> parents;
    /// assignment[l][v]: cluster of original node v at level l.
    std::vector<std::vector<int>> assignment;

    int levels() const noexcept { return static_cast<int>(sizes.size()) - 1; }
};

/// Cut the dendrogram at the partitions with exactly sizes[l] clusters.
/// Requires sizes strictly increasing, sizes[0] >= 1, sizes.back() == leaves.
LayerCut cut(const Dendrogram& d, std::span<const int> sizes);

/// Graph-blind nested partition: cluster c of level l has parent
/// floor(c * N_{l-1} / N_l), and node v sits in its own cluster at level L.
LayerCut balanced_cut(int n, std::span<const int> sizes);

/// Binary N_l x N_{l-1} child-of matrix, 1 <= l <= L.
Matrix parent_matrix(const LayerCut& cut, int level);

enum class Variant { none, noa, bin, wei, regular };

/// Row-normalised adjacency between the clusters of level l.
/// noa: identity. bin: 1 for every pair of clusters whose descendant node
/// sets share an original edge. wei: total original edge weight between
/// the descendant sets. Rows with no neighbour mass become identity rows.
Matrix coarse_adjacency(const Graph& g, const LayerCut& cut, int level, Variant variant);

/// gamma P + (1 - gamma) A P.
Matrix build_upsampler(const Matrix& parents, const Matrix& adjacency, double gamma);

/// Linear interpolation from `from` to `to` points along the node index
/// (half-pixel centres, clamped at the ends).
Matrix linear_interpolator(int to, int from);

struct UpsamplingPlan {
    Variant variant = Variant::wei;
    Linkage linkage = Linkage::average;
    double gamma = 0.5;
    LayerCut cut;
    /// Index l-1 holds the level-l operator, l = 1..L.
    std::vector<Matrix> parent_matrices;
    std::vector<Matrix> coarse_adjacencies;
    std::vector<Matrix> upsamplers;
    std::vector<SparseMatrix> sparse_upsamplers;

    int levels() const noexcept { return cut.levels(); }
    const std::vector<int>& sizes() const noexcept { return cut.sizes; }
    int nodes() const noexcept { return cut.sizes.empty() ? 0 : cut.sizes.back(); }
    const Matrix& upsampler(int level) const { return upsamplers.at(level - 1); }
    const SparseMatrix& sparse_upsampler(int level) const { return sparse_upsamplers.at(level - 1); }
};

/// Builds every layer operator for the given sizes.
///
/// For noa/bin/wei the partitions come from clustering g. `none` uses
/// balanced_cut and U = P. `regular` uses balanced_cut memberships with
/// linear-interpolation upsamplers over the node index order. gamma is
/// ignored by none/regular.
UpsamplingPlan build_plan(const Graph& g, std::span<const int> sizes, Variant variant,
                          double gamma = 0.5, Linkage linkage = Linkage::average);

/// Assemble a plan from a precomputed cut (shared by build_plan and import).
UpsamplingPlan assemble_plan(const Graph& g, LayerCut cut, Variant variant, double gamma,
                             Linkage linkage);

/// Geometric layer sizes N_l = round(n0 (n/n0)^(l/L)), forced strictly increasing.
std::vector<int> default_sizes(int n, int layers, int n0 = 4);

/// Applies U^(L) ... U^(1) to a level-0 signal.
graph::Vector upsample_chain(const UpsamplingPlan& plan, const graph::Vector& coarse);

std::string_view to_string(Variant v);
std::string_view to_string(Linkage l);
Variant parse_variant(std::string_view s);
Linkage parse_linkage(std::string_view s);

}  // namespace gdd::coarsen
