#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "gdd/coarsening.hpp"

namespace gdd::coarsen {

Matrix hop_dissimilarity(const Graph& g) {
    const Eigen::MatrixXi hops = graph::hop_distances(g);
    const int far = hops.maxCoeff() + 1;
    Matrix d(g.size(), g.size());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) d(i, j) = hops(i, j) < 0 ? far : hops(i, j);
    return d;
}

namespace {

// Slot-based agglomeration: each active cluster occupies a slot of the
// dissimilarity matrix and caches its best partner (nearest slot under the
// (distance, low id, high id) ordering).
class Agglomerator {
public:
    Agglomerator(const Matrix& d, Linkage linkage)
        : d_(d), linkage_(linkage), n_(static_cast<int>(d.rows())),
          id_(n_), size_(n_, 1), active_(n_, true), best_(n_, -1) {
        std::iota(id_.begin(), id_.end(), 0);
        for (int i = 0; i < n_; ++i) refresh(i);
    }

    Dendrogram run() {
        Dendrogram out;
        out.leaves = n_;
        for (int step = 0; step < n_ - 1; ++step) {
            int a = -1;
            for (int i = 0; i < n_; ++i) {
                if (!active_[i]) continue;
                if (a < 0 || key(i, best_[i]) < key(a, best_[a])) a = i;
            }
            int b = best_[a];
            if (id_[b] < id_[a]) std::swap(a, b);

            out.merges.push_back({id_[a], id_[b], d_(a, b), n_ + step});
            absorb(a, b, n_ + step);
        }
        return out;
    }

private:
    using Key = std::tuple<double, int, int>;

    Key key(int i, int j) const {
        return {d_(i, j), std::min(id_[i], id_[j]), std::max(id_[i], id_[j])};
    }

    void refresh(int i) {
        best_[i] = -1;
        for (int j = 0; j < n_; ++j) {
            if (j == i || !active_[j]) continue;
            if (best_[i] < 0 || key(i, j) < key(i, best_[i])) best_[i] = j;
        }
    }

    // Cluster in slot b merges into slot a, which takes the new id.
    void absorb(int a, int b, int new_id) {
        const double sa = size_[a];
        const double sb = size_[b];
        for (int k = 0; k < n_; ++k) {
            if (!active_[k] || k == a || k == b) continue;
            double v = 0.0;
            switch (linkage_) {
                case Linkage::single: v = std::min(d_(a, k), d_(b, k)); break;
                case Linkage::complete: v = std::max(d_(a, k), d_(b, k)); break;
                case Linkage::average: v = (sa * d_(a, k) + sb * d_(b, k)) / (sa + sb); break;
            }
            d_(a, k) = d_(k, a) = v;
        }
        active_[b] = false;
        size_[a] += size_[b];
        id_[a] = new_id;

        refresh(a);
        for (int k = 0; k < n_; ++k) {
            if (!active_[k] || k == a) continue;
            if (best_[k] == a || best_[k] == b)
                refresh(k);
            else if (key(k, a) < key(k, best_[k]))
                best_[k] = a;
        }
    }

    Matrix d_;
    Linkage linkage_;
    int n_;
    std::vector<int> id_;
    std::vector<int> size_;
    std::vector<bool> active_;
    std::vector<int> best_;
};

void check_sizes(std::span<const int> sizes, int n) {
    if (sizes.empty()) throw std::invalid_argument("cut: at least one level size is required");
    if (sizes.front() < 1) throw std::invalid_argument("cut: coarsest level needs >= 1 cluster");
    if (sizes.back() != n)
        throw std::invalid_argument("cut: finest level size " + std::to_string(sizes.back()) +
                                    " must equal the node count " + std::to_string(n));
    for (std::size_t l = 1; l < sizes.size(); ++l)
        if (sizes[l] <= sizes[l - 1])
            throw std::invalid_argument("cut: level sizes must be strictly increasing");
}

// Fills parents[] from assignment[] (levels are nested by construction).
void link_levels(LayerCut& cut) {
    const int levels = cut.levels();
    cut.parents.assign(levels + 1, {});
    for (int l = 1; l <= levels; ++l) {
        cut.parents[l].assign(cut.sizes[l], -1);
        const auto& fine = cut.assignment[l];
        const auto& coarse = cut.assignment[l - 1];
        for (std::size_t v = 0; v < fine.size(); ++v) {
            int& p = cut.parents[l][fine[v]];
            if (p >= 0 && p != coarse[v])
                throw std::logic_error("cut: partitions are not nested");
            p = coarse[v];
        }
    }
}

}  // namespace

Dendrogram cluster(const Matrix& dissimilarity, Linkage linkage) {
    if (dissimilarity.rows() != dissimilarity.cols())
        throw std::invalid_argument("cluster: dissimilarity must be square");
    if (dissimilarity.rows() < 2) throw std::invalid_argument("cluster: need at least 2 nodes");
    return Agglomerator(dissimilarity, linkage).run();
}

Dendrogram cluster(const Graph& g, Linkage linkage) {
    if (g.size() < 2) throw std::invalid_argument("cluster: need at least 2 nodes");
    return cluster(hop_dissimilarity(g), linkage);
}

LayerCut cut(const Dendrogram& d, std::span<const int> sizes) {
    const int n = d.leaves;
    check_sizes(sizes, n);
    if (static_cast<int>(d.merges.size()) != n - 1)
        throw std::invalid_argument("cut: dendrogram must hold exactly n - 1 merges");

    LayerCut out;
    out.sizes.assign(sizes.begin(), sizes.end());
    out.assignment.assign(sizes.size(), {});

    // members[id] for every cluster id; label[v] is v's current cluster id.
    std::vector<std::vector<int>> members(2 * n - 1);
    for (int v = 0; v < n; ++v) members[v] = {v};
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);

    auto snapshot = [&](std::size_t level) {
        // Order clusters by their smallest member.
        std::vector<std::pair<int, int>> first;  // (min node, cluster id)
        std::vector<int> seen(2 * n - 1, 0);
        for (int v = 0; v < n; ++v) {
            if (!seen[label[v]]) {
                seen[label[v]] = 1;
                first.emplace_back(v, label[v]);
            }
        }
        std::vector<int> rank(2 * n - 1, -1);
        for (std::size_t r = 0; r < first.size(); ++r) rank[first[r].second] = static_cast<int>(r);
        auto& a = out.assignment[level];
        a.resize(n);
        for (int v = 0; v < n; ++v) a[v] = rank[label[v]];
    };

    // Walk merges forward; the partition with k clusters exists after n - k merges.
    int level = static_cast<int>(sizes.size()) - 1;
    int clusters = n;
    std::size_t next_merge = 0;
    while (level >= 0) {
        while (clusters > sizes[level]) {
            const Merge& m = d.merges.at(next_merge++);
            auto& dst = members[m.id];
            dst = std::move(members[m.a]);
            dst.insert(dst.end(), members[m.b].begin(), members[m.b].end());
            members[m.b].clear();
            for (int v : dst) label[v] = m.id;
            --clusters;
        }
        snapshot(level);
        --level;
    }
    link_levels(out);
    return out;
}

LayerCut balanced_cut(int n, std::span<const int> sizes) {
    check_sizes(sizes, n);
    LayerCut out;
    out.sizes.assign(sizes.begin(), sizes.end());
    const int levels = out.levels();
    out.assignment.assign(sizes.size(), {});
    out.assignment[levels].resize(n);
    std::iota(out.assignment[levels].begin(), out.assignment[levels].end(), 0);
    for (int l = levels; l >= 1; --l) {
        auto& coarse = out.assignment[l - 1];
        coarse.resize(n);
        for (int v = 0; v < n; ++v) {
            const long long c = out.assignment[l][v];
            coarse[v] = static_cast<int>(c * sizes[l - 1] / sizes[l]);
        }
    }
    link_levels(out);
    return out;
}

}  // namespace gdd::coarsen
