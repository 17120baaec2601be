#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gdd/graph.hpp"
#include "gdd/rng.hpp"

namespace gdd::test {

using graph::Graph;
using graph::Matrix;
using graph::Vector;

inline Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges, double w = 1.0) {
    Matrix a = Matrix::Zero(n, n);
    for (auto [u, v] : edges) a(u, v) = a(v, u) = w;
    return Graph(a);
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return from_edges(n, e);
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return from_edges(n, e);
}

inline Matrix random_symmetric(int n, std::uint64_t seed) {
    auto rng = make_rng(seed, {0x73796d});
    std::normal_distribution<double> nd;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = nd(rng);
    return m;
}

inline Vector random_vector(int n, std::uint64_t seed) {
    auto rng = make_rng(seed, {0x766563});
    std::normal_distribution<double> nd;
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = nd(rng);
    return v;
}

/// Erdos-Renyi graph with unit weights.
inline Graph random_graph(int n, double p, std::uint64_t seed) {
    auto rng = make_rng(seed, {0x6572});
    std::bernoulli_distribution coin(p);
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) a(i, j) = a(j, i) = 1.0;
    return Graph(a);
}

/// Fresh empty directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("gdd_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace gdd::test
