#include <doctest.h>

#include <set>

#include "gdd/coarsening.hpp"
#include "gdd/decoder.hpp"
#include "gdd/signals.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gdd;
using coarsen::Variant;
using graph::Graph;
using graph::Matrix;
using graph::Vector;

namespace {

const Variant kVariants[] = {Variant::none, Variant::noa, Variant::bin, Variant::wei, Variant::regular};

std::vector<int> descendants(const coarsen::LayerCut& cut, int level, int cluster) {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(cut.assignment[level].size()); ++v)
        if (cut.assignment[level][v] == cluster) out.push_back(v);
    return out;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("plan operators are row stochastic with single-parent rows") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        graph::SbmConfig cfg{64, 4, 0.3, 0.02, seed};
        const Graph g = graph::sbm_generate(cfg);
        const auto sizes = coarsen::default_sizes(64, 3 + static_cast<int>(seed % 3));
        for (Variant v : kVariants) {
            const auto plan = coarsen::build_plan(g, sizes, v, 0.25 + 0.1 * static_cast<double>(seed % 5));
            for (int l = 1; l <= plan.levels(); ++l) {
                const Matrix& u = plan.upsampler(l);
                const Matrix& p = plan.parent_matrices[l - 1];
                const Matrix& a = plan.coarse_adjacencies[l - 1];
                CHECK((u.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
                CHECK(u.minCoeff() >= 0.0);
                CHECK(u.maxCoeff() <= 1.0 + 1e-15);
                CHECK((a.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
                CHECK(p.rowwise().sum() == Vector::Ones(p.rows()));
                CHECK(p.colwise().sum().minCoeff() >= 1.0);
                CHECK(((p.array() == 0.0) || (p.array() == 1.0)).all());
            }
        }
    }
}

TEST_CASE("cut levels partition the node set with the requested sizes") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = test::random_graph(40, 0.1, seed);
        const std::vector<int> sizes{1, 3, 10, 22, 40};
        const auto c = coarsen::cut(coarsen::cluster(g), sizes);
        for (int l = 0; l <= c.levels(); ++l) {
            std::set<int> ids(c.assignment[l].begin(), c.assignment[l].end());
            CHECK(static_cast<int>(ids.size()) == sizes[l]);
            if (l > 0)
                for (int v = 0; v < 40; ++v) CHECK(c.parents[l][c.assignment[l][v]] == c.assignment[l - 1][v]);
        }
    }
}

TEST_CASE("coarse edges are backed by original edges") {
    const Graph g = test::random_graph(30, 0.08, 3);
    for (Variant v : {Variant::bin, Variant::wei}) {
        const auto plan = coarsen::build_plan(g, std::vector<int>{3, 8, 16, 30}, v);
        for (int l = 1; l <= plan.levels(); ++l) {
            const Matrix& a = plan.coarse_adjacencies[l - 1];
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j) {
                    if (i == j || a(i, j) == 0.0) continue;
                    bool linked = false;
                    for (int x : descendants(plan.cut, l, i))
                        for (int y : descendants(plan.cut, l, j)) linked = linked || g.has_edge(x, y);
                    CHECK(linked);
                }
        }
    }
}

TEST_CASE("constant signals survive every upsampling chain") {
    graph::SbmConfig cfg{48, 4, 0.3, 0.02, 2};
    const Graph g = graph::sbm_generate(cfg);
    for (Variant v : kVariants) {
        const auto plan = coarsen::build_plan(g, std::vector<int>{2, 6, 17, 48}, v);
        const Vector out = coarsen::upsample_chain(plan, Vector::Constant(2, -1.5));
        CHECK((out.array() + 1.5).abs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("plans are deterministic") {
    const Graph g = test::random_graph(25, 0.2, 7);
    for (Variant v : kVariants) {
        const auto a = coarsen::build_plan(g, std::vector<int>{2, 9, 25}, v);
        const auto b = coarsen::build_plan(g, std::vector<int>{2, 9, 25}, v);
        for (int l = 1; l <= 2; ++l) CHECK(a.upsampler(l) == b.upsampler(l));
    }
}

TEST_CASE("gradient correctness on random instances") {
    std::size_t total = 0;
    for (std::uint64_t seed = 1000; seed < 1040; ++seed) {
        const auto check = test::check_gradients(test::random_instance(seed));
        total += check.checked;
        CHECK(check.worst < 1e-4);
    }
    CHECK(total > 100);
}

}  // TEST_SUITE
