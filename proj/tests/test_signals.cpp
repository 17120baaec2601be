#include <doctest.h>

#include <cmath>

#include "gdd/signals.hpp"
#include "gdd/spectrum.hpp"
#include "support.hpp"

using namespace gdd;
using namespace gdd::graph;

TEST_SUITE("signals") {

TEST_CASE("resolved sparsity defaults to fifteen percent") {
    SignalModel m;
    CHECK(resolved_sparsity(m, 256) == 38);
    CHECK(resolved_sparsity(m, 3) == 1);
    m.sparsity = 5;
    CHECK(resolved_sparsity(m, 256) == 5);
}

TEST_CASE("zero diffusion steps keep the seed") {
    const Graph g = test::path_graph(5);
    Vector s = Vector::Zero(5);
    s(1) = 1.0;
    Vector h(1);
    h << 1.0;
    CHECK(diffusion_signal(g, h, s) == s);
}

TEST_CASE("one diffusion step is an adjacency column") {
    const Graph g = test::random_graph(12, 0.3, 21);
    for (int i : {0, 5, 11}) {
        Vector s = Vector::Zero(12);
        s(i) = 1.0;
        Vector h(2);
        h << 0.0, 1.0;
        CHECK((diffusion_signal(g, h, s) - g.adjacency().col(i)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("diffusion expands as a polynomial in A") {
    const Graph g = test::random_graph(10, 0.3, 2);
    const Vector s = test::random_vector(10, 1);
    Vector h(3);
    h << 0.5, -1.0, 2.0;
    const Matrix& a = g.adjacency();
    const Vector expect = 0.5 * s - a * s + 2.0 * a * a * s;
    CHECK((diffusion_signal(g, h, s) - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("generated diffusion signals have unit norm and are seeded") {
    SbmConfig cfg;
    cfg.seed = 3;
    const Graph g = sbm_generate(cfg);
    SignalModel m;
    for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(std::abs(diffusion_signal(g, m, seed).norm() - 1.0) < 1e-12);
    CHECK(diffusion_signal(g, m, 4) == diffusion_signal(g, m, 4));
    CHECK(diffusion_signal(g, m, 4) != diffusion_signal(g, m, 5));
    m.coefficients = Distribution::uniform;
    CHECK(std::abs(diffusion_signal(g, m, 1).norm() - 1.0) < 1e-12);
}

TEST_CASE("diffusion rejects bad models") {
    const Graph g = test::path_graph(4);
    SignalModel m;
    m.taps = 0;
    CHECK_THROWS_AS(diffusion_signal(g, m, 0), std::invalid_argument);
    m.taps = 2;
    m.sparsity = 5;
    CHECK_THROWS_AS(diffusion_signal(g, m, 0), std::invalid_argument);
}

TEST_CASE("neighbour median hand examples") {
    Vector base(3);
    base << 0.0, 5.0, 10.0;
    const Vector med = neighbor_median(test::path_graph(3), base);
    CHECK(med == Vector::Constant(3, 5.0));

    const Graph star = test::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    Vector sv(4);
    sv << 100.0, 1.0, 2.0, 9.0;
    CHECK(neighbor_median(star, sv)(0) == 2.0);
    CHECK(neighbor_median(star, sv)(1) == 100.0);
}

TEST_CASE("median of constants is constant and isolated nodes keep their value") {
    const Graph g = test::random_graph(15, 0.2, 5);
    const Vector c = neighbor_median(g, Vector::Constant(15, 3.0));
    CHECK(c == Vector::Constant(15, 3.0));
    const Vector out = median_signal(g, Vector::Constant(15, 3.0));
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    CHECK(out.maxCoeff() - out.minCoeff() < 1e-15);

    const Graph iso = test::from_edges(3, {{0, 1}});
    Vector b(3);
    b << 1.0, 2.0, 7.0;
    CHECK(neighbor_median(iso, b)(2) == 7.0);
}

TEST_CASE("generate_signal covers every kind with unit norm") {
    SbmConfig cfg{64, 4, 0.3, 0.02, 1};
    const Graph g = sbm_generate(cfg);
    for (SignalKind k : {SignalKind::linear_diffusion, SignalKind::median, SignalKind::bandlimited,
                         SignalKind::constant}) {
        SignalModel m;
        m.kind = k;
        CHECK(std::abs(generate_signal(g, m, 9).norm() - 1.0) < 1e-12);
    }
    SignalModel bl;
    bl.kind = SignalKind::bandlimited;
    bl.bandwidth = 6;
    const Vector x = generate_signal(g, bl, 2);
    const Spectrum s = graph_spectrum(g);
    CHECK((bandlimited_fit(s, x, 6).estimate - x).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("zero noise returns the signal unchanged") {
    const Vector x = test::random_vector(20, 1);
    const NoisySignal ns = add_noise(x, 0.0, 5);
    CHECK(ns.noisy == x);
    CHECK(ns.variance == 0.0);
    CHECK_THROWS_AS(add_noise(x, -0.1, 1), std::invalid_argument);
}

TEST_CASE("noise power matches its contract in expectation") {
    const int n = 64;
    const Vector x = Vector::Zero(n);
    double total = 0.0, sum = 0.0, sum_sq = 0.0;
    const int draws = 1000;
    for (int s = 0; s < draws; ++s) {
        const NoisySignal ns = add_noise(x, 0.1, static_cast<std::uint64_t>(s));
        CHECK(ns.variance == doctest::Approx(0.1 / n));
        total += ns.noisy.squaredNorm();
        sum += ns.noisy.sum();
        sum_sq += ns.noisy.squaredNorm();
    }
    CHECK(std::abs(total / draws - 0.1) / 0.1 < 0.05);
    const double count = static_cast<double>(draws) * n;
    const double var = sum_sq / count - (sum / count) * (sum / count);
    CHECK(std::abs(var - 0.1 / n) / (0.1 / n) < 0.05);
}

TEST_CASE("normalized error") {
    Vector t(2), e(2);
    t << 3.0, 4.0;
    e << 3.0, 0.0;
    CHECK(normalized_error(e, t) == doctest::Approx(16.0 / 25.0));
    CHECK(normalized_error(t, t) == 0.0);
    CHECK_THROWS_AS(normalized_error(t, Vector::Zero(2)), std::invalid_argument);
}

}  // TEST_SUITE
