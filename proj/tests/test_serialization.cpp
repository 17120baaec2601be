#include <doctest.h>

#include "gdd/error.hpp"
#include "gdd/params_io.hpp"
#include "gdd/plan_io.hpp"
#include "support.hpp"

using namespace gdd;
using nlohmann::json;
using graph::Graph;
using graph::Matrix;

TEST_SUITE("serialization") {

TEST_CASE("matrix json layout is row major") {
    Matrix m(2, 3);
    m << 1, 2, 3, 4, 5, 6;
    const json j = coarsen::matrix_to_json(m);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 3);
    CHECK(j["data"] == json::array({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}));
    CHECK(coarsen::matrix_from_json(j) == m);
    json bad = j;
    bad["data"].erase(0);
    CHECK_THROWS_AS(coarsen::matrix_from_json(bad), DataError);
}

TEST_CASE("plans round trip through json") {
    const Graph g = test::random_graph(30, 0.2, 4);
    for (coarsen::Variant v : {coarsen::Variant::none, coarsen::Variant::noa, coarsen::Variant::bin,
                               coarsen::Variant::wei, coarsen::Variant::regular}) {
        const coarsen::UpsamplingPlan plan = coarsen::build_plan(g, std::vector<int>{3, 9, 30}, v, 0.4);
        const json doc = coarsen::plan_to_json(plan);
        const coarsen::UpsamplingPlan back = coarsen::plan_from_json(doc);
        CHECK(back.variant == v);
        CHECK(back.gamma == plan.gamma);
        CHECK(back.sizes() == plan.sizes());
        CHECK(back.cut.parents == plan.cut.parents);
        CHECK(back.cut.assignment == plan.cut.assignment);
        for (int l = 1; l <= plan.levels(); ++l) {
            CHECK(back.upsampler(l) == plan.upsampler(l));
            CHECK(Matrix(back.sparse_upsampler(l)) == plan.upsampler(l));
        }
        CHECK(coarsen::plan_to_json(back) == doc);
    }
}

TEST_CASE("plan files and validation") {
    const auto dir = test::scratch_dir("plan");
    const Graph g = test::random_graph(12, 0.3, 1);
    const auto plan = coarsen::build_plan(g, std::vector<int>{2, 5, 12}, coarsen::Variant::wei);
    coarsen::save_plan(plan, dir / "p.json");
    CHECK(coarsen::load_plan(dir / "p.json").upsampler(2) == plan.upsampler(2));

    json doc = coarsen::plan_to_json(plan);
    doc["upsamplers"][0]["data"][0] = 5.0;
    CHECK_THROWS_AS(coarsen::plan_from_json(doc), DataError);
    doc = coarsen::plan_to_json(plan);
    doc["memberships"][0][0] = 7;
    CHECK_THROWS_AS(coarsen::plan_from_json(doc), DataError);
    CHECK_THROWS_AS(coarsen::plan_from_json(json::parse(R"({"variant": "wei"})")), DataError);
    CHECK_THROWS_AS(coarsen::load_plan(dir / "missing.json"), DataError);
}

TEST_CASE("decoder parameters round trip and decode the fit") {
    const Graph g = test::random_graph(20, 0.25, 2);
    const auto arch = decoder::Architecture::make({2, 2, 1}, {3, 8, 20});
    const auto plan = coarsen::build_plan(g, arch.sizes, coarsen::Variant::bin);
    decoder::FitConfig cfg;
    cfg.max_iters = 60;
    cfg.seed = 9;
    const auto result = decoder::fit(test::random_vector(20, 1), plan, arch, cfg);

    const json doc = decoder::params_to_json(arch, result.params, result.latent.seed);
    CHECK(doc["parameter_count"] == decoder::parameter_count(arch));
    const decoder::StoredDecoder stored = decoder::params_from_json(json::parse(doc.dump()));
    CHECK(stored.latent_seed == result.latent.seed);
    CHECK(stored.arch.widths == arch.widths);
    CHECK(stored.arch.sizes == arch.sizes);
    CHECK(stored.arch.activations == arch.activations);
    CHECK(decoder::decode(stored, plan) == result.estimate);
    CHECK(decoder::params_to_json(stored.arch, stored.params, stored.latent_seed) == doc);

    json bad = doc;
    bad["phis"].erase(0);
    CHECK_THROWS_AS(decoder::params_from_json(bad), DataError);
    bad = doc;
    bad["architecture"]["widths"] = json::array({2, 3, 1});
    CHECK_THROWS_AS(decoder::params_from_json(bad), DataError);
}

}  // TEST_SUITE
