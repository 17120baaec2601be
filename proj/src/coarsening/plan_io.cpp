#include "gdd/plan_io.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "gdd/error.hpp"

namespace gdd::coarsen {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw DataError("matrix: data length does not match rows x cols");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = data[static_cast<std::size_t>(i * cols + k)];
    return m;
}

json plan_to_json(const UpsamplingPlan& plan) {
    json doc;
    doc["variant"] = std::string(to_string(plan.variant));
    doc["linkage"] = std::string(to_string(plan.linkage));
    doc["gamma"] = plan.gamma;
    doc["sizes"] = plan.cut.sizes;
    doc["memberships"] = json::array();
    for (int l = 1; l <= plan.levels(); ++l) doc["memberships"].push_back(plan.cut.parents[l]);
    doc["adjacencies"] = json::array();
    doc["upsamplers"] = json::array();
    for (int l = 1; l <= plan.levels(); ++l) {
        doc["adjacencies"].push_back(matrix_to_json(plan.coarse_adjacencies[l - 1]));
        doc["upsamplers"].push_back(matrix_to_json(plan.upsamplers[l - 1]));
    }
    return doc;
}

UpsamplingPlan plan_from_json(const json& doc) {
    try {
        UpsamplingPlan plan;
        plan.variant = parse_variant(doc.at("variant").get<std::string>());
        plan.linkage = parse_linkage(doc.value("linkage", std::string("average")));
        plan.gamma = doc.at("gamma").get<double>();

        LayerCut& cut = plan.cut;
        cut.sizes = doc.at("sizes").get<std::vector<int>>();
        const int levels = cut.levels();
        if (levels < 0) throw DataError("plan: sizes must not be empty");
        const auto& memberships = doc.at("memberships");
        if (static_cast<int>(memberships.size()) != levels)
            throw DataError("plan: expected one membership list per level");

        cut.parents.assign(levels + 1, {});
        for (int l = 1; l <= levels; ++l) {
            cut.parents[l] = memberships[l - 1].get<std::vector<int>>();
            if (static_cast<int>(cut.parents[l].size()) != cut.sizes[l])
                throw DataError("plan: membership list " + std::to_string(l) + " has wrong length");
            std::vector<int> children(cut.sizes[l - 1], 0);
            for (int p : cut.parents[l]) {
                if (p < 0 || p >= cut.sizes[l - 1]) throw DataError("plan: parent index out of range");
                ++children[p];
            }
            for (int c : children)
                if (c == 0) throw DataError("plan: a cluster at level " + std::to_string(l - 1) + " has no children");
        }
        const int n = cut.sizes.back();
        cut.assignment.assign(levels + 1, std::vector<int>(n));
        std::iota(cut.assignment[levels].begin(), cut.assignment[levels].end(), 0);
        for (int l = levels; l >= 1; --l)
            for (int v = 0; v < n; ++v) cut.assignment[l - 1][v] = cut.parents[l][cut.assignment[l][v]];

        const auto& adj = doc.at("adjacencies");
        const auto& ups = doc.at("upsamplers");
        if (static_cast<int>(adj.size()) != levels || static_cast<int>(ups.size()) != levels)
            throw DataError("plan: expected one adjacency and one upsampler per level");
        for (int l = 1; l <= levels; ++l) {
            Matrix a = matrix_from_json(adj[l - 1]);
            Matrix u = matrix_from_json(ups[l - 1]);
            if (a.rows() != cut.sizes[l] || a.cols() != cut.sizes[l])
                throw DataError("plan: adjacency " + std::to_string(l) + " has wrong shape");
            if (u.rows() != cut.sizes[l] || u.cols() != cut.sizes[l - 1])
                throw DataError("plan: upsampler " + std::to_string(l) + " has wrong shape");
            for (Eigen::Index i = 0; i < u.rows(); ++i)
                if (std::abs(u.row(i).sum() - 1.0) > 1e-9)
                    throw DataError("plan: upsampler " + std::to_string(l) + " is not row-stochastic");
            plan.parent_matrices.push_back(parent_matrix(cut, l));
            plan.coarse_adjacencies.push_back(std::move(a));
            plan.sparse_upsamplers.push_back(u.sparseView(0.0, 0.0));
            plan.upsamplers.push_back(std::move(u));
        }
        return plan;
    } catch (const json::exception& e) {
        throw DataError(std::string("plan: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("plan: ") + e.what());
    }
}

void save_plan(const UpsamplingPlan& plan, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << plan_to_json(plan).dump() << '\n';
}

UpsamplingPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return plan_from_json(doc);
}

}  // namespace gdd::coarsen
