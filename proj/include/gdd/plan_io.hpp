#pragma once

#include <filesystem>

#include <json.hpp>

#include "gdd/coarsening.hpp"

namespace gdd::coarsen {

/// Plan document: variant, linkage, gamma, sizes, per-level parent lists
/// ("memberships", level 1 first), and the dense A^(l) and U^(l) matrices
/// as {rows, cols, data} objects with row-major data.
nlohmann::json plan_to_json(const UpsamplingPlan& plan);

/// Rebuilds a plan from plan_to_json output. Memberships are checked for
/// consistency with sizes and every U^(l) must be row-stochastic.
/// Throws gdd::DataError on malformed documents.
UpsamplingPlan plan_from_json(const nlohmann::json& doc);

void save_plan(const UpsamplingPlan& plan, const std::filesystem::path& path);
UpsamplingPlan load_plan(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace gdd::coarsen
