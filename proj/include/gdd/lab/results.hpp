#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace gdd::lab {

struct TrialResult {
    std::string method;
    int trial = 0;
    double noise_power = 0.0;
    double error = 0.0;
    int iters = 0;
    double wall_ms = 0.0;

    bool operator==(const TrialResult&) const = default;
};

/// A method run that threw; it produces no row.
struct TrialFailure {
    std::string method;
    int trial = 0;
    double noise_power = 0.0;
    std::string message;

    bool operator==(const TrialFailure&) const = default;
};

struct Aggregate {
    std::string method;
    double noise_power = 0.0;
    std::size_t count = 0;
    std::size_t failed = 0;
    double median = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
    double spread = 0.0;  ///< NaN when the median is zero
};

struct ResultTable {
    std::vector<TrialResult> rows;
    std::vector<TrialFailure> failures;
    std::size_t plan_builds = 0;  ///< instrumentation: clustering/plan constructions performed

    /// Per (method, noise) statistics over successful rows. Methods keep the
    /// order of their first row, noise powers ascend.
    std::vector<Aggregate> aggregates() const;

    /// Errors of one method at one noise power, in trial order.
    std::vector<double> errors(const std::string& method, double noise_power) const;
};

enum class Format { csv, json };

void write_csv(std::ostream& out, const ResultTable& table);
void write_aggregates_csv(std::ostream& out, const std::vector<Aggregate>& aggregates);

nlohmann::json table_to_json(const ResultTable& table);
ResultTable table_from_json(const nlohmann::json& doc);

/// Writes rows to path and aggregates to path + ".agg". Throws gdd::DataError on I/O failure.
void emit(const ResultTable& table, const std::filesystem::path& path, Format format);
ResultTable load_table_json(const std::filesystem::path& path);

Format format_for(const std::filesystem::path& path);

}  // namespace gdd::lab
