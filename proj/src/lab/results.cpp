#include "gdd/lab/results.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "gdd/error.hpp"
#include "gdd/lab/io.hpp"
#include "gdd/lab/stats.hpp"

namespace gdd::lab {

using nlohmann::json;

std::vector<Aggregate> ResultTable::aggregates() const {
    std::vector<std::string> methods;
    auto note = [&](const std::string& m) {
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    };
    for (const auto& r : rows) note(r.method);
    for (const auto& f : failures) note(f.method);

    std::vector<Aggregate> out;
    for (const auto& m : methods) {
        std::vector<double> noises;
        for (const auto& r : rows)
            if (r.method == m) noises.push_back(r.noise_power);
        for (const auto& f : failures)
            if (f.method == m) noises.push_back(f.noise_power);
        std::sort(noises.begin(), noises.end());
        noises.erase(std::unique(noises.begin(), noises.end()), noises.end());

        for (double p : noises) {
            Aggregate a;
            a.method = m;
            a.noise_power = p;
            a.failed = static_cast<std::size_t>(std::count_if(failures.begin(), failures.end(), [&](const auto& f) {
                return f.method == m && f.noise_power == p;
            }));
            const auto e = errors(m, p);
            a.count = e.size();
            if (!e.empty()) {
                a.median = median(e);
                a.p25 = percentile(e, 25.0);
                a.p75 = percentile(e, 75.0);
                a.spread = a.median != 0.0 ? (a.p75 - a.p25) / a.median : std::numeric_limits<double>::quiet_NaN();
            } else {
                a.median = a.p25 = a.p75 = a.spread = std::numeric_limits<double>::quiet_NaN();
            }
            out.push_back(std::move(a));
        }
    }
    return out;
}

std::vector<double> ResultTable::errors(const std::string& method, double noise_power) const {
    std::vector<double> e;
    for (const auto& r : rows)
        if (r.method == method && r.noise_power == noise_power) e.push_back(r.error);
    return e;
}

void write_csv(std::ostream& out, const ResultTable& table) {
    out << "method,noise_power,trial,error,iters,wall_ms\n";
    for (const auto& r : table.rows)
        out << r.method << ',' << format_double(r.noise_power) << ',' << r.trial << ',' << format_double(r.error)
            << ',' << r.iters << ',' << format_double(r.wall_ms) << '\n';
}

void write_aggregates_csv(std::ostream& out, const std::vector<Aggregate>& aggregates) {
    out << "method,noise_power,count,failed,median,p25,p75,spread\n";
    for (const auto& a : aggregates)
        out << a.method << ',' << format_double(a.noise_power) << ',' << a.count << ',' << a.failed << ','
            << format_double(a.median) << ',' << format_double(a.p25) << ',' << format_double(a.p75) << ','
            << format_double(a.spread) << '\n';
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json aggregates_to_json(const std::vector<Aggregate>& aggregates) {
    json arr = json::array();
    for (const auto& a : aggregates)
        arr.push_back({{"method", a.method},
                       {"noise_power", a.noise_power},
                       {"count", a.count},
                       {"failed", a.failed},
                       {"median", number_or_null(a.median)},
                       {"p25", number_or_null(a.p25)},
                       {"p75", number_or_null(a.p75)},
                       {"spread", number_or_null(a.spread)}});
    return arr;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
    if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace

json table_to_json(const ResultTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"method", r.method},
                        {"noise_power", r.noise_power},
                        {"trial", r.trial},
                        {"error", r.error},
                        {"iters", r.iters},
                        {"wall_ms", r.wall_ms}});
    json failures = json::array();
    for (const auto& f : table.failures)
        failures.push_back(
            {{"method", f.method}, {"noise_power", f.noise_power}, {"trial", f.trial}, {"message", f.message}});
    return {{"rows", rows},
            {"failures", failures},
            {"plan_builds", table.plan_builds},
            {"aggregates", aggregates_to_json(table.aggregates())}};
}

ResultTable table_from_json(const json& doc) {
    try {
        ResultTable t;
        for (const auto& r : doc.at("rows")) {
            TrialResult row{r.at("method").get<std::string>(), r.at("trial").get<int>(),
                            r.at("noise_power").get<double>(),  r.at("error").get<double>(),
                            r.at("iters").get<int>(),           r.at("wall_ms").get<double>()};
            if (!(std::isfinite(row.error) && row.error >= 0.0))
                throw DataError("result row has an invalid error value");
            t.rows.push_back(std::move(row));
        }
        if (doc.contains("failures"))
            for (const auto& f : doc.at("failures"))
                t.failures.push_back({f.at("method").get<std::string>(), f.at("trial").get<int>(),
                                      f.at("noise_power").get<double>(), f.at("message").get<std::string>()});
        t.plan_builds = doc.value("plan_builds", std::size_t{0});
        return t;
    } catch (const json::exception& e) {
        throw DataError(std::string("results: ") + e.what());
    }
}

Format format_for(const std::filesystem::path& path) {
    return path.extension() == ".json" ? Format::json : Format::csv;
}

void emit(const ResultTable& table, const std::filesystem::path& path, Format format) {
    std::filesystem::path agg = path;
    agg += ".agg";
    if (format == Format::json) {
        write_file(path, table_to_json(table).dump(2) + "\n");
        write_file(agg, aggregates_to_json(table.aggregates()).dump(2) + "\n");
        return;
    }
    std::ostringstream rows, aggs;
    write_csv(rows, table);
    write_aggregates_csv(aggs, table.aggregates());
    write_file(path, rows.str());
    write_file(agg, aggs.str());
}

ResultTable load_table_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return table_from_json(doc);
}

}  // namespace gdd::lab
