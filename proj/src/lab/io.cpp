#include "gdd/lab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "gdd/error.hpp"

namespace gdd::lab {

namespace {

struct Edge {
    int u;
    int v;
    double w;
};

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& tok, long long& out) {
    const char* first = tok.data();
    const char* last = first + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_real(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = first + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

graph::Graph parse_edge_list(std::istream& in, const std::string& source) {
    std::vector<Edge> edges;
    std::map<std::pair<int, int>, std::size_t> seen;
    long long declared = 0;
    int max_id = -1;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            long long n = 0;
            if (hs >> key && key == "nodes:" && hs >> n && n >= 0) declared = std::max(declared, n);
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.size() != 2 && tok.size() != 3) fail(source, lineno, "expected 'u v' or 'u v w'");

        long long u = 0, v = 0;
        if (!parse_int(tok[0], u) || !parse_int(tok[1], v) || u < 0 || v < 0 || u > 1'000'000 || v > 1'000'000)
            fail(source, lineno, "node ids must be non-negative integers");
        double w = 1.0;
        if (tok.size() == 3 && !parse_real(tok[2], w)) fail(source, lineno, "invalid weight '" + tok[2] + "'");
        if (u == v) fail(source, lineno, "self-loop on node " + std::to_string(u));
        if (w < 0.0) fail(source, lineno, "negative weight");

        const std::pair<int, int> key{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
        if (auto it = seen.find(key); it != seen.end())
            fail(source, lineno, "duplicate edge (" + std::to_string(key.first) + ", " +
                                     std::to_string(key.second) + "), first listed on line " +
                                     std::to_string(it->second));
        seen.emplace(key, lineno);
        edges.push_back({key.first, key.second, w});
        max_id = std::max(max_id, key.second);
    }

    const int n = static_cast<int>(std::max<long long>(declared, max_id + 1));
    graph::Matrix a = graph::Matrix::Zero(n, n);
    for (const Edge& e : edges) a(e.u, e.v) = a(e.v, e.u) = e.w;
    return graph::Graph(std::move(a));
}

graph::Graph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open graph file " + path.string());
    return parse_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const graph::Graph& g) {
    out << "# nodes: " << g.size() << '\n';
    for (int u = 0; u < g.size(); ++u) {
        for (int v = u + 1; v < g.size(); ++v) {
            if (!g.has_edge(u, v)) continue;
            out << u << ' ' << v;
            if (g.weight(u, v) != 1.0) out << ' ' << format_double(g.weight(u, v));
            out << '\n';
        }
    }
}

void save_graph(const graph::Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write graph file " + path.string());
    write_edge_list(out, g);
}

graph::Vector parse_signal(std::istream& in, long expected_length, const std::string& source) {
    std::vector<double> values;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        double v = 0.0;
        if (!parse_real(line, v)) fail(source, lineno, "invalid signal value '" + line + "'");
        values.push_back(v);
    }
    if (expected_length >= 0 && static_cast<long>(values.size()) != expected_length)
        throw DataError(source + ": signal has " + std::to_string(values.size()) + " values, expected " +
                        std::to_string(expected_length));
    return Eigen::Map<graph::Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

graph::Vector load_signal(const std::filesystem::path& path, long expected_length) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open signal file " + path.string());
    return parse_signal(in, expected_length, path.string());
}

void save_signal(const graph::Vector& x, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write signal file " + path.string());
    for (Eigen::Index i = 0; i < x.size(); ++i) out << format_double(x(i)) << '\n';
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return std::to_string(v);
    return std::string(buf, ptr);
}

}  // namespace gdd::lab
