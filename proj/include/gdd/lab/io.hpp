#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gdd/graph.hpp"

namespace gdd::lab {

/// Parses an undirected edge list: one "u v" or "u v w" per line, 0-based
/// ids, weight 1.0 by default, '#' lines are comments. A comment of the
/// form "# nodes: N" raises the node count to at least N (so trailing
/// isolated nodes survive a save/load cycle); otherwise n = max id + 1.
///
/// Throws gdd::DataError with the source name and line number on malformed
/// lines, self-loops, negative weights and duplicated pairs.
graph::Graph parse_edge_list(std::istream& in, const std::string& source = "<stream>");
graph::Graph load_graph(const std::filesystem::path& path);

/// Writes each edge once (u < v), preceded by a "# nodes: N" comment.
/// Weights equal to 1 are omitted.
void write_edge_list(std::ostream& out, const graph::Graph& g);
void save_graph(const graph::Graph& g, const std::filesystem::path& path);

/// One value per line; blank and '#' lines are skipped. When
/// expected_length >= 0 the count must match.
graph::Vector parse_signal(std::istream& in, long expected_length = -1,
                           const std::string& source = "<stream>");
graph::Vector load_signal(const std::filesystem::path& path, long expected_length = -1);
void save_signal(const graph::Vector& x, const std::filesystem::path& path);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace gdd::lab
