#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "hypers2v/hypergraph.hpp"

namespace hypers2v {

/// Reads the hyperedge-list text format: one hyperedge per line,
/// whitespace-separated node labels, blank lines and lines starting with '#'
/// ignored. Throws ParseError (with the 1-based line number) on invalid UTF-8
/// or control characters, and ValidationError on an edge with fewer than two
/// distinct labels.
Hypergraph parse_hyperedge_list(std::istream& in, bool dedupe = false);
Hypergraph load_hyperedge_list(const std::filesystem::path& path,
                               bool dedupe = false);

/// Writes one hyperedge per line (labels in stored id order).
void write_hyperedge_list(const Hypergraph& g, std::ostream& out);
void save_hyperedge_list(const Hypergraph& g,
                         const std::filesystem::path& path);

/// Writes the clique expansion as "u v" label pairs, one per line, u < v by
/// internal id, sorted.
void write_clique_expansion(const Hypergraph& g, std::ostream& out);

/// Canonical form of the hyperedge multiset: each edge as a sorted label
/// list, edges sorted. Used to compare graphs independent of id assignment.
std::vector<std::vector<std::string>> canonical_edge_multiset(
    const Hypergraph& g);

}  // namespace hypers2v
