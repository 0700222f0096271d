#include "hypers2v/hypergraph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "hypers2v/errors.hpp"

namespace hypers2v {
namespace {

// Returns false on an invalid UTF-8 sequence or a C0/DEL control character
// other than tab and carriage return.
bool valid_text_line(const std::string& line) {
  std::size_t i = 0;
  while (i < line.size()) {
    const auto c = static_cast<unsigned char>(line[i]);
    if (c < 0x80) {
      if ((c < 0x20 && c != '\t' && c != '\r' && c != '\v' && c != '\f') ||
          c == 0x7f) {
        return false;
      }
      ++i;
      continue;
    }
    std::size_t extra = 0;
    if ((c & 0xe0) == 0xc0 && c >= 0xc2) {
      extra = 1;
    } else if ((c & 0xf0) == 0xe0) {
      extra = 2;
    } else if ((c & 0xf8) == 0xf0 && c <= 0xf4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= line.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(line[i + k]) & 0xc0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

}  // namespace

Hypergraph parse_hyperedge_list(std::istream& in, bool dedupe) {
  NodeLabelMap labels;
  std::vector<std::vector<NodeId>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!valid_text_line(line)) {
      throw ParseError("invalid UTF-8 or control character", line_no);
    }
    auto first = std::find_if_not(line.begin(), line.end(), is_space);
    if (first == line.end() || *first == '#') continue;

    std::vector<std::string> tokens;
    auto it = first;
    while (it != line.end()) {
      auto end = std::find_if(it, line.end(), is_space);
      tokens.emplace_back(it, end);
      it = std::find_if_not(end, line.end(), is_space);
    }
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    if (tokens.size() < 2) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": hyperedge needs at least two distinct nodes");
    }
    // Intern in order of appearance on the line so ids follow the file.
    auto& row = edges.emplace_back();
    it = first;
    while (it != line.end()) {
      auto end = std::find_if(it, line.end(), is_space);
      row.push_back(labels.intern(std::string_view(&*it, static_cast<std::size_t>(end - it))));
      it = std::find_if_not(end, line.end(), is_space);
    }
  }
  if (in.bad()) throw DataError("read error while parsing hyperedge list");
  return Hypergraph(std::move(labels), std::move(edges), dedupe);
}

Hypergraph load_hyperedge_list(const std::filesystem::path& path, bool dedupe) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_hyperedge_list(in, dedupe);
}

void write_hyperedge_list(const Hypergraph& g, std::ostream& out) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    bool first = true;
    for (NodeId v : g.edge(e)) {
      if (!first) out << ' ';
      out << g.label(v);
      first = false;
    }
    out << '\n';
  }
}

void save_hyperedge_list(const Hypergraph& g,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_hyperedge_list(g, out);
}

void write_clique_expansion(const Hypergraph& g, std::ostream& out) {
  for (auto [u, v] : clique_expansion(g).edge_list()) {
    out << g.label(u) << ' ' << g.label(v) << '\n';
  }
}

std::vector<std::vector<std::string>> canonical_edge_multiset(
    const Hypergraph& g) {
  std::vector<std::vector<std::string>> out;
  out.reserve(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto& row = out.emplace_back();
    for (NodeId v : g.edge(e)) row.push_back(g.label(v));
    std::sort(row.begin(), row.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hypers2v
