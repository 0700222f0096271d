#include "hypers2v/hypergraph_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "hypers2v/errors.hpp"
#include "test_support.hpp"

namespace hypers2v {
namespace {

Hypergraph parse(const std::string& text, bool dedupe = false) {
  std::istringstream in(text);
  return parse_hyperedge_list(in, dedupe);
}

TEST(HyperedgeList, SkipsCommentsAndBlankLines) {
  auto g = parse("# header\n\na b c\n  # indented comment\nc\td\r\n");
  EXPECT_EQ(g.num_nodes(), 4u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.label(3), "d");
}

TEST(HyperedgeList, AcceptsUtf8Labels) {
  auto g = parse("Valjean Thénardier Éponine\n");
  EXPECT_EQ(g.label(1), "Thénardier");
}

TEST(HyperedgeList, ReportsLineOfInvalidUtf8) {
  try {
    parse("a b\nc \xff d\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(HyperedgeList, RejectsControlCharacters) {
  EXPECT_THROW(parse("a b\x01\n"), ParseError);
}

TEST(HyperedgeList, RejectsSingleNodeEdge) {
  try {
    parse("a b\n\nsolo\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse("x x\n"), ValidationError);
}

TEST(HyperedgeList, MissingFileIsDataError) {
  EXPECT_THROW(load_hyperedge_list("/nonexistent/graph.txt"), DataError);
}

TEST(HyperedgeList, RoundTripPreservesEdgeMultiset) {
  auto g = testing::random_hypergraph(20, 10, 6, 3);
  std::ostringstream out;
  write_hyperedge_list(g, out);
  auto back = parse(out.str());
  EXPECT_EQ(canonical_edge_multiset(back), canonical_edge_multiset(g));
  EXPECT_EQ(back.num_nodes(), g.num_nodes());
}

TEST(CliqueExport, OnePairPerLineLowerIdFirst) {
  auto g = parse("b a c\nc d\n");
  std::ostringstream out;
  write_clique_expansion(g, out);
  // ids: b=0 a=1 c=2 d=3
  EXPECT_EQ(out.str(), "b a\nb c\na c\nc d\n");
}

}  // namespace
}  // namespace hypers2v
