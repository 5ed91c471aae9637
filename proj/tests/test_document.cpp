#include "adm/document.hpp"
#include "support/random_graphs.hpp"

#include <gtest/gtest.h>

using namespace adm;

namespace {

ParseError parse_failure(std::string_view text) {
  try {
    (void)parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return ParseError(false, {}, "");
}

}  // namespace

TEST(Document, FibrationExample) {
  auto doc = parse_document("genus 2\nfiber name=y1\nvertex v1 genus=1\nloop v1 length=1");
  ASSERT_EQ(doc.kind, DocumentKind::Fibration);
  const auto& data = doc.fibration();
  EXPECT_EQ(data.g, 2);
  ASSERT_EQ(data.fibers.size(), 1u);
  EXPECT_EQ(data.fibers[0].name, "y1");
  EXPECT_EQ(aggregate_deltas(data), (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(doc.positions.at("fiber y1").line, 2);
}

TEST(Document, ClassExample) {
  auto doc = parse_document("class g=2 x=20 y=-2,-4   # the distinguished divisor\n");
  ASSERT_EQ(doc.kind, DocumentKind::Class);
  EXPECT_EQ(doc.moduli_class(), distinguished_divisor(2));
  EXPECT_EQ(serialize_class(doc.moduli_class()), "class g=2 x=20 y=-2,-4");
}

TEST(Document, GraphDefaultsAndComments) {
  auto doc = parse_document("# comment\n\nvertex a\nvertex b genus=2 # trailing\n  edge a b\nloop b length=3/6\n");
  ASSERT_EQ(doc.kind, DocumentKind::Graph);
  const auto& g = doc.graph();
  EXPECT_EQ(g.vertex(VertexId{0}).genus, 0);
  EXPECT_EQ(g.edge(EdgeId{0}).length, Rational(1));
  EXPECT_EQ(g.edge(EdgeId{1}).length, Rational(1, 2));
  EXPECT_TRUE(g.edge(EdgeId{1}).is_loop());
}

TEST(Document, UnknownVertexIsSemanticWithLocation) {
  auto e = parse_failure("vertex v1 genus=1\nedge v1 v9 length=1\n");
  EXPECT_TRUE(e.semantic());
  EXPECT_EQ(e.kind(), "SemanticError");
  EXPECT_EQ(e.position().line, 2);
  EXPECT_EQ(e.position().column, 9);
}

TEST(Document, SyntaxErrorsCarryLineAndColumn) {
  struct Case {
    const char* text;
    int line, column;
  };
  for (auto c : {Case{"vertex a genus=x", 1, 10}, Case{"vertex a\nedge a a length=1/0", 2, 10},
                 Case{"vertex a\nbogus a", 2, 1}, Case{"class g=2 x=1 y=1,,2", 1, 15},
                 Case{"vertex a genus=1 extra", 1, 18}, Case{"vertex a\nedge a", 2, 6},
                 Case{"genus 2\nfiber nam=y", 2, 7}, Case{"class g=2 x=1 x=2", 1, 15},
                 Case{"vertex a genus=3/2", 1, 10}}) {
    auto e = parse_failure(c.text);
    EXPECT_FALSE(e.semantic()) << c.text;
    EXPECT_EQ(e.kind(), "ParseError");
    EXPECT_EQ(e.position().line, c.line) << c.text;
    EXPECT_EQ(e.position().column, c.column) << c.text;
  }
}

TEST(Document, SemanticErrors) {
  struct Case {
    const char* text;
    int line;
  };
  for (auto c : {Case{"genus 3\nfiber name=y\nvertex a genus=1\nloop a", 2}, Case{"vertex a\nvertex a", 2},
                 Case{"vertex a\nvertex b\nedge a b length=0", 3}, Case{"vertex a\nvertex b", 1},
                 Case{"genus 2\nvertex a genus=2", 2}, Case{"genus 1", 1}, Case{"", 1},
                 Case{"class g=3 x=1 y=1", 1}, Case{"class g=2 x=1 y=1,1\nvertex a", 2},
                 Case{"genus 2\nfiber name=y\nvertex a genus=2\nfiber name=y\nvertex b genus=2", 4},
                 Case{"vertex a genus=-1", 1}}) {
    auto e = parse_failure(c.text);
    EXPECT_TRUE(e.semantic()) << c.text;
    EXPECT_EQ(e.position().line, c.line) << c.text;
  }
}

TEST(Document, SerializeIsCanonical) {
  auto doc = parse_document("genus 2\nomega_sq 2/4\nfiber name=f\nvertex v genus=1\nloop v\n");
  EXPECT_EQ(serialize_document(doc), "genus 2\nomega_sq 1/2\nfiber name=f\nvertex v genus=1\nloop v length=1\n");
}

TEST(Document, RoundTripsRandomModels) {
  fixtures::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    auto doc = fixtures::random_document(rng);
    auto text = serialize_document(doc);
    auto back = parse_document(text);
    EXPECT_EQ(back, doc) << text;
    EXPECT_EQ(serialize_document(back), text);
  }
}
