#pragma once

// Line-oriented description format for graphs, fibrations and moduli classes.
//
//   # comment (anywhere on a line)
//   genus N
//   fiber name=<id>
//   vertex <id> genus=<n>
//   edge <idA> <idB> length=<p/q>      length defaults to 1
//   loop <id> length=<p/q>
//   deg_f_omega <p/q>
//   omega_sq <p/q>
//   class g=<n> x=<p/q> y=<p/q>,<p/q>,...
//
// A document holding only vertex/edge/loop lines is a single graph. Any of
// genus/fiber/deg_f_omega/omega_sq makes it a fibration, in which case every
// vertex/edge/loop line belongs to the most recent fiber. A class line stands
// alone.

#include "adm/errors.hpp"
#include "adm/fibration.hpp"
#include "adm/graph.hpp"
#include "adm/moduli_cone.hpp"
#include "adm/rational.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adm {

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Malformed or inconsistent document text. `semantic` separates grammar
/// errors from content errors such as undeclared vertices.
class ParseError : public std::runtime_error {
 public:
  ParseError(bool semantic, SourcePos pos, const std::string& message)
      : std::runtime_error(message), semantic_(semantic), pos_(pos) {}

  bool semantic() const noexcept { return semantic_; }
  std::string_view kind() const noexcept { return semantic_ ? "SemanticError" : "ParseError"; }
  SourcePos position() const noexcept { return pos_; }

 private:
  bool semantic_;
  SourcePos pos_;
};

enum class DocumentKind { Graph, Fibration, Class };

inline std::string_view kind_name(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::Graph: return "graph";
    case DocumentKind::Fibration: return "fibration";
    case DocumentKind::Class: return "class";
  }
  return "unknown";
}

struct DocumentModel {
  DocumentKind kind = DocumentKind::Graph;
  std::variant<std::monostate, MetrizedGraph, FibrationData, ModuliDivisorClass> payload;
  std::map<std::string, SourcePos> positions;  // "fiber <name>", "class", ...

  const MetrizedGraph& graph() const { return std::get<MetrizedGraph>(payload); }
  const FibrationData& fibration() const { return std::get<FibrationData>(payload); }
  const ModuliDivisorClass& moduli_class() const { return std::get<ModuliDivisorClass>(payload); }

  friend bool operator==(const DocumentModel& a, const DocumentModel& b) {
    return a.kind == b.kind && a.payload == b.payload;
  }
};

namespace detail {

struct Token {
  std::string_view text;
  int column = 0;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) {
    std::size_t start = 0;
    int number = 1;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      auto tokens = tokenize(text.substr(start, end - start));
      if (!tokens.empty()) lines_.push_back({number, std::move(tokens)});
      start = end + 1;
      ++number;
    }
  }

  DocumentModel parse() {
    for (const auto& line : lines_) check_keyword(line);
    DocumentModel model;
    model.kind = detect_kind();
    switch (model.kind) {
      case DocumentKind::Class: model.payload = parse_class(model); break;
      case DocumentKind::Graph: model.payload = parse_graph(model); break;
      case DocumentKind::Fibration: model.payload = parse_fibration(model); break;
    }
    return model;
  }

 private:
  struct Line {
    int number;
    std::vector<Token> tokens;
    std::string_view keyword() const { return tokens.front().text; }
  };

  struct PendingGraph {
    SourcePos start;
    GraphSpec spec;
    std::vector<SourcePos> vertex_pos;
    std::vector<SourcePos> edge_pos;  // position of the edge's line
    std::vector<std::pair<SourcePos, SourcePos>> endpoint_pos;
    std::vector<SourcePos> length_pos;
  };

  [[noreturn]] static void syntax(const Line& line, const Token& tok, const std::string& msg) {
    throw ParseError(false, {line.number, tok.column}, msg);
  }
  [[noreturn]] static void semantic(SourcePos pos, const std::string& msg) { throw ParseError(true, pos, msg); }

  static void check_keyword(const Line& line) {
    static const std::vector<std::string_view> known{"genus", "fiber", "vertex", "edge", "loop",
                                                     "deg_f_omega", "omega_sq", "class"};
    for (auto k : known)
      if (line.keyword() == k) return;
    syntax(line, line.tokens.front(), "unknown keyword '" + std::string(line.keyword()) + "'");
  }

  DocumentKind detect_kind() const {
    bool has_class = false;
    bool has_fibration = false;
    for (const auto& line : lines_) {
      auto k = line.keyword();
      if (k == "class") has_class = true;
      if (k == "genus" || k == "fiber" || k == "deg_f_omega" || k == "omega_sq") has_fibration = true;
    }
    if (has_class) {
      for (const auto& line : lines_)
        if (line.keyword() != "class")
          semantic({line.number, 1}, "a class document holds a single class line only");
      if (lines_.size() > 1) semantic({lines_[1].number, 1}, "more than one class line");
      return DocumentKind::Class;
    }
    return has_fibration ? DocumentKind::Fibration : DocumentKind::Graph;
  }

  static std::pair<std::string_view, std::string_view> key_value(const Line& line, const Token& tok) {
    auto eq = tok.text.find('=');
    if (eq == std::string_view::npos || eq == 0) syntax(line, tok, "expected key=value, got '" + std::string(tok.text) + "'");
    return {tok.text.substr(0, eq), tok.text.substr(eq + 1)};
  }

  static Rational rational(const Line& line, const Token& tok, std::string_view text) {
    auto r = Rational::parse(text);
    if (!r) syntax(line, tok, "malformed rational '" + std::string(text) + "'");
    return *r;
  }

  static std::int64_t integer(const Line& line, const Token& tok, std::string_view text) {
    auto r = Rational::parse(text);
    if (!r || !r->is_integer() || text.find('/') != std::string_view::npos)
      syntax(line, tok, "malformed integer '" + std::string(text) + "'");
    return r->numerator().convert_to<std::int64_t>();
  }

  static std::string identifier(const Line& line, const Token& tok) {
    for (char c : tok.text)
      if (c == '=' || c == ',') syntax(line, tok, "malformed identifier '" + std::string(tok.text) + "'");
    return std::string(tok.text);
  }

  static void expect_count(const Line& line, std::size_t min, std::size_t max) {
    if (line.tokens.size() < min || line.tokens.size() > max) {
      const auto& tok = line.tokens.size() > max ? line.tokens[max] : line.tokens.back();
      syntax(line, tok, "wrong number of fields for '" + std::string(line.keyword()) + "'");
    }
  }

  ModuliDivisorClass parse_class(DocumentModel& model) const {
    const Line& line = lines_.front();
    expect_count(line, 4, 4);
    std::optional<std::int64_t> g;
    std::optional<Rational> x;
    std::optional<std::vector<Rational>> y;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      const auto& tok = line.tokens[i];
      auto [key, value] = key_value(line, tok);
      if (key == "g" && !g) {
        g = integer(line, tok, value);
      } else if (key == "x" && !x) {
        x = rational(line, tok, value);
      } else if (key == "y" && !y) {
        y.emplace();
        std::size_t start = 0;
        while (true) {
          auto comma = value.find(',', start);
          y->push_back(rational(line, tok, value.substr(start, comma - start)));
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
      } else {
        syntax(line, tok, "unexpected or repeated key '" + std::string(key) + "'");
      }
    }
    if (!g || !x || !y) syntax(line, line.tokens.front(), "class needs g=, x= and y=");
    model.positions["class"] = {line.number, 1};
    try {
      return ModuliDivisorClass::make(*g, *x, *y);
    } catch (const Error& e) {
      semantic({line.number, 1}, e.what());
    }
  }

  void graph_line(const Line& line, PendingGraph& pending) const {
    auto k = line.keyword();
    if (k == "vertex") {
      expect_count(line, 2, 3);
      VertexSpec v{identifier(line, line.tokens[1]), 0};
      if (line.tokens.size() == 3) {
        auto [key, value] = key_value(line, line.tokens[2]);
        if (key != "genus") syntax(line, line.tokens[2], "expected genus=<n>");
        v.genus = integer(line, line.tokens[2], value);
      }
      pending.spec.vertices.push_back(std::move(v));
      pending.vertex_pos.push_back({line.number, line.tokens[1].column});
      return;
    }
    bool loop = k == "loop";
    std::size_t ends = loop ? 1 : 2;
    expect_count(line, 1 + ends, 2 + ends);
    EdgeSpec e;
    e.a = identifier(line, line.tokens[1]);
    e.b = loop ? e.a : identifier(line, line.tokens[2]);
    SourcePos length_pos{line.number, line.tokens.front().column};
    if (line.tokens.size() == 2 + ends) {
      const auto& tok = line.tokens[1 + ends];
      auto [key, value] = key_value(line, tok);
      if (key != "length") syntax(line, tok, "expected length=<p/q>");
      e.length = rational(line, tok, value);
      length_pos = {line.number, tok.column};
    }
    pending.spec.edges.push_back(std::move(e));
    pending.edge_pos.push_back({line.number, 1});
    pending.endpoint_pos.push_back({{line.number, line.tokens[1].column},
                                    {line.number, line.tokens[loop ? 1 : 2].column}});
    pending.length_pos.push_back(length_pos);
  }

  static MetrizedGraph finish_graph(const PendingGraph& pending) {
    const auto& spec = pending.spec;
    if (spec.vertices.empty()) semantic(pending.start, "graph has no vertices");
    for (std::size_t i = 0; i < spec.vertices.size(); ++i) {
      if (spec.vertices[i].genus < 0) semantic(pending.vertex_pos[i], "negative genus");
      for (std::size_t j = 0; j < i; ++j)
        if (spec.vertices[j].name == spec.vertices[i].name)
          semantic(pending.vertex_pos[i], "vertex '" + spec.vertices[i].name + "' declared twice");
    }
    auto declared = [&](const std::string& name) {
      for (const auto& v : spec.vertices)
        if (v.name == name) return true;
      return false;
    };
    for (std::size_t i = 0; i < spec.edges.size(); ++i) {
      if (!declared(spec.edges[i].a)) semantic(pending.endpoint_pos[i].first, "unknown vertex '" + spec.edges[i].a + "'");
      if (!declared(spec.edges[i].b)) semantic(pending.endpoint_pos[i].second, "unknown vertex '" + spec.edges[i].b + "'");
      if (spec.edges[i].length.sign() <= 0) semantic(pending.length_pos[i], "edge length must be positive");
    }
    try {
      return MetrizedGraph::build(spec);
    } catch (const Error& e) {
      semantic(pending.start, e.what());
    }
  }

  MetrizedGraph parse_graph(DocumentModel& model) const {
    PendingGraph pending;
    pending.start = {lines_.empty() ? 1 : lines_.front().number, 1};
    for (const auto& line : lines_) graph_line(line, pending);
    model.positions["graph"] = pending.start;
    return finish_graph(pending);
  }

  FibrationData parse_fibration(DocumentModel& model) const {
    FibrationData data;
    std::optional<std::int64_t> genus;
    std::vector<std::pair<std::string, PendingGraph>> fibers;
    for (const auto& line : lines_) {
      auto k = line.keyword();
      if (k == "genus") {
        expect_count(line, 2, 2);
        if (genus) semantic({line.number, 1}, "genus given twice");
        genus = integer(line, line.tokens[1], line.tokens[1].text);
        if (*genus < 2) semantic({line.number, line.tokens[1].column}, "genus must be at least 2");
      } else if (k == "deg_f_omega" || k == "omega_sq") {
        expect_count(line, 2, 2);
        auto& slot = k == "deg_f_omega" ? data.deg_f_omega : data.omega_sq;
        if (slot) semantic({line.number, 1}, std::string(k) + " given twice");
        slot = rational(line, line.tokens[1], line.tokens[1].text);
      } else if (k == "fiber") {
        expect_count(line, 2, 2);
        auto [key, value] = key_value(line, line.tokens[1]);
        if (key != "name" || value.empty()) syntax(line, line.tokens[1], "expected name=<id>");
        std::string name(value);
        for (const auto& f : fibers)
          if (f.first == name) semantic({line.number, line.tokens[1].column}, "fiber '" + name + "' declared twice");
        PendingGraph pending;
        pending.start = {line.number, 1};
        fibers.emplace_back(name, std::move(pending));
      } else {
        if (fibers.empty()) semantic({line.number, 1}, "'" + std::string(k) + "' outside of a fiber");
        graph_line(line, fibers.back().second);
      }
    }
    if (!genus) semantic({lines_.empty() ? 1 : lines_.front().number, 1}, "fibration needs a 'genus' line");
    data.g = *genus;
    for (auto& [name, pending] : fibers) {
      auto graph = finish_graph(pending);
      if (total_genus(graph) != data.g)
        semantic(pending.start, "fiber '" + name + "' has genus " + std::to_string(total_genus(graph)) +
                                    ", expected " + std::to_string(data.g));
      model.positions["fiber " + name] = pending.start;
      data.fibers.push_back({name, std::move(graph)});
    }
    return data;
  }

  std::vector<Line> lines_;
};

inline void write_graph(std::ostream& os, const MetrizedGraph& graph) {
  for (const auto& v : graph.vertices()) os << "vertex " << v.name << " genus=" << v.genus << "\n";
  for (const auto& e : graph.edges()) {
    const auto& a = graph.vertices()[e.a.index].name;
    if (e.is_loop()) {
      os << "loop " << a << " length=" << e.length << "\n";
    } else {
      os << "edge " << a << " " << graph.vertices()[e.b.index].name << " length=" << e.length << "\n";
    }
  }
}

}  // namespace detail

inline DocumentModel parse_document(std::string_view text) { return detail::DocumentParser(text).parse(); }

inline std::string serialize_class(const ModuliDivisorClass& c) {
  std::ostringstream os;
  os << "class g=" << c.g << " x=" << c.x << " y=";
  for (std::size_t i = 0; i < c.y.size(); ++i) os << (i ? "," : "") << c.y[i];
  return os.str();
}

inline std::string serialize_document(const DocumentModel& model) {
  std::ostringstream os;
  switch (model.kind) {
    case DocumentKind::Graph:
      detail::write_graph(os, model.graph());
      break;
    case DocumentKind::Class:
      os << serialize_class(model.moduli_class()) << "\n";
      break;
    case DocumentKind::Fibration: {
      const auto& data = model.fibration();
      os << "genus " << data.g << "\n";
      if (data.deg_f_omega) os << "deg_f_omega " << *data.deg_f_omega << "\n";
      if (data.omega_sq) os << "omega_sq " << *data.omega_sq << "\n";
      for (const auto& fiber : data.fibers) {
        os << "fiber name=" << fiber.name << "\n";
        detail::write_graph(os, fiber.graph);
      }
      break;
    }
  }
  return os.str();
}

}  // namespace adm
