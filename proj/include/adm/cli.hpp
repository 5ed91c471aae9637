#pragma once

// Command dispatch for the `adm` tool. Kept in a header so the acceptance
// and unit tests can drive it in-process.
//
// Exit status: 0 success, 1 domain error, 2 parse or usage error. Every
// outcome, errors included, is a single JSON object on the output stream
// (or a key/value table with --format table).

#include "adm/document.hpp"
#include "adm/fibration.hpp"
#include "adm/green_exact.hpp"
#include "adm/green_oracle.hpp"
#include "adm/moduli_cone.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace adm::cli {

using Json = nlohmann::ordered_json;

namespace detail {

/// Raised for unreadable input files; reported like a parse error.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json strings(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

inline Json edge_json(const MetrizedGraph& graph, std::size_t i) {
  const auto& e = graph.edges()[i];
  Json out;
  out["edge"] = i;
  out["from"] = graph.vertices()[e.a.index].name;
  out["to"] = graph.vertices()[e.b.index].name;
  out["length"] = e.length.str();
  return out;
}

inline Json eps_json(const MetrizedGraph& graph) {
  auto report = eps_polarized(graph);
  Json out;
  out["eps"] = report.eps.str();
  out["degree"] = report.degree.str();
  out["genus"] = total_genus(graph);
  Json terms = Json::array();
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    auto e = edge_json(graph, i);
    e["term"] = report.per_edge_terms[i].str();
    terms.push_back(std::move(e));
  }
  out["per_edge"] = std::move(terms);
  return out;
}

inline Json classify_json(const MetrizedGraph& graph) {
  Json out;
  out["genus"] = total_genus(graph);
  out["betti"] = first_betti(graph);
  out["tree_of_stable_components"] = is_tree_of_stable_components(graph);
  Json nodes = Json::array();
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    auto e = edge_json(graph, i);
    e["type"] = classify_node(graph, EdgeId{i});
    nodes.push_back(std::move(e));
  }
  out["nodes"] = std::move(nodes);
  if (total_genus(graph) >= 2) out["deltas"] = node_type_counts(graph);
  return out;
}

/// Picks the graph a single-graph command works on: the graph document itself
/// or the named (default: first) fiber of a fibration.
inline const MetrizedGraph& select_graph(const DocumentModel& doc, const std::string& fiber) {
  if (doc.kind == DocumentKind::Graph) {
    if (!fiber.empty()) fail(ErrorKind::MissingData, "--fiber given for a graph document");
    return doc.graph();
  }
  if (doc.kind == DocumentKind::Fibration) {
    const auto& fibers = doc.fibration().fibers;
    if (fibers.empty()) fail(ErrorKind::MissingData, "fibration has no fibers");
    if (fiber.empty()) return fibers.front().graph;
    for (const auto& f : fibers)
      if (f.name == fiber) return f.graph;
    fail(ErrorKind::MissingData, "no fiber named '" + fiber + "'");
  }
  fail(ErrorKind::MissingData, "expected a graph or fibration document, got a class");
}

inline const FibrationData& require_fibration(const DocumentModel& doc) {
  if (doc.kind != DocumentKind::Fibration)
    fail(ErrorKind::MissingData, "expected a fibration document, got " + std::string(kind_name(doc.kind)));
  return doc.fibration();
}

inline ModuliDivisorClass class_from_args(const std::vector<std::string>& args) {
  bool inline_form = std::any_of(args.begin(), args.end(), [](const auto& a) { return a.find('=') != std::string::npos; });
  DocumentModel doc;
  if (inline_form) {
    std::string line = "class";
    for (const auto& a : args) line += " " + a;
    doc = parse_document(line);
  } else {
    if (args.size() != 1) throw InputError("expected a class file or g=<n> x=<p/q> y=<list>");
    doc = parse_document(read_input(args.front()));
  }
  if (doc.kind != DocumentKind::Class) fail(ErrorKind::MissingData, "expected a class document");
  return doc.moduli_class();
}

inline Rational parse_rational_flag(const std::string& text, const char* flag) {
  auto r = Rational::parse(text);
  if (!r) throw InputError(std::string("malformed rational for ") + flag + ": '" + text + "'");
  return *r;
}

inline void write_table(std::ostream& out, const Json& value, const std::string& prefix = "") {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items())
      write_table(out, item, prefix.empty() ? key : prefix + "." + key);
    return;
  }
  if (value.is_array() && std::any_of(value.begin(), value.end(), [](const Json& v) { return v.is_structured(); })) {
    for (std::size_t i = 0; i < value.size(); ++i) write_table(out, value[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  out << prefix << "\t" << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
}

}  // namespace detail

struct Options {
  std::string file;
  std::vector<std::string> class_args;
  std::string at;
  std::string from;
  std::string to;
  std::string fiber;
  std::string mesh = "1/500";
  double tolerance = 1e-3;
  std::string format = "json";
  unsigned a1 = 0;
  unsigned a2 = 0;
};

namespace detail {

inline Json run_oracle(const Options& opt) {
  auto doc = parse_document(read_input(opt.file));
  const auto& graph = select_graph(doc, opt.fiber);
  Rational mesh = parse_rational_flag(opt.mesh, "--mesh");
  auto omega = canonical_polarization(graph);
  auto sol = solve_admissible(graph, omega, mesh);
  Json out;
  out["eps"] = sol.eps;
  out["c"] = sol.c;
  out["g_dd"] = sol.g_dd;
  out["mesh"] = mesh.str();
  out["grid_nodes"] = sol.grid.node_count();
  Json green = Json::object();
  Json mu = Json::object();
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    green[graph.vertices()[v].name] = sol.green_at(VertexId{v});
    mu[graph.vertices()[v].name] = sol.mu(static_cast<Eigen::Index>(v));
  }
  out["green_diagonal"] = std::move(green);
  out["mu_vertices"] = std::move(mu);
  out["residuals"] = sol.residuals.by_name();
  if (is_tree_of_stable_components(graph) && total_genus(graph) >= 2)
    out["exact_eps"] = eps_polarized(graph).eps.str();
  double worst = std::max(sol.residuals.max_continuum(), sol.residuals.mass);
  if (worst > opt.tolerance) {
    Json err;
    err["kind"] = kind_name(ErrorKind::ResidualGate);
    err["message"] = "property residual exceeds tolerance";
    err["tolerance"] = opt.tolerance;
    err["residuals"] = sol.residuals.by_name();
    throw Json{{"error", err}};
  }
  return out;
}

inline Json run_bogomolov(const Options& opt) {
  auto doc = parse_document(read_input(opt.file));
  const auto& data = require_fibration(doc);
  auto report = bound_report(data);
  Json out;
  out["radius_sq"] = report.radius.radius_sq.str();
  out["radius"] = report.radius.radius;
  out["genus"] = data.g;
  out["deltas"] = report.deltas;
  out["omega_sq_lower"] = report.omega_sq_lower.str();
  if (data.omega_sq) out["omega_sq"] = data.omega_sq->str();
  out["eps_total"] = report.eps_total.str();
  out["adm_lower"] = report.adm_lower.str();
  out["unit_lengths"] = report.unit_lengths;
  out["closed_form_radius_sq"] = report.closed_form->radius_sq.str();
  if (report.slope) {
    out["slope_holds"] = report.slope->holds;
    out["omega_sq_noether"] = report.omega_sq_noether->str();
  }
  return out;
}

inline Json dispatch(const std::string& command, const Options& opt) {
  if (command == "eps") {
    auto doc = parse_document(read_input(opt.file));
    if (doc.kind == DocumentKind::Graph) return eps_json(doc.graph());
    const auto& data = require_fibration(doc);
    aggregate_deltas(data);
    Json out;
    out["eps"] = eps_total(data).str();
    out["genus"] = data.g;
    Json fibers = Json::array();
    for (const auto& f : data.fibers) {
      Json item;
      item["name"] = f.name;
      item.update(eps_json(f.graph));
      fibers.push_back(std::move(item));
    }
    out["fibers"] = std::move(fibers);
    return out;
  }
  if (command == "green") {
    auto doc = parse_document(read_input(opt.file));
    const auto& graph = select_graph(doc, opt.fiber);
    if (total_genus(graph) < 2) fail(ErrorKind::InvalidGenus, "fiber genus must be at least 2");
    auto v = graph.vertex_id(opt.at);
    Json out;
    out["vertex"] = opt.at;
    out["green"] = green_polarized(graph, v).str();
    out["degree"] = canonical_polarization(graph).degree().str();
    return out;
  }
  if (command == "oracle") return run_oracle(opt);
  if (command == "resistance") {
    auto doc = parse_document(read_input(opt.file));
    const auto& graph = select_graph(doc, opt.fiber);
    auto p = graph.vertex_id(opt.from);
    auto q = graph.vertex_id(opt.to);
    Rational mesh = parse_rational_flag(opt.mesh, "--mesh");
    Json out;
    out["from"] = opt.from;
    out["to"] = opt.to;
    out["resistance"] = is_tree_of_stable_components(graph) ? Json(resistance_exact(graph, p, q).str()) : Json(nullptr);
    out["resistance_numeric"] =
        resistance_numeric(graph, GraphPoint::at_vertex(p), GraphPoint::at_vertex(q), mesh);
    return out;
  }
  if (command == "classify") {
    auto doc = parse_document(read_input(opt.file));
    if (doc.kind == DocumentKind::Graph) return classify_json(doc.graph());
    const auto& data = require_fibration(doc);
    Json out;
    out["genus"] = data.g;
    out["deltas"] = aggregate_deltas(data);
    Json fibers = Json::array();
    for (const auto& f : data.fibers) {
      Json item;
      item["name"] = f.name;
      item.update(classify_json(f.graph));
      fibers.push_back(std::move(item));
    }
    out["fibers"] = std::move(fibers);
    return out;
  }
  if (command == "cone-check") {
    auto slack = cone_check(class_from_args(opt.class_args));
    Json slacks = Json::array({slack.s_lambda.str()});
    for (const auto& s : slack.s) slacks.push_back(s.str());
    return Json{{"member", slack.member}, {"slacks", slacks}};
  }
  if (command == "cone-decompose") {
    auto d = class_from_args(opt.class_args);
    auto dec = wp_decomposition(d);
    Json out;
    out["c_dist"] = dec.c_dist.str();
    out["c"] = strings(dec.c);
    out["member"] = dec.nonnegative();
    out["recomposes"] = dec.recompose() == d;
    return out;
  }
  if (command == "restrict-hyperelliptic") {
    auto r = hyperelliptic_restriction(class_from_args(opt.class_args));
    Json out;
    out["sigma"] = strings(r.sigma);
    out["delta"] = strings(r.delta);
    out["zero"] = r.is_zero();
    return out;
  }
  if (command == "slope") {
    auto doc = parse_document(read_input(opt.file));
    const auto& data = require_fibration(doc);
    if (!data.deg_f_omega) fail(ErrorKind::MissingData, "slope needs a deg_f_omega line");
    auto deltas = aggregate_deltas(data);
    auto check = slope_check(data.g, *data.deg_f_omega, deltas);
    Json out;
    out["holds"] = check.holds;
    out["lhs"] = check.lhs.str();
    out["rhs"] = check.rhs.str();
    out["deltas"] = deltas;
    return out;
  }
  if (command == "bogomolov") return run_bogomolov(opt);
  if (command == "theta") {
    auto w = theta_witness(opt.a1, opt.a2);
    Json out;
    out["a1"] = w.a1;
    out["a2"] = w.a2;
    out["theta"] = w.theta.coefficient_strings();
    out["monic"] = w.monic;
    out["degree_ok"] = w.degree_ok;
    out["vanishes_at_zero"] = w.vanishes_at_zero;
    out["derivative_ok"] = w.derivative_ok;
    out["theta_at_1"] = w.at_one.str();
    out["beta_value"] = w.beta_at_one.str();
    out["printed_value"] = w.printed_at_one.str();
    out["printed_matches"] = w.printed_matches;
    return out;
  }
  throw std::logic_error("unhandled command " + command);
}

inline Json error_json(std::string_view kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

}  // namespace detail

/// Runs one command line (without the program name). Output goes to `out`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Admissible pairing, epsilon-invariant and moduli-cone calculator", "adm"};
  app.require_subcommand(1);
  Options opt;

  auto file_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", opt.file, "Document path, or - for stdin")->required();
    sub->add_option("--format", opt.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    return sub;
  };
  auto class_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("class", opt.class_args, "Class file, or g=<n> x=<p/q> y=<p/q>,...")->required();
    sub->add_option("--format", opt.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    return sub;
  };

  file_command("eps", "Exact epsilon-invariant of a graph or of every fiber");
  file_command("green", "Exact g(P,P) at a vertex")->add_option("--at", opt.at, "Vertex name")->required();
  app.get_subcommand("green")->add_option("--fiber", opt.fiber, "Fiber name");
  {
    auto* sub = file_command("oracle", "Numerical admissible pair with property residuals");
    sub->add_option("--mesh", opt.mesh, "Grid spacing p/q");
    sub->add_option("--tolerance", opt.tolerance, "Residual gate");
    sub->add_option("--fiber", opt.fiber, "Fiber name");
  }
  {
    auto* sub = file_command("resistance", "Effective resistance between two vertices");
    sub->add_option("--from", opt.from, "Vertex name")->required();
    sub->add_option("--to", opt.to, "Vertex name")->required();
    sub->add_option("--mesh", opt.mesh, "Grid spacing p/q");
    sub->add_option("--fiber", opt.fiber, "Fiber name");
  }
  file_command("classify", "Node types and boundary counts");
  class_command("cone-check", "Slacks of the cone inequalities");
  class_command("cone-decompose", "Decomposition along the distinguished divisor");
  class_command("restrict-hyperelliptic", "Restriction to the hyperelliptic closure");
  file_command("slope", "Slope inequality for a fibration");
  file_command("bogomolov", "Effective Bogomolov radius");
  {
    auto* sub = app.add_subcommand("theta", "Polynomial identities of theta(x)");
    sub->add_option("a1", opt.a1)->required();
    sub->add_option("a2", opt.a2)->required();
    sub->add_option("--format", opt.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  }

  auto emit = [&](const Json& value) {
    if (opt.format == "table") {
      detail::write_table(out, value);
    } else {
      out << value.dump() << "\n";
    }
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit(detail::error_json("UsageError", e.what()));
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    emit(detail::dispatch(command, opt));
    return 0;
  } catch (const ParseError& e) {
    auto err = detail::error_json(e.kind(), e.what());
    err["error"]["line"] = e.position().line;
    err["error"]["column"] = e.position().column;
    emit(err);
    return 2;
  } catch (const detail::InputError& e) {
    emit(detail::error_json("InputError", e.what()));
    return 2;
  } catch (const Error& e) {
    emit(detail::error_json(kind_name(e.kind()), e.what()));
    return 1;
  } catch (const Json& structured) {
    emit(structured);
    return 1;
  } catch (const std::exception& e) {
    emit(detail::error_json("InternalError", e.what()));
    return 1;
  }
}

}  // namespace adm::cli
