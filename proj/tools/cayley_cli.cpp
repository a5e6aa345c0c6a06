// Command line front end: classify graphs against the Cayley-graph
// characterizations, synthesize the certifying operations, generate
// Cayley graphs from magma tables, complete graphs, build suffix-graph
// balls, export DOT, and verify certificates.
//
// Exit codes: 0 success/positive, 1 negative verdict, 2 undecided within
// budget, 3 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cayley/cayley.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cayley;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write '" + out_path + "'");
  out << text;
}

std::string edge_text(const Edge& e) {
  return e.source + " -[" + e.label + "]-> " + e.target;
}

std::string witness_text(const std::optional<std::pair<Edge, Edge>>& w) {
  if (!w) return "";
  return "  # witness: " + edge_text(w->first) + ", " + edge_text(w->second);
}

json table_to_json(const MagmaTable& m) {
  json rows = json::array();
  for (const std::string& p : m.carrier()) {
    json row = json::array();
    for (const std::string& q : m.carrier()) row.push_back(m.product(p, q));
    rows.push_back(std::move(row));
  }
  return json{{"carrier", m.carrier()}, {"rows", std::move(rows)}};
}

MagmaTable table_from_json(const json& j) {
  std::vector<std::string> carrier =
      j.at("carrier").get<std::vector<std::string>>();
  std::vector<std::vector<std::string>> rows =
      j.at("rows").get<std::vector<std::vector<std::string>>>();
  return MagmaTable(std::move(carrier), std::move(rows));
}

json certificate_to_json(const Certificate& cert) {
  json j{{"targetClass", std::string(class_name(cert.target_class))},
         {"kind", std::string(operation_kind_name(cert.operation.kind))},
         {"generators", cert.operation.generators},
         {"table", table_to_json(cert.operation.table)},
         {"verified", cert.verified}};
  json lab = json::object();
  for (const std::string& q : cert.operation.labeling.domain)
    lab[q] = cert.operation.labeling(q);
  j["labeling"] = std::move(lab);
  if (cert.operation.root) j["root"] = *cert.operation.root;
  if (cert.operation.representative_group)
    j["representativeGroup"] = table_to_json(*cert.operation.representative_group);
  if (cert.auxiliary_graph)
    j["auxiliaryGraph"] = cert.auxiliary_graph->serialize();
  return j;
}

Certificate certificate_from_json(const json& j) {
  auto cls = class_from_name(j.at("targetClass").get<std::string>());
  if (!cls) throw Error("certificate: unknown target class");
  OperationKind kind = OperationKind::Path;
  std::string kind_name = j.at("kind").get<std::string>();
  for (OperationKind k : {OperationKind::Path, OperationKind::Chain,
                          OperationKind::ExtendedChain, OperationKind::Edge})
    if (operation_kind_name(k) == kind_name) kind = k;
  MagmaTable table = table_from_json(j.at("table"));
  std::map<std::string, Label, LlexLess> lab_map;
  for (const auto& [k, v] : j.at("labeling").items())
    lab_map[k] = v.get<std::string>();
  std::vector<std::string> domain;
  for (const auto& [k, v] : lab_map) domain.push_back(k);
  SynthesizedOperation op{std::move(table),
                          kind,
                          std::nullopt,
                          std::nullopt,
                          j.at("generators").get<std::vector<std::string>>(),
                          Labeling(std::move(domain), std::move(lab_map)),
                          AlgebraReport{}};
  if (j.contains("root")) op.root = j.at("root").get<std::string>();
  if (j.contains("representativeGroup"))
    op.representative_group = table_from_json(j.at("representativeGroup"));
  op.verified_class = axiom_check(op.table);
  Certificate cert{*cls, std::move(op), std::nullopt,
                   j.value("verified", false)};
  if (j.contains("auxiliaryGraph"))
    cert.auxiliary_graph =
        Graph::parse(j.at("auxiliaryGraph").get<std::string>());
  return cert;
}

json properties_to_json(const PropertyReport& p) {
  json j{{"simple", p.simple},
         {"deterministic", p.deterministic},
         {"coDeterministic", p.co_deterministic},
         {"sourceComplete", p.source_complete},
         {"targetComplete", p.target_complete},
         {"complete", p.complete},
         {"loopComplete", p.loop_complete},
         {"rooted", p.rooted},
         {"stronglyConnected", p.strongly_connected},
         {"connected", p.connected},
         {"outRegular", p.out_regular},
         {"coOutRegular", p.co_out_regular},
         {"regular", p.regular},
         {"coRegular", p.co_regular},
         {"roots", p.roots},
         {"oneRoots", p.one_roots},
         {"labelCount", p.label_count},
         {"maxOutDegree", p.degrees.max_out},
         {"maxInDegree", p.degrees.max_in},
         {"maxDegree", p.degrees.max_both}};
  auto witness = [](const std::optional<std::pair<Edge, Edge>>& w) {
    return json::array({edge_text(w->first), edge_text(w->second)});
  };
  json witnesses = json::object();
  if (p.simplicity_witness) witnesses["simple"] = witness(p.simplicity_witness);
  if (p.determinism_witness)
    witnesses["deterministic"] = witness(p.determinism_witness);
  if (p.co_determinism_witness)
    witnesses["coDeterministic"] = witness(p.co_determinism_witness);
  j["witnesses"] = std::move(witnesses);
  return j;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i];
  }
  return out;
}

std::string properties_text(const PropertyReport& p) {
  std::ostringstream out;
  auto flag = [](bool b) { return b ? "yes" : "no"; };
  out << "simple: " << flag(p.simple) << witness_text(p.simplicity_witness)
      << "\n";
  out << "deterministic: " << flag(p.deterministic)
      << witness_text(p.determinism_witness) << "\n";
  out << "coDeterministic: " << flag(p.co_deterministic)
      << witness_text(p.co_determinism_witness) << "\n";
  out << "sourceComplete: " << flag(p.source_complete) << "\n";
  out << "targetComplete: " << flag(p.target_complete) << "\n";
  out << "complete: " << flag(p.complete) << "\n";
  out << "loopComplete: " << flag(p.loop_complete) << "\n";
  out << "rooted: " << flag(p.rooted) << "\n";
  out << "stronglyConnected: " << flag(p.strongly_connected) << "\n";
  out << "connected: " << flag(p.connected) << "\n";
  out << "outRegular: " << flag(p.out_regular) << "\n";
  out << "coOutRegular: " << flag(p.co_out_regular) << "\n";
  out << "regular: " << flag(p.regular) << "\n";
  out << "coRegular: " << flag(p.co_regular) << "\n";
  out << "roots: " << join(p.roots) << "\n";
  out << "oneRoots: " << join(p.one_roots) << "\n";
  out << "labelCount: " << p.label_count << "\n";
  return out.str();
}

std::string operation_text(const SynthesizedOperation& op) {
  std::ostringstream out;
  out << "# kind: " << operation_kind_name(op.kind) << "\n";
  if (op.root) out << "# root: " << *op.root << "\n";
  if (op.representative_group)
    out << "# representatives: " << join(op.representative_group->carrier())
        << "\n";
  out << "# generators: " << join(op.generators) << "\n";
  std::string lab;
  for (const std::string& q : op.labeling.domain) {
    if (!lab.empty()) lab += ' ';
    lab += q + "=" + op.labeling(q);
  }
  out << "# labeling: " << lab << "\n";
  const AlgebraReport& r = op.verified_class;
  out << "# class:";
  if (r.group()) out << " group";
  else if (r.monoid()) out << " monoid";
  else if (r.semigroup()) out << " semigroup";
  if (r.quasigroup) out << " quasigroup";
  else if (r.left_quasigroup) out << " left-quasigroup";
  if (r.cancellative) out << " cancellative";
  else if (r.left_cancellative) out << " left-cancellative";
  out << "\n";
  out << op.table.serialize();
  return out.str();
}

json operation_to_json(const SynthesizedOperation& op) {
  json j{{"kind", std::string(operation_kind_name(op.kind))},
         {"generators", op.generators},
         {"table", table_to_json(op.table)}};
  if (op.root) j["root"] = *op.root;
  if (op.representative_group)
    j["representativeGroup"] = table_to_json(*op.representative_group);
  json lab = json::object();
  for (const std::string& q : op.labeling.domain) lab[q] = op.labeling(q);
  j["labeling"] = std::move(lab);
  const AlgebraReport& r = op.verified_class;
  j["class"] = json{{"associative", r.associative},
                    {"leftCancellative", r.left_cancellative},
                    {"rightCancellative", r.right_cancellative},
                    {"cancellative", r.cancellative},
                    {"leftQuasigroup", r.left_quasigroup},
                    {"quasigroup", r.quasigroup},
                    {"monoid", r.monoid()},
                    {"group", r.group()},
                    {"identity", r.identity ? json(*r.identity) : json()}};
  return j;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int run_classify(const std::string& path, const std::string& format,
                 const std::string& certs_dir, const ClassifyOptions& opt) {
  std::string raw = read_file(path);
  // Ball files carry truncation-boundary comments; verdicts then describe
  // the finite ball only and are flagged as advisory.
  bool truncated = false;
  {
    std::istringstream lines(raw);
    std::string line;
    while (std::getline(lines, line))
      if (line.rfind("# boundary: ", 0) == 0) truncated = true;
  }
  Graph g = Graph::parse(raw);
  ClassificationReport report = classify(g, opt);

  std::map<CayleyClass, std::string> cert_paths;
  if (!certs_dir.empty()) {
    fs::create_directories(certs_dir);
    for (const auto& [cls, res] : report.classes)
      if (res.certificate) {
        fs::path p = fs::path(certs_dir) /
                     (std::string(class_name(cls)) + ".json");
        std::ofstream out(p);
        out << certificate_to_json(*res.certificate).dump(2) << "\n";
        cert_paths[cls] = p.string();
      }
  }

  bool any_yes = false, any_undecided = false;
  for (const auto& [cls, res] : report.classes) {
    any_yes |= res.verdict == Verdict::Yes;
    any_undecided |= res.verdict == Verdict::Undecided;
  }

  if (format == "json") {
    json j = properties_to_json(report.properties);
    j["symmetric"] = report.symmetric;
    j["arcSymmetric"] = report.arc_symmetric;
    if (truncated)
      j["advisory"] =
          "input has truncation-boundary vertices; verdicts describe the "
          "finite ball only";
    json classes = json::object();
    for (const auto& [cls, res] : report.classes) {
      json conds = json::object();
      for (const Condition& c : res.conditions) conds[c.name] = c.state;
      json entry{{"verdict", std::string(verdict_name(res.verdict))},
                 {"conditions", std::move(conds)}};
      if (!res.note.empty()) entry["note"] = res.note;
      if (cert_paths.count(cls)) entry["certificatePath"] = cert_paths[cls];
      classes[std::string(class_name(cls))] = std::move(entry);
    }
    j["classes"] = std::move(classes);
    std::cout << j.dump(2) << "\n";
  } else {
    if (truncated)
      std::cout << "# advisory: input has truncation-boundary vertices; "
                   "verdicts describe the finite ball only\n";
    std::cout << "# properties\n" << properties_text(report.properties);
    std::cout << "symmetric: " << report.symmetric << "\n";
    std::cout << "arcSymmetric: " << report.arc_symmetric << "\n";
    std::cout << "# classes\n";
    for (const auto& [cls, res] : report.classes) {
      std::cout << class_name(cls) << ": " << verdict_name(res.verdict)
                << "  [";
      for (std::size_t i = 0; i < res.conditions.size(); ++i) {
        if (i) std::cout << ' ';
        std::cout << res.conditions[i].name << '=' << res.conditions[i].state;
      }
      std::cout << "]";
      if (!res.note.empty()) std::cout << "  (" << res.note << ")";
      if (cert_paths.count(cls))
        std::cout << "  cert: " << cert_paths[cls];
      std::cout << "\n";
    }
  }
  if (any_yes) return 0;
  return any_undecided ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley graph classification and operation synthesis"};
  app.require_subcommand(1);

  std::size_t default_budget = kDefaultIsoBudget;
  if (const char* env = std::getenv("CAYLEY_BUDGET"))
    default_budget = std::strtoull(env, nullptr, 10);
  std::size_t iso_budget = default_budget;
  std::size_t search_budget = default_budget;
  unsigned seed = 0;
  app.add_option("--iso-budget", iso_budget,
                 "node budget for isomorphism searches");
  app.add_option("--search-budget", search_budget,
                 "node budget for completion searches");
  app.add_option("--seed", seed, "seed for randomized suites");

  std::string in_path, out_path, format = "text", certs_dir;

  auto* cls_cmd = app.add_subcommand("classify",
                                     "classify a graph against every class");
  cls_cmd->add_option("graph", in_path, "graph TSV file")->required();
  cls_cmd->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cls_cmd->add_option("--certs", certs_dir,
                      "directory to write certificates into");

  std::string kind = "path", at_vertex;
  auto* syn_cmd =
      app.add_subcommand("synthesize", "synthesize the operation of a graph");
  syn_cmd->add_option("graph", in_path, "graph TSV file")->required();
  syn_cmd->add_option("--kind", kind, "path, chain, extended-chain or edge")
      ->required()
      ->check(CLI::IsMember({"path", "chain", "extended-chain", "edge"}));
  syn_cmd->add_option("--at", at_vertex, "witness vertex (root / 1-root)");
  syn_cmd->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  syn_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  std::string table_path, subset_csv, labels_csv;
  auto* gen_cmd = app.add_subcommand("generate",
                                     "generate a Cayley graph from a table");
  gen_cmd->add_option("--table", table_path, "magma table file")->required();
  gen_cmd->add_option("--subset", subset_csv, "comma-separated generators");
  gen_cmd->add_option("--labels", labels_csv,
                      "comma-separated q=a labeling pairs");
  gen_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  std::string mode;
  auto* comp_cmd = app.add_subcommand("complete", "complete a graph");
  comp_cmd->add_option("graph", in_path, "graph TSV file")->required();
  comp_cmd->add_option("--mode", mode, "left-quasigroup or quasigroup")
      ->required()
      ->check(CLI::IsMember({"left-quasigroup", "quasigroup"}));
  comp_cmd->add_option("--at", at_vertex,
                       "base vertex (default: llex-least vertex)");
  comp_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  std::string rules_path, start_word;
  std::size_t radius = 0, ball_cap = kDefaultBallCap;
  auto* ball_cmd =
      app.add_subcommand("ball", "ball of the suffix graph of a rewriting "
                                 "system");
  ball_cmd->add_option("--rules", rules_path, "rewriting system file")
      ->required();
  ball_cmd->add_option("--start", start_word, "start word")->required();
  ball_cmd->add_option("--radius", radius, "chain-distance radius")
      ->required();
  ball_cmd->add_option("--cap", ball_cap, "vertex count cap");
  ball_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* dot_cmd = app.add_subcommand("export-dot", "export a graph to DOT");
  dot_cmd->add_option("graph", in_path, "graph TSV file")->required();
  dot_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  std::string cert_path;
  auto* ver_cmd =
      app.add_subcommand("verify", "verify a certificate against a graph");
  ver_cmd->add_option("graph", in_path, "graph TSV file")->required();
  ver_cmd->add_option("--cert", cert_path, "certificate JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  ClassifyOptions opt{iso_budget, search_budget};
  try {
    if (*cls_cmd) return run_classify(in_path, format, certs_dir, opt);

    if (*syn_cmd) {
      Graph g = Graph::parse(read_file(in_path));
      if (at_vertex.empty() && kind != "extended-chain")
        throw Error("synthesize: --at <vertex> is required for kind '" +
                    kind + "'");
      SynthesizedOperation op =
          kind == "path" ? path_operation(g, at_vertex, iso_budget)
          : kind == "chain" ? chain_operation(g, at_vertex, iso_budget)
          : kind == "edge"
              ? edge_operation(g, at_vertex)
              : extended_chain_operation(g, std::nullopt, iso_budget);
      write_output(out_path, format == "json"
                                 ? operation_to_json(op).dump(2) + "\n"
                                 : operation_text(op));
      return 0;
    }

    if (*gen_cmd) {
      MagmaTable m = MagmaTable::parse(read_file(table_path));
      std::vector<std::string> subset;
      if (subset_csv.empty()) {
        subset = m.carrier();
      } else {
        std::istringstream ss(subset_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) subset.push_back(tok);
      }
      Labeling lab = Labeling::identity(subset);
      if (!labels_csv.empty()) {
        std::map<std::string, Label, LlexLess> map;
        std::istringstream ss(labels_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
          std::size_t eq = item.find('=');
          if (eq == std::string::npos)
            throw Error("generate: --labels expects q=a pairs");
          map[item.substr(0, eq)] = item.substr(eq + 1);
        }
        lab = Labeling(subset, std::move(map));
      }
      write_output(out_path, cayley_graph(m, lab).serialize());
      return 0;
    }

    if (*comp_cmd) {
      Graph g = Graph::parse(read_file(in_path));
      Graph done = mode == "left-quasigroup"
                       ? left_quasigroup_completion(
                             g, at_vertex.empty() ? g.vertices().front()
                                                  : at_vertex)
                       : quasigroup_completion(g);
      write_output(out_path, done.serialize());
      return 0;
    }

    if (*ball_cmd) {
      RewritingSystem rws = RewritingSystem::parse(read_file(rules_path));
      MarkedSubgraph ball = suffix_ball(rws, start_word, radius, ball_cap);
      std::string text;
      for (const VertexId& v : ball.marks()) text += "# boundary: " + v + "\n";
      if (ball.edges().empty()) {
        for (const VertexId& v : ball.vertices())
          text += "# vertex: " + v + "\n";
      } else {
        text += ball.graph().serialize();
      }
      write_output(out_path, text);
      return 0;
    }

    if (*dot_cmd) {
      std::string raw = read_file(in_path);
      std::set<std::string> boundary;
      std::istringstream lines(raw);
      std::string line;
      while (std::getline(lines, line)) {
        const std::string prefix = "# boundary: ";
        if (line.rfind(prefix, 0) == 0)
          boundary.insert(line.substr(prefix.size()));
      }
      Graph g = Graph::parse(raw);
      std::ostringstream dot;
      dot << "digraph G {\n  rankdir=LR;\n";
      for (const VertexId& v : g.vertices())
        dot << "  \"" << dot_escape(v) << "\""
            << (boundary.count(v) ? " [shape=box];" : " [shape=ellipse];")
            << "\n";
      for (const Edge& e : g.edges())
        dot << "  \"" << dot_escape(e.source) << "\" -> \""
            << dot_escape(e.target) << "\" [label=\"" << dot_escape(e.label)
            << "\"];\n";
      dot << "}\n";
      write_output(out_path, dot.str());
      return 0;
    }

    if (*ver_cmd) {
      Graph g = Graph::parse(read_file(in_path));
      Certificate cert = certificate_from_json(json::parse(read_file(cert_path)));
      bool ok = verify_certificate(g, cert);
      std::cout << (ok ? "verified" : "rejected") << ": "
                << class_name(cert.target_class) << "\n";
      return ok ? 0 : 1;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
