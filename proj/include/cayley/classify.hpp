#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cayley/algebra.hpp"
#include "cayley/core.hpp"
#include "cayley/graph.hpp"
#include "cayley/isomorphism.hpp"
#include "cayley/properties.hpp"
#include "cayley/synthesis.hpp"

namespace cayley {

enum class CayleyClass {
  LeftCancellativeMagma,
  LeftCancellativeMagmaWithIdentity,
  LeftQuasigroup,
  LeftQuasigroupWithIdentity,
  Quasigroup,
  QuasigroupWithIdentity,
  LeftCancellativeMonoidCayley,
  CancellativeMonoidCayley,
  CancellativeSemigroupCayley,
  GroupMonoidCayley,
  GroupCayley,
  GroupGeneralizedCayley,
};

inline const std::vector<CayleyClass>& all_cayley_classes() {
  static const std::vector<CayleyClass> all = {
      CayleyClass::LeftCancellativeMagma,
      CayleyClass::LeftCancellativeMagmaWithIdentity,
      CayleyClass::LeftQuasigroup,
      CayleyClass::LeftQuasigroupWithIdentity,
      CayleyClass::Quasigroup,
      CayleyClass::QuasigroupWithIdentity,
      CayleyClass::LeftCancellativeMonoidCayley,
      CayleyClass::CancellativeMonoidCayley,
      CayleyClass::CancellativeSemigroupCayley,
      CayleyClass::GroupMonoidCayley,
      CayleyClass::GroupCayley,
      CayleyClass::GroupGeneralizedCayley,
  };
  return all;
}

inline std::string_view class_name(CayleyClass c) {
  switch (c) {
    case CayleyClass::LeftCancellativeMagma: return "leftCancellativeMagma";
    case CayleyClass::LeftCancellativeMagmaWithIdentity:
      return "leftCancellativeMagmaWithIdentity";
    case CayleyClass::LeftQuasigroup: return "leftQuasigroup";
    case CayleyClass::LeftQuasigroupWithIdentity:
      return "leftQuasigroupWithIdentity";
    case CayleyClass::Quasigroup: return "quasigroup";
    case CayleyClass::QuasigroupWithIdentity: return "quasigroupWithIdentity";
    case CayleyClass::LeftCancellativeMonoidCayley:
      return "leftCancellativeMonoidCayley";
    case CayleyClass::CancellativeMonoidCayley:
      return "cancellativeMonoidCayley";
    case CayleyClass::CancellativeSemigroupCayley:
      return "cancellativeSemigroupCayley";
    case CayleyClass::GroupMonoidCayley: return "groupMonoidCayley";
    case CayleyClass::GroupCayley: return "groupCayley";
    case CayleyClass::GroupGeneralizedCayley: return "groupGeneralizedCayley";
  }
  return "?";
}

inline std::optional<CayleyClass> class_from_name(std::string_view name) {
  for (CayleyClass c : all_cayley_classes())
    if (class_name(c) == name) return c;
  return std::nullopt;
}

/// A verifiable witness: the synthesized operation whose Cayley graph
/// regenerates the input, plus the completion used, if any.
struct Certificate {
  CayleyClass target_class;
  SynthesizedOperation operation;
  std::optional<Graph> auxiliary_graph;
  bool verified = false;
};

enum class Verdict { Yes, No, Undecided };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

/// One deciding predicate of a class condition list. "skipped" marks a
/// predicate that was never evaluated because a cheaper one already
/// failed.
struct Condition {
  std::string name;
  std::string state;  // yes | no | undecided | skipped
};

struct ClassResult {
  Verdict verdict = Verdict::No;
  std::vector<Condition> conditions;
  std::optional<Certificate> certificate;
  std::string note;
};

struct ClassificationReport {
  PropertyReport properties;
  std::string symmetric = "skipped";      // yes | no | undecided | skipped
  std::string arc_symmetric = "skipped";
  std::vector<std::pair<CayleyClass, ClassResult>> classes;

  const ClassResult& result(CayleyClass c) const {
    for (const auto& [cls, res] : classes)
      if (cls == c) return res;
    throw Error("classification report: class missing");
  }
  Verdict verdict(CayleyClass c) const { return result(c).verdict; }
};

/// True iff the operation's freshly recomputed axiom report matches the
/// target class and the regeneration equality holds: the Cayley graph of
/// the table over the stored generators and labeling is exactly g.
inline bool verify_certificate(const Graph& g, const Certificate& cert) {
  const MagmaTable& table = cert.operation.table;
  if (table.size() != g.vertex_count())
    throw Error("verify certificate: operation carrier does not match V_G");
  for (const VertexId& v : g.vertices())
    if (!table.has_element(v))
      throw Error("verify certificate: operation carrier does not match V_G");

  AlgebraReport rep = axiom_check(table);
  const std::vector<std::string>& q = cert.operation.generators;
  auto generated = [&](ClosureMode mode) {
    return closure(table, q, mode).size() == table.size();
  };
  bool matches = false;
  switch (cert.target_class) {
    case CayleyClass::LeftCancellativeMagma:
      matches = rep.left_cancellative;
      break;
    case CayleyClass::LeftCancellativeMagmaWithIdentity:
      matches = rep.left_cancellative && rep.identity.has_value();
      break;
    case CayleyClass::LeftQuasigroup:
      matches = rep.left_quasigroup;
      break;
    case CayleyClass::LeftQuasigroupWithIdentity:
      matches = rep.left_quasigroup && rep.identity.has_value();
      break;
    case CayleyClass::Quasigroup:
      matches = rep.quasigroup;
      break;
    case CayleyClass::QuasigroupWithIdentity:
      matches = rep.quasigroup && rep.identity.has_value();
      break;
    case CayleyClass::LeftCancellativeMonoidCayley:
      matches = rep.monoid() && rep.left_cancellative &&
                generated(ClosureMode::Monoid);
      break;
    case CayleyClass::CancellativeMonoidCayley:
      matches =
          rep.monoid() && rep.cancellative && generated(ClosureMode::Monoid);
      break;
    case CayleyClass::CancellativeSemigroupCayley:
      matches = rep.semigroup() && rep.cancellative &&
                generated(ClosureMode::Semigroup);
      break;
    case CayleyClass::GroupMonoidCayley:
      matches = rep.group() && generated(ClosureMode::Monoid);
      break;
    case CayleyClass::GroupCayley:
      matches = rep.group() && generated(ClosureMode::Group);
      break;
    case CayleyClass::GroupGeneralizedCayley:
      matches = rep.group();
      break;
  }
  if (!matches) return false;

  // The witness vertex must play its algebraic part.
  if (cert.operation.root) {
    const VertexId& r = *cert.operation.root;
    switch (cert.operation.kind) {
      case OperationKind::Edge: {
        bool left_id = false;
        for (const std::string& e : rep.left_identities) left_id |= e == r;
        if (!left_id) return false;
        break;
      }
      default:
        if (!rep.identity || *rep.identity != r) return false;
    }
  }

  return cayley_graph(table, cert.operation.labeling) == g;
}

struct ClassifyOptions {
  std::size_t iso_budget = kDefaultIsoBudget;
  std::size_t search_budget = kDefaultSearchBudget;
};

namespace detail {

/// Builds the certificate for one positive class. BudgetExceeded leaks to
/// the caller, which downgrades the verdict to undecided.
inline Certificate make_certificate(const Graph& g, CayleyClass cls,
                                    const PropertyReport& rep,
                                    const ClassifyOptions& opt,
                                    const std::optional<Graph>& completion) {
  Certificate cert{cls, SynthesizedOperation{MagmaTable({"?"}, {{"?"}}),
                                             OperationKind::Path,
                                             std::nullopt,
                                             std::nullopt,
                                             {},
                                             Labeling::identity({"?"}),
                                             AlgebraReport{}},
                   std::nullopt, false};
  const VertexId& least = g.vertices().front();
  switch (cls) {
    case CayleyClass::LeftCancellativeMagma:
    case CayleyClass::LeftCancellativeMagmaWithIdentity:
    case CayleyClass::LeftQuasigroup:
    case CayleyClass::LeftQuasigroupWithIdentity: {
      Graph infsup = left_quasigroup_completion(g, least);
      cert.operation = edge_operation(infsup, least);
      cert.auxiliary_graph = std::move(infsup);
      break;
    }
    case CayleyClass::Quasigroup:
    case CayleyClass::QuasigroupWithIdentity: {
      Graph complete = quasigroup_completion(g);
      cert.operation = edge_operation(complete, least);
      cert.auxiliary_graph = std::move(complete);
      break;
    }
    case CayleyClass::LeftCancellativeMonoidCayley:
    case CayleyClass::CancellativeMonoidCayley:
      cert.operation = path_operation(g, rep.roots.front(), opt.iso_budget);
      break;
    case CayleyClass::CancellativeSemigroupCayley: {
      if (rep.rooted) {
        cert.operation = path_operation(g, rep.roots.front(), opt.iso_budget);
      } else {
        const Graph& gbar = *completion;
        // The fresh root is the one vertex outside V_G; dropping its row
        // and column leaves the semigroup operation internal to V_G.
        VertexId fresh;
        for (const VertexId& v : gbar.vertices())
          if (!g.has_vertex(v)) fresh = v;
        MagmaTable big = detail::build_path_table(gbar, fresh);
        const std::vector<VertexId>& vs = g.vertices();
        std::vector<std::vector<std::string>> rows;
        for (const VertexId& p : vs) {
          std::vector<std::string> row;
          for (const VertexId& q : vs) row.push_back(big.product(p, q));
          rows.push_back(std::move(row));
        }
        cert.operation =
            SynthesizedOperation{MagmaTable(vs, std::move(rows)),
                                 OperationKind::Path,
                                 std::nullopt,
                                 std::nullopt,
                                 gbar.successors(fresh),
                                 detail::root_labeling(gbar, fresh),
                                 AlgebraReport{}};
        cert.operation.verified_class = axiom_check(cert.operation.table);
        cert.auxiliary_graph = gbar;
      }
      break;
    }
    case CayleyClass::GroupMonoidCayley:
      cert.operation = path_operation(g, rep.roots.front(), opt.iso_budget);
      break;
    case CayleyClass::GroupCayley:
      cert.operation = chain_operation(g, least, opt.iso_budget);
      break;
    case CayleyClass::GroupGeneralizedCayley:
      cert.operation =
          extended_chain_operation(g, std::nullopt, opt.iso_budget);
      break;
  }
  // Certificates for completion-backed classes regenerate the input, not
  // the completion: generators and labeling are restricted to g.
  if (cert.operation.kind == OperationKind::Edge) {
    const VertexId& r = *cert.operation.root;
    cert.operation.generators = g.successors(r);
    cert.operation.labeling = detail::root_labeling(g, r);
  }
  cert.verified = verify_certificate(g, cert);
  return cert;
}

}  // namespace detail

/// Evaluates every characterization on one shared PropertyReport, the
/// expensive symmetry predicates last and only when the cheap flags
/// leave the class alive. Budget exhaustion yields "undecided", never a
/// definite verdict.
inline ClassificationReport classify(const Graph& g,
                                     const ClassifyOptions& opt = {}) {
  ClassificationReport report;
  report.properties = property_report(g);
  const PropertyReport& p = report.properties;

  std::optional<std::string> arc_cache, sym_cache;
  auto arc_symmetric = [&]() -> std::string {
    if (!arc_cache) {
      try {
        arc_cache = is_arc_symmetric(g, opt.iso_budget) ? "yes" : "no";
      } catch (const BudgetExceeded&) {
        arc_cache = "undecided";
      }
    }
    report.arc_symmetric = *arc_cache;
    return *arc_cache;
  };
  auto symmetric = [&]() -> std::string {
    if (!sym_cache) {
      try {
        sym_cache = is_symmetric(g, opt.iso_budget) ? "yes" : "no";
      } catch (const BudgetExceeded&) {
        sym_cache = "undecided";
      }
    }
    report.symmetric = *sym_cache;
    return *sym_cache;
  };

  auto flag = [](bool b) -> std::string { return b ? "yes" : "no"; };

  for (CayleyClass cls : all_cayley_classes()) {
    ClassResult res;
    std::vector<std::pair<std::string, std::string>> conds;
    std::optional<Graph> completion;

    auto push_cheap = [&](std::initializer_list<std::pair<const char*, bool>>
                              cheap) {
      bool alive = true;
      for (const auto& [name, ok] : cheap) {
        conds.push_back({name, flag(ok)});
        alive = alive && ok;
      }
      return alive;
    };
    auto push_lazy = [&](const char* name, auto&& eval, bool alive) {
      if (!alive) {
        conds.push_back({name, "skipped"});
        return std::string("skipped");
      }
      std::string state = eval();
      conds.push_back({name, state});
      return state;
    };

    bool alive = true;
    std::string lazy_state = "yes";
    switch (cls) {
      case CayleyClass::LeftCancellativeMagma:
      case CayleyClass::LeftQuasigroup:
        alive = push_cheap({{"simple", p.simple},
                            {"deterministic", p.deterministic},
                            {"sourceComplete", p.source_complete}});
        break;
      case CayleyClass::LeftCancellativeMagmaWithIdentity:
      case CayleyClass::LeftQuasigroupWithIdentity:
        alive = push_cheap({{"simple", p.simple},
                            {"deterministic", p.deterministic},
                            {"sourceComplete", p.source_complete},
                            {"loopComplete", p.loop_complete}});
        break;
      case CayleyClass::Quasigroup:
        alive = push_cheap({{"simple", p.simple},
                            {"deterministic", p.deterministic},
                            {"coDeterministic", p.co_deterministic},
                            {"sourceComplete", p.source_complete},
                            {"targetComplete", p.target_complete}});
        break;
      case CayleyClass::QuasigroupWithIdentity:
        alive = push_cheap({{"simple", p.simple},
                            {"deterministic", p.deterministic},
                            {"coDeterministic", p.co_deterministic},
                            {"sourceComplete", p.source_complete},
                            {"targetComplete", p.target_complete},
                            {"loopComplete", p.loop_complete}});
        break;
      case CayleyClass::LeftCancellativeMonoidCayley:
        alive = push_cheap({{"rooted", p.rooted},
                            {"simple", p.simple},
                            {"deterministic", p.deterministic}});
        lazy_state = push_lazy("arcSymmetric", arc_symmetric, alive);
        break;
      case CayleyClass::CancellativeMonoidCayley:
        alive = push_cheap({{"rooted", p.rooted},
                            {"simple", p.simple},
                            {"deterministic", p.deterministic},
                            {"coDeterministic", p.co_deterministic}});
        lazy_state = push_lazy("arcSymmetric", arc_symmetric, alive);
        break;
      case CayleyClass::CancellativeSemigroupCayley: {
        alive = push_cheap({{"simple", p.simple},
                            {"deterministic", p.deterministic},
                            {"coDeterministic", p.co_deterministic}});
        if (p.rooted) {
          // A rooted graph is rootable only into itself.
          lazy_state = push_lazy("arcSymmetric", arc_symmetric, alive);
        } else {
          lazy_state = push_lazy(
              "rootable",
              [&]() -> std::string {
                try {
                  completion =
                      root_completion_search(g, opt.search_budget,
                                             opt.iso_budget);
                  return completion ? "yes" : "no";
                } catch (const BudgetExceeded&) {
                  return "undecided";
                }
              },
              alive);
        }
        break;
      }
      case CayleyClass::GroupMonoidCayley:
        alive = push_cheap({{"rooted", p.rooted},
                            {"simple", p.simple},
                            {"deterministic", p.deterministic}});
        lazy_state = push_lazy("symmetric", symmetric, alive);
        break;
      case CayleyClass::GroupCayley:
        alive = push_cheap({{"connected", p.connected},
                            {"simple", p.simple},
                            {"deterministic", p.deterministic},
                            {"coDeterministic", p.co_deterministic}});
        lazy_state = push_lazy("symmetric", symmetric, alive);
        break;
      case CayleyClass::GroupGeneralizedCayley:
        alive = push_cheap({{"simple", p.simple},
                            {"deterministic", p.deterministic},
                            {"coDeterministic", p.co_deterministic}});
        lazy_state = push_lazy("symmetric", symmetric, alive);
        break;
    }

    for (const auto& [name, state] : conds)
      res.conditions.push_back({name, state});
    if (!alive || lazy_state == "no") {
      res.verdict = Verdict::No;
    } else if (lazy_state == "undecided") {
      res.verdict = Verdict::Undecided;
      res.note = "undecided within budget";
    } else {
      res.verdict = Verdict::Yes;
      try {
        res.certificate = detail::make_certificate(g, cls, p, opt, completion);
        if (!res.certificate->verified)
          res.note = "certificate failed verification";
      } catch (const BudgetExceeded& e) {
        res.verdict = Verdict::Undecided;
        res.note = e.what();
      }
    }
    report.classes.push_back({cls, std::move(res)});
  }
  return report;
}

}  // namespace cayley
