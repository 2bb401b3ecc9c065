// binmat: command-line front end for the binary matroid library.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "binmat/analysis.hpp"
#include "binmat/connectivity.hpp"
#include "binmat/constructions.hpp"
#include "binmat/error.hpp"
#include "binmat/io.hpp"
#include "binmat/matroid.hpp"

namespace {

using namespace binmat;

struct GlobalOptions {
  std::uint64_t budget_nodes = SearchBudget{}.node_limit;
  double budget_seconds = 3600.0;
  unsigned threads = 1;
  bool canonical = false;
};

SearchBudget make_budget(const GlobalOptions& g) {
  SearchBudget b;
  b.node_limit = g.budget_nodes;
  b.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(g.budget_seconds * 1000.0));
  return b;
}

AnalysisOptions make_analysis(const GlobalOptions& g) {
  AnalysisOptions a;
  a.budget = make_budget(g);
  a.threads = g.canonical ? 1 : g.threads;
  return a;
}

BinaryMatroid load(const std::string& path) { return parse_matroid(read_input(path)); }

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    out.push_back(item.substr(first, item.find_last_not_of(" \t") - first + 1));
  }
  return out;
}

int emit(const ReportDocument& doc) {
  std::cout << doc.render();
  return doc.exit_code();
}

int emit_matroid(const BinaryMatroid& m, const GlobalOptions& g) {
  if (g.canonical) {
    std::cout << render_matroid(BinaryMatroid(rref(m.matrix()), m.labels()));
  } else {
    std::cout << render_matroid(m);
  }
  return 0;
}

Json sets_json(const BinaryMatroid& m, const std::vector<ElementSet>& sets) {
  Json out = Json::array();
  for (ElementSet s : sets) out.push_back(to_json(m, s));
  return out;
}

int run_check(const std::string& kind, const BinaryMatroid& m, const GlobalOptions& g) {
  ReportDocument doc;
  doc.command = "check " + kind;
  const SearchBudget budget = make_budget(g);
  if (kind == "i4c") {
    try {
      const I4cResult r = is_internally_4_connected(m, budget);
      doc.verdict = r.value ? Verdict::Pass : Verdict::Fail;
      doc.body.push_back(std::string("internally-4-connected: ") + (r.value ? "yes" : "no"));
      doc.data["internally_4_connected"] = r.value;
      if (r.witness) {
        doc.body.push_back("witness: " + describe(m, *r.witness));
        doc.data["witness"] = to_json(m, *r.witness);
      }
    } catch (const SearchExhausted& ex) {
      doc.verdict = Verdict::Indeterminate;
      doc.body.push_back(std::string("note: ") + ex.what());
    }
  } else if (kind == "3conn") {
    try {
      const auto w = find_small_separation(m, 3, budget);
      doc.verdict = w ? Verdict::Fail : Verdict::Pass;
      doc.body.push_back(std::string("3-connected: ") + (w ? "no" : "yes"));
      doc.data["three_connected"] = !w;
      if (w) {
        doc.body.push_back("witness: " + describe(m, *w));
        doc.data["witness"] = to_json(m, *w);
      }
    } catch (const SearchExhausted& ex) {
      doc.verdict = Verdict::Indeterminate;
      doc.body.push_back(std::string("note: ") + ex.what());
    }
  } else if (kind == "no-odd-cocircuits") {
    std::vector<ElementSet> odd;
    for (ElementSet c : cocircuits(m)) {
      if (c.size() % 2 == 1) odd.push_back(c);
    }
    doc.verdict = odd.empty() ? Verdict::Pass : Verdict::Fail;
    doc.body.push_back("odd cocircuits: " + std::to_string(odd.size()));
    for (ElementSet c : odd) doc.body.push_back("witness: " + m.format(c));
    doc.data["odd_cocircuits"] = sets_json(m, odd);
  } else if (kind == "census3") {
    const CensusReport c = triangle_census(m);
    doc.verdict = c.uniform_k == 3 ? Verdict::Pass : Verdict::Fail;
    doc.body.push_back("triangles: " + std::to_string(c.total_triangles));
    doc.body.push_back("uniform: " + (c.uniform_k ? std::to_string(*c.uniform_k) : std::string("no")));
    for (std::size_t e = 0; e < m.size(); ++e) {
      if (c.per_element[e] != 3) {
        doc.body.push_back("witness: " + m.labels()[e] + " in " + std::to_string(c.per_element[e]) + " triangles");
      }
    }
    doc.data["census"] = to_json(m, c);
  } else {
    throw InputError("unknown check '" + kind + "'");
  }
  return emit(doc);
}

AuditReport run_audit_by_name(const std::string& name, const BinaryMatroid& m, const AnalysisOptions& a) {
  if (name == "odd-cocircuit") return odd_cocircuit_audit(m, a);
  if (name == "contraction-3conn") return contraction_3conn_audit(m, a);
  if (name == "four-cocircuit") return four_cocircuit_audit(m, a);
  if (name == "triangle-union-cocircuit") return triangle_union_cocircuit_audit(m, a);
  if (name == "spike-cocircuit") return spike_cocircuit_audit(m, a);
  if (name == "small-classification") return small_classification_check(m, a);
  throw InputError("unknown audit '" + name + "'");
}

int run_audit(const std::string& name, const BinaryMatroid& m, const GlobalOptions& g) {
  const AuditReport r = run_audit_by_name(name, m, make_analysis(g));
  ReportDocument doc;
  doc.command = "audit " + name;
  doc.verdict = r.verdict();
  doc.body = describe(m, r);
  const bool ok = revalidate(m, r);
  doc.body.push_back(std::string("witnesses-revalidate: ") + (ok ? "yes" : "no"));
  doc.data["report"] = to_json(m, r);
  doc.data["witnesses_revalidate"] = ok;
  if (!ok) doc.verdict = Verdict::Indeterminate;
  return emit(doc);
}

std::map<std::string, ElementVerdict> read_checkpoint(const BinaryMatroid& m, const std::string& path) {
  std::map<std::string, ElementVerdict> out;
  std::ifstream in(path);
  if (!in) return out;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception&) {
      // A run interrupted mid-write leaves a truncated last line.
      continue;
    }
    ElementVerdict v = element_verdict_from_json(m, j);
    if (v.status == ElementStatus::Indeterminate) continue;
    out[v.element] = std::move(v);
  }
  return out;
}

int run_theorem(const BinaryMatroid& m, const GlobalOptions& g, const std::string& checkpoint) {
  TheoremOptions opts;
  opts.analysis = make_analysis(g);
  bool has_glue = true;
  for (const char* l : {"a", "b", "c", "d", "e", "f"}) has_glue = has_glue && m.find(l).has_value();
  if (has_glue) opts.first = {"a", "b", "c", "d", "e", "f"};

  std::ofstream log;
  if (!checkpoint.empty()) {
    opts.resume = read_checkpoint(m, checkpoint);
    log.open(checkpoint, std::ios::app);
    if (!log) throw InputError("cannot write checkpoint '" + checkpoint + "'");
    opts.on_element = [&log](const ElementVerdict& v) {
      if (v.status == ElementStatus::Indeterminate) return;
      log << to_json(v).dump() << '\n';
      log.flush();
    };
  }
  const TheoremReport r = theorem_verifier(m, opts);

  ReportDocument doc;
  doc.command = "theorem";
  if (r.indeterminate) {
    doc.verdict = Verdict::Indeterminate;
  } else if (!r.hypotheses_ok) {
    doc.verdict = Verdict::NotApplicable;
  } else if (!r.min4_ok || r.clause == CocircuitClause::Violated) {
    doc.verdict = Verdict::Fail;
  } else {
    doc.verdict = Verdict::Pass;
  }
  doc.body = describe(m, r);
  const bool ok = r.indeterminate || revalidate(m, r);
  doc.body.push_back(std::string("witnesses-revalidate: ") + (ok ? "yes" : "no"));
  doc.data["report"] = to_json(m, r);
  doc.data["witnesses_revalidate"] = ok;
  if (!ok) doc.verdict = Verdict::Indeterminate;
  return emit(doc);
}

int run_separations(const BinaryMatroid& m, const GlobalOptions& g, std::size_t lambda_bound, std::size_t min_side,
                    const std::string& strategy) {
  SearchBudget budget = make_budget(g);
  if (strategy == "exhaustive" || g.canonical) {
    budget.strategy = SearchStrategy::Exhaustive;
  } else if (strategy == "bnb") {
    budget.strategy = SearchStrategy::BranchAndBound;
  } else {
    throw InputError("unknown strategy '" + strategy + "'");
  }
  const SearchResult r = find_separation(m, lambda_bound, min_side, min_side, budget);
  ReportDocument doc;
  doc.command = "separations";
  doc.data["lambda_bound"] = lambda_bound;
  doc.data["min_side"] = min_side;
  doc.data["strategy"] = budget.strategy == SearchStrategy::Exhaustive ? "exhaustive" : "bnb";
  switch (r.status) {
    case SearchStatus::None:
      doc.verdict = Verdict::Pass;
      doc.body.push_back("separation: none");
      doc.data["witness"] = nullptr;
      break;
    case SearchStatus::Found:
      doc.verdict = Verdict::Fail;
      doc.body.push_back("separation: " + describe(m, *r.witness));
      doc.data["witness"] = to_json(m, *r.witness);
      break;
    case SearchStatus::Indeterminate:
      doc.verdict = Verdict::Indeterminate;
      doc.body.push_back("separation: budget exhausted after " + std::to_string(r.nodes) + " nodes");
      doc.data["witness"] = nullptr;
      break;
  }
  doc.data["nodes"] = r.nodes;
  return emit(doc);
}

int run_enumerate(const std::string& kind, const BinaryMatroid& m, std::size_t max_size) {
  ReportDocument doc;
  doc.command = "enumerate " + kind;
  doc.verdict = Verdict::Pass;
  std::vector<ElementSet> sets;
  if (kind == "triangles") {
    sets = triangles(m).triangles;
  } else if (kind == "triads") {
    sets = triads(m).triangles;
  } else if (kind == "cocircuits") {
    sets = cocircuits(m);
  } else if (kind == "circuits") {
    sets = circuits(m, max_size);
  } else if (kind == "fans") {
    const auto fans = find_4fans(m);
    Json list = Json::array();
    doc.body.push_back("count: " + std::to_string(fans.size()));
    for (const Fan& f : fans) {
      doc.body.push_back(m.format(f.elements()) + " triangle " + m.format(f.triangle) + " triad " +
                         m.format(f.triad));
      list.push_back(Json{{"elements", to_json(m, f.elements())},
                          {"triangle", to_json(m, f.triangle)},
                          {"triad", to_json(m, f.triad)}});
    }
    doc.data["count"] = fans.size();
    doc.data["fans"] = std::move(list);
    return emit(doc);
  } else {
    throw InputError("unknown enumeration '" + kind + "'");
  }
  std::sort(sets.begin(), sets.end(), LexLess{});
  doc.body.push_back("count: " + std::to_string(sets.size()));
  for (ElementSet s : sets) doc.body.push_back(m.format(s));
  doc.data["count"] = sets.size();
  doc.data["sets"] = sets_json(m, sets);
  return emit(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary matroid toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--budget-nodes", g.budget_nodes, "Search node limit per separation search");
  app.add_option("--budget-seconds", g.budget_seconds, "Time limit per separation search")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads for per-element checks")->check(CLI::Range(1u, 256u));
  app.add_flag("--canonical", g.canonical, "Byte-stable output: sequential, exhaustive where it matters");

  std::string input = "-";
  std::string labels;

  auto* gen = app.add_subcommand("gen", "Emit a catalog matroid or a graphic matroid");
  std::string gen_id;
  std::size_t gen_n = 0;
  std::string gen_edges;
  gen->add_option("id", gen_id, "Catalog name");
  gen->add_option("--n", gen_n, "Wheel size");
  gen->add_option("--edges", gen_edges, "Edge-list file ('-' for stdin)");

  auto* check = app.add_subcommand("check", "Decide a property");
  std::string check_kind;
  check->add_option("kind", check_kind, "i4c | 3conn | no-odd-cocircuits | census3")
      ->required()
      ->check(CLI::IsMember({"i4c", "3conn", "no-odd-cocircuits", "census3"}));
  check->add_option("input", input, "Matroid file ('-' for stdin)");

  auto* theorem = app.add_subcommand("theorem", "Check the good-contraction theorem on an instance");
  std::string checkpoint;
  theorem->add_option("input", input, "Matroid file ('-' for stdin)");
  theorem->add_option("--checkpoint", checkpoint, "Per-element progress file, appended and resumed");

  auto* audit = app.add_subcommand("audit", "Run a lemma audit");
  std::string audit_name;
  audit
      ->add_option("name", audit_name,
                   "odd-cocircuit | contraction-3conn | four-cocircuit | triangle-union-cocircuit | "
                   "spike-cocircuit | small-classification")
      ->required();
  audit->add_option("input", input, "Matroid file ('-' for stdin)");

  std::map<std::string, CLI::App*> transforms;
  for (const char* name : {"dual", "delete", "contract", "simplify", "restrict", "canonical"}) {
    auto* t = app.add_subcommand(name, std::string("Transform: ") + name);
    t->add_option("input", input, "Matroid file ('-' for stdin)");
    if (std::string(name) == "delete" || std::string(name) == "contract" || std::string(name) == "restrict") {
      t->add_option("-e,--elements", labels, "Comma-separated labels")->required();
    }
    transforms[name] = t;
  }

  auto* seps = app.add_subcommand("separations", "Search for a separation");
  std::size_t sep_lambda = 2;
  std::size_t sep_min = 1;
  std::string sep_strategy = "bnb";
  seps->add_option("input", input, "Matroid file ('-' for stdin)");
  seps->add_option("--lambda", sep_lambda, "Largest allowed lambda")->required();
  seps->add_option("--min-side", sep_min, "Least size of each side")->required()->check(CLI::PositiveNumber);
  seps->add_option("--strategy", sep_strategy, "exhaustive | bnb")->check(CLI::IsMember({"exhaustive", "bnb"}));

  auto* enumerate = app.add_subcommand("enumerate", "List triangles, triads, circuits, cocircuits or fans");
  std::string enum_kind;
  std::size_t enum_max = 6;
  enumerate->add_option("kind", enum_kind, "triangles | triads | cocircuits | circuits | fans")
      ->required()
      ->check(CLI::IsMember({"triangles", "triads", "cocircuits", "circuits", "fans"}));
  enumerate->add_option("input", input, "Matroid file ('-' for stdin)");
  enumerate->add_option("--max-size", enum_max, "Largest circuit size for 'circuits'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      if (!gen_edges.empty()) {
        if (!gen_id.empty()) throw InputError("give either a catalog name or --edges, not both");
        return emit_matroid(graphic(parse_edge_list(read_input(gen_edges))), g);
      }
      if (gen_id.empty()) throw InputError("gen needs a catalog name or --edges");
      return emit_matroid(catalog(CatalogId::parse(gen_id, gen_n)), g);
    }
    if (*check) return run_check(check_kind, load(input), g);
    if (*theorem) return run_theorem(load(input), g, checkpoint);
    if (*audit) return run_audit(audit_name, load(input), g);
    if (*seps) return run_separations(load(input), g, sep_lambda, sep_min, sep_strategy);
    if (*enumerate) return run_enumerate(enum_kind, load(input), enum_max);
    for (const auto& [name, sub] : transforms) {
      if (!*sub) continue;
      const BinaryMatroid m = load(input);
      const auto chosen = [&] { return m.resolve(split_labels(labels)); };
      if (name == "dual") return emit_matroid(dual(m), g);
      if (name == "delete") return emit_matroid(deletion(m, chosen()), g);
      if (name == "contract") return emit_matroid(contraction(m, chosen()), g);
      if (name == "restrict") return emit_matroid(restriction(m, chosen()), g);
      if (name == "simplify") return emit_matroid(simplify(m).matroid, g);
      if (name == "canonical") return emit_matroid(BinaryMatroid(rref(m.matrix()), m.labels()), g);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 2;
}
