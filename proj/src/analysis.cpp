#include "binmat/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "binmat/constructions.hpp"
#include "binmat/error.hpp"

namespace binmat {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::size_t failure_index = count;
  {
    std::vector<std::jthread> workers;
    const std::size_t n = std::min<std::size_t>(threads, count);
    for (std::size_t w = 0; w < n; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            // The error of the lowest failing index is the one rethrown.
            std::lock_guard lock(failure_mutex);
            if (i < failure_index) {
              failure_index = i;
              failure = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

CensusReport triangle_census(const BinaryMatroid& m) {
  const TriangleList t = triangles(m);
  CensusReport out;
  out.total_triangles = t.triangles.size();
  out.per_element.reserve(m.size());
  for (std::size_t e = 0; e < m.size(); ++e) out.per_element.push_back(t.count(e));
  if (!out.per_element.empty() &&
      std::all_of(out.per_element.begin(), out.per_element.end(),
                  [&](std::size_t c) { return c == out.per_element.front(); })) {
    out.uniform_k = out.per_element.front();
  }
  if (out.uniform_k == 3 && out.total_triangles != m.size()) {
    throw Error("census invariant broken: uniform 3 but " + std::to_string(out.total_triangles) +
                " triangles on " + std::to_string(m.size()) + " elements");
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Verdict AuditReport::verdict() const {
  if (!applicable) return Verdict::NotApplicable;
  if (!passed) return Verdict::Indeterminate;
  return *passed ? Verdict::Pass : Verdict::Fail;
}

std::string to_string(ElementStatus s) {
  switch (s) {
    case ElementStatus::Good: return "good";
    case ElementStatus::Bad: return "bad";
    case ElementStatus::Loop: return "loop";
    case ElementStatus::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string to_string(CocircuitClause c) {
  switch (c) {
    case CocircuitClause::NotTriggered: return "not-triggered";
    case CocircuitClause::Satisfied: return "satisfied";
    case CocircuitClause::Violated: return "violated";
    case CocircuitClause::AmbiguousSize5: return "ambiguous-size-5";
  }
  return "not-triggered";
}

namespace {

bool is_i4c(const BinaryMatroid& m, const AnalysisOptions& options) {
  return is_internally_4_connected(m, options.budget).value;
}

bool census3(const BinaryMatroid& m) { return triangle_census(m).uniform_k == 3; }

// What the audits need to know about si(M/e).
struct ContractionFacts {
  bool loop = false;
  bool three_connected = false;
  bool i4c = false;
  std::optional<SeparationWitness> separation;
  std::size_t triad_count = 0;
};

ContractionFacts contraction_facts(const BinaryMatroid& m, std::size_t e, bool want_i4c,
                                   const AnalysisOptions& options) {
  ContractionFacts f;
  if (m.column(e) == 0) {
    f.loop = true;
    return f;
  }
  const BinaryMatroid si = si_contract(m, e).matroid;
  if (auto small = find_small_separation(si, 3, options.budget)) {
    f.separation = small;
    return f;
  }
  f.three_connected = true;
  if (want_i4c) {
    const I4cResult r = is_internally_4_connected(si, options.budget);
    f.i4c = r.value;
    f.separation = r.witness;
    f.triad_count = triads(si).triangles.size();
  }
  return f;
}

std::vector<std::optional<ContractionFacts>> facts_for(const BinaryMatroid& m, ElementSet which, bool want_i4c,
                                                       const AnalysisOptions& options) {
  std::vector<std::optional<ContractionFacts>> out(m.size());
  const std::vector<std::size_t> idx = which.indices();
  parallel_for(idx.size(), options.threads,
               [&](std::size_t k) { out[idx[k]] = contraction_facts(m, idx[k], want_i4c, options); });
  return out;
}

AuditWitness failing_element(const BinaryMatroid& m, std::size_t e, const ContractionFacts& f,
                             const std::string& why) {
  AuditWitness w;
  w.kind = "failing-element";
  w.elements = ElementSet{e};
  w.separation = f.separation;
  w.detail = "si(M/" + m.labels()[e] + ") " + why;
  return w;
}

void not_applicable_note(AuditReport& r, const std::string& why) {
  r.notes.push_back("not applicable: " + why);
}

// Checks si(M/x) is internally 4-connected for every x in `targets`, adding
// failing-element witnesses. Returns whether all passed.
bool contractions_i4c(const BinaryMatroid& m, ElementSet targets, AuditReport& report,
                      const AnalysisOptions& options) {
  const auto facts = facts_for(m, targets, true, options);
  bool ok = true;
  for (std::size_t x : targets) {
    const ContractionFacts& f = *facts[x];
    if (f.loop) {
      report.notes.push_back("skipped loop " + m.labels()[x]);
      continue;
    }
    if (!f.i4c) {
      ok = false;
      report.witnesses.push_back(failing_element(m, x, f, "is not internally 4-connected"));
    }
  }
  return ok;
}

std::string describe_hypothesis_failure(const BinaryMatroid& m, const AnalysisOptions& options) {
  const CensusReport c = triangle_census(m);
  if (c.uniform_k != 3) return "not every element is in exactly three triangles";
  if (m.size() < 14) return "fewer than 14 elements";
  if (!is_i4c(m, options)) return "not internally 4-connected";
  return "";
}

}  // namespace

bool small_cocircuit_hypothesis(const BinaryMatroid& m, const AnalysisOptions& options) {
  return m.size() >= 14 && census3(m) && is_i4c(m, options);
}

AuditReport odd_cocircuit_audit(const BinaryMatroid& m, const AnalysisOptions& options) {
  AuditReport r;
  r.name = "odd-cocircuit";
  for (ElementSet c : cocircuits(m)) {
    if (c.size() % 2 == 1) r.witnesses.push_back({"odd-cocircuit", c, std::nullopt, m.format(c)});
  }
  if (!census3(m)) {
    not_applicable_note(r, "not every element is in exactly three triangles");
  } else if (!is_i4c(m, options)) {
    not_applicable_note(r, "not internally 4-connected");
  } else {
    r.applicable = true;
    r.passed = r.witnesses.empty();
  }
  return r;
}

AuditReport contraction_3conn_audit(const BinaryMatroid& m, const AnalysisOptions& options) {
  AuditReport r;
  r.name = "contraction-3conn";
  const auto facts = facts_for(m, m.ground(), false, options);
  bool ok = true;
  for (std::size_t e = 0; e < m.size(); ++e) {
    const ContractionFacts& f = *facts[e];
    if (f.loop) {
      r.notes.push_back("skipped loop " + m.labels()[e]);
    } else if (!f.three_connected) {
      ok = false;
      r.witnesses.push_back(failing_element(m, e, f, "is not 3-connected"));
    }
  }
  if (!is_i4c(m, options)) {
    not_applicable_note(r, "not internally 4-connected");
  } else {
    r.applicable = true;
    r.passed = ok;
  }
  return r;
}

AuditReport four_cocircuit_audit(const BinaryMatroid& m, const AnalysisOptions& options) {
  AuditReport r;
  r.name = "four-cocircuit";
  ElementSet targets;
  for (ElementSet c : cocircuits(m)) {
    if (c.size() != 4) continue;
    r.witnesses.push_back({"cocircuit", c, std::nullopt, "4-cocircuit " + m.format(c)});
    targets |= c;
  }
  bool ok = true;
  const auto facts = facts_for(m, targets, true, options);
  for (std::size_t e : targets) {
    const ContractionFacts& f = *facts[e];
    if (f.loop) continue;
    if (!f.i4c) {
      ok = false;
      r.witnesses.push_back(failing_element(m, e, f, "is not internally 4-connected"));
    } else if (f.triad_count > 0) {
      ok = false;
      r.witnesses.push_back(failing_element(m, e, f, "has " + std::to_string(f.triad_count) + " triads"));
    }
  }
  if (targets.empty()) r.notes.push_back("no 4-cocircuits");
  if (const std::string why = describe_hypothesis_failure(m, options); !why.empty()) {
    not_applicable_note(r, why);
  } else {
    r.applicable = true;
    r.passed = ok;
  }
  return r;
}

AuditReport triangle_union_cocircuit_audit(const BinaryMatroid& m, const AnalysisOptions& options) {
  AuditReport r;
  r.name = "triangle-union-cocircuit";
  const TriangleList t = triangles(m);
  ElementSet targets;
  for (std::size_t e = 0; e < m.size(); ++e) {
    if (t.count(e) != 3) continue;
    ElementSet u;
    for (std::size_t pos : t.per_element[e]) u |= t.triangles[pos];
    u = u.without(e);
    if (u.size() == 6 && is_cocircuit(m, u)) {
      r.witnesses.push_back(
          {"configuration", u, std::nullopt, "triangles at " + m.labels()[e] + " leave cocircuit " + m.format(u)});
      targets |= u;
    }
  }
  if (targets.empty()) r.notes.push_back("no element has its triangles forming a cocircuit");
  const bool ok = contractions_i4c(m, targets, r, options);
  if (const std::string why = describe_hypothesis_failure(m, options); !why.empty()) {
    not_applicable_note(r, why);
  } else {
    r.applicable = true;
    r.passed = ok;
  }
  return r;
}

AuditReport spike_cocircuit_audit(const BinaryMatroid& m, const AnalysisOptions& options) {
  AuditReport r;
  r.name = "spike-cocircuit";
  ElementSet targets;
  for (ElementSet c : cocircuits(m)) {
    if (c.size() != 6) continue;
    // Look for two 4-circuits inside c meeting in exactly two elements.
    std::vector<ElementSet> quads;
    const std::vector<std::size_t> idx = c.indices();
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = a + 1; b < 6; ++b) {
        const ElementSet pair_out{idx[a], idx[b]};
        const ElementSet q = c - pair_out;
        if (is_circuit(m, q)) quads.push_back(q);
      }
    bool spike = false;
    for (std::size_t i = 0; i < quads.size() && !spike; ++i)
      for (std::size_t j = i + 1; j < quads.size() && !spike; ++j) spike = (quads[i] & quads[j]).size() == 2;
    if (spike) {
      r.witnesses.push_back({"configuration", c, std::nullopt, "6-cocircuit " + m.format(c) + " of 4-circuit pairs"});
      targets |= c;
    }
  }
  if (targets.empty()) r.notes.push_back("no 6-cocircuit of the required shape");
  const bool ok = contractions_i4c(m, targets, r, options);
  if (const std::string why = describe_hypothesis_failure(m, options); !why.empty()) {
    not_applicable_note(r, why);
  } else {
    r.applicable = true;
    r.passed = ok;
  }
  return r;
}

AuditReport small_classification_check(const BinaryMatroid& m, const AnalysisOptions& options) {
  AuditReport r;
  r.name = "small-classification";
  if (m.size() > 13) {
    not_applicable_note(r, "more than 13 elements");
    return r;
  }
  if (!census3(m)) {
    not_applicable_note(r, "not every element is in exactly three triangles");
    return r;
  }
  if (!is_i4c(m, options)) {
    not_applicable_note(r, "not internally 4-connected");
    return r;
  }
  r.applicable = true;
  if (is_isomorphic(m, catalog(CatalogId::parse("f7")))) {
    r.notes.push_back("isomorphic to F7");
    r.passed = true;
  } else if (is_isomorphic(m, catalog(CatalogId::parse("mk5")))) {
    r.notes.push_back("isomorphic to M(K5)");
    r.passed = true;
  } else {
    r.passed = false;
  }
  return r;
}

bool revalidate(const BinaryMatroid& m, const AuditReport& report) {
  if (report.passed.has_value() != report.applicable) return false;
  for (const AuditWitness& w : report.witnesses) {
    if (!w.elements.subset_of(m.ground())) return false;
    if (w.kind == "odd-cocircuit") {
      if (!is_cocircuit(m, w.elements) || w.elements.size() % 2 == 0) return false;
    } else if (w.kind == "cocircuit" || w.kind == "configuration") {
      if (!is_cocircuit(m, w.elements)) return false;
    } else if (w.kind == "failing-element") {
      if (w.elements.size() != 1) return false;
      const BinaryMatroid si = si_contract(m, w.elements.front()).matroid;
      if (w.separation) {
        if (!revalidate(si, *w.separation)) return false;
      } else if (triads(si).triangles.empty()) {
        return false;
      }
    } else {
      return false;
    }
  }
  return true;
}

ElementVerdict check_element(const BinaryMatroid& m, std::size_t e, const SearchBudget& budget) {
  ElementVerdict v;
  v.element = m.labels().at(e);
  if (m.column(e) == 0) {
    v.status = ElementStatus::Loop;
    return v;
  }
  const BinaryMatroid si = si_contract(m, e).matroid;
  try {
    const I4cResult r = is_internally_4_connected(si, budget);
    v.status = r.value ? ElementStatus::Good : ElementStatus::Bad;
    v.witness = r.witness;
    if (r.witness) v.witness_side = si.names(r.witness->side_x);
  } catch (const SearchExhausted&) {
    v.status = ElementStatus::Indeterminate;
  }
  return v;
}

TheoremReport theorem_verifier(const BinaryMatroid& m, const TheoremOptions& options) {
  TheoremReport report;
  const SearchBudget& budget = options.analysis.budget;
  report.census_k = triangle_census(m).uniform_k;
  try {
    report.internally_4_connected = is_internally_4_connected(m, budget).value;
  } catch (const SearchExhausted&) {
    report.indeterminate = true;
  }
  report.hypotheses_ok = report.internally_4_connected && report.census_k == 3;

  std::vector<std::size_t> schedule;
  for (const std::string& label : options.first) {
    if (auto i = m.find(label); i && std::find(schedule.begin(), schedule.end(), *i) == schedule.end()) {
      schedule.push_back(*i);
    }
  }
  for (std::size_t e = 0; e < m.size(); ++e) {
    if (std::find(schedule.begin(), schedule.end(), e) == schedule.end()) schedule.push_back(e);
  }

  report.elements.resize(m.size());
  std::mutex callback_mutex;
  parallel_for(schedule.size(), options.analysis.threads, [&](std::size_t k) {
    const std::size_t e = schedule[k];
    if (auto it = options.resume.find(m.labels()[e]); it != options.resume.end()) {
      report.elements[e] = it->second;
      return;
    }
    report.elements[e] = check_element(m, e, budget);
    if (options.on_element) {
      std::lock_guard lock(callback_mutex);
      options.on_element(report.elements[e]);
    }
  });

  bool partial = false;
  for (std::size_t e = 0; e < m.size(); ++e) {
    switch (report.elements[e].status) {
      case ElementStatus::Good: report.good = report.good.with(e); break;
      case ElementStatus::Bad: report.bad = report.bad.with(e); break;
      case ElementStatus::Loop: break;
      case ElementStatus::Indeterminate: partial = true; break;
    }
  }
  report.indeterminate = report.indeterminate || partial;
  report.min4_ok = report.good.size() >= 4;
  if (partial) return report;

  const std::size_t s = report.good.size();
  if (s >= 6) {
    report.clause = CocircuitClause::NotTriggered;
  } else if (s == 5) {
    report.clause = CocircuitClause::AmbiguousSize5;
  } else {
    // Smallest 4-cocircuit (lexicographically) containing the good elements.
    std::optional<ElementSet> found;
    const std::vector<std::size_t> rest = (m.ground() - report.good).indices();
    const std::size_t need = 4 - s;
    auto search = [&](auto&& self, std::size_t from, std::size_t depth, ElementSet acc) -> void {
      if (found) return;
      if (depth == need) {
        if (is_cocircuit(m, acc)) found = acc;
        return;
      }
      for (std::size_t i = from; i < rest.size() && !found; ++i) self(self, i + 1, depth + 1, acc.with(rest[i]));
    };
    search(search, 0, 0, report.good);
    report.clause = found ? CocircuitClause::Satisfied : CocircuitClause::Violated;
    report.clause_cocircuit = found;
  }
  return report;
}

bool revalidate(const BinaryMatroid& m, const TheoremReport& report) {
  if (report.elements.size() != m.size()) return false;
  if ((report.good & report.bad) != ElementSet{}) return false;
  for (std::size_t e = 0; e < m.size(); ++e) {
    const ElementVerdict& v = report.elements[e];
    if (v.element != m.labels()[e]) return false;
    if (v.status == ElementStatus::Bad) {
      if (!report.bad.contains(e) || !v.witness) return false;
      const BinaryMatroid si = si_contract(m, e).matroid;
      if (!revalidate(si, *v.witness) || si.names(v.witness->side_x) != v.witness_side) return false;
    }
    if (v.status == ElementStatus::Good && !report.good.contains(e)) return false;
  }
  if (report.min4_ok != (report.good.size() >= 4)) return false;
  if (report.clause == CocircuitClause::Satisfied) {
    if (!report.clause_cocircuit || !report.good.subset_of(*report.clause_cocircuit) ||
        report.clause_cocircuit->size() != 4 || !is_cocircuit(m, *report.clause_cocircuit)) {
      return false;
    }
  }
  return true;
}

}  // namespace binmat
