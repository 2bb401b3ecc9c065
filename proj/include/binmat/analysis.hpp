#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "binmat/connectivity.hpp"
#include "binmat/matroid.hpp"

namespace binmat {

struct CensusReport {
  std::vector<std::size_t> per_element;
  /// Set iff every element lies in the same number of triangles.
  std::optional<std::size_t> uniform_k;
  std::size_t total_triangles = 0;
};

/// Triangle counts per element. When the census is uniform with k = 3 the
/// total equals |E|; that identity is enforced here.
CensusReport triangle_census(const BinaryMatroid& m);

enum class Verdict { Pass, Fail, NotApplicable, Indeterminate };
std::string to_string(Verdict v);

struct AuditWitness {
  /// odd-cocircuit, triad, failing-element, cocircuit, configuration
  std::string kind;
  /// Elements of the audited matroid.
  ElementSet elements;
  /// For failing-element: the separation found in si(M/e), indexed in that matroid.
  std::optional<SeparationWitness> separation;
  std::string detail;
};

struct AuditReport {
  std::string name;
  bool applicable = false;
  /// Present iff applicable.
  std::optional<bool> passed;
  std::vector<AuditWitness> witnesses;
  std::vector<std::string> notes;

  Verdict verdict() const;
};

struct AnalysisOptions {
  SearchBudget budget;
  /// Per-element checks may run on this many threads; results do not depend on it.
  unsigned threads = 1;
};

/// Applicable to internally 4-connected matroids with every element in
/// three triangles; fails on any odd cocircuit. Odd cocircuits are listed
/// either way.
AuditReport odd_cocircuit_audit(const BinaryMatroid& m, const AnalysisOptions& options = {});

/// Applicable to internally 4-connected matroids; passes iff si(M/e) is
/// 3-connected for every non-loop e.
AuditReport contraction_3conn_audit(const BinaryMatroid& m, const AnalysisOptions& options = {});

/// The standing hypothesis of the small-cocircuit audits: every element in
/// three triangles, internally 4-connected, at least 14 elements.
bool small_cocircuit_hypothesis(const BinaryMatroid& m, const AnalysisOptions& options = {});

/// For every 4-cocircuit C* and e in C*: si(M/e) is internally 4-connected
/// with no triads.
AuditReport four_cocircuit_audit(const BinaryMatroid& m, const AnalysisOptions& options = {});

/// For every e whose three triangles, minus e, form a cocircuit C*: every
/// x in C* has si(M/x) internally 4-connected.
AuditReport triangle_union_cocircuit_audit(const BinaryMatroid& m, const AnalysisOptions& options = {});

/// For every 6-cocircuit that is a union of two 4-circuits meeting in two
/// elements: every x in it has si(M/x) internally 4-connected.
AuditReport spike_cocircuit_audit(const BinaryMatroid& m, const AnalysisOptions& options = {});

/// Applicable to internally 4-connected matroids with at most 13 elements,
/// each in three triangles; passes iff isomorphic to F7 or M(K5).
AuditReport small_classification_check(const BinaryMatroid& m, const AnalysisOptions& options = {});

/// Rechecks every witness of a report from scratch against m.
bool revalidate(const BinaryMatroid& m, const AuditReport& report);

enum class ElementStatus { Good, Bad, Loop, Indeterminate };
std::string to_string(ElementStatus s);

/// Whether si(M/e) is internally 4-connected.
struct ElementVerdict {
  std::string element;
  ElementStatus status = ElementStatus::Indeterminate;
  /// For Bad: the separation in si(M/e), and its X side by label.
  std::optional<SeparationWitness> witness;
  std::vector<std::string> witness_side;
};

ElementVerdict check_element(const BinaryMatroid& m, std::size_t e, const SearchBudget& budget = {});

enum class CocircuitClause { NotTriggered, Satisfied, Violated, AmbiguousSize5 };
std::string to_string(CocircuitClause c);

struct TheoremReport {
  bool internally_4_connected = false;
  std::optional<std::size_t> census_k;
  bool hypotheses_ok = false;
  /// In element order.
  std::vector<ElementVerdict> elements;
  ElementSet good;
  ElementSet bad;
  bool min4_ok = false;
  CocircuitClause clause = CocircuitClause::NotTriggered;
  /// The 4-cocircuit containing the good elements, when the clause is satisfied.
  std::optional<ElementSet> clause_cocircuit;
  /// Some search ran out of budget; the report is partial.
  bool indeterminate = false;
};

struct TheoremOptions {
  AnalysisOptions analysis;
  /// Labels to evaluate before the rest. Only affects scheduling.
  std::vector<std::string> first;
  /// Previously computed verdicts by label; these elements are not rechecked.
  std::map<std::string, ElementVerdict> resume;
  /// Called once per freshly computed element, serialized by the verifier.
  std::function<void(const ElementVerdict&)> on_element;
};

/// At least four elements e with si(M/e) internally 4-connected, and when
/// fewer than six, those elements lie in a 4-cocircuit.
TheoremReport theorem_verifier(const BinaryMatroid& m, const TheoremOptions& options = {});

bool revalidate(const BinaryMatroid& m, const TheoremReport& report);

/// Runs fn(0..count-1) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace binmat
