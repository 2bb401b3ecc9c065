#include "binmat/connectivity.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "binmat/error.hpp"

namespace binmat {

std::size_t lambda(const BinaryMatroid& m, ElementSet x) {
  if (!x.subset_of(m.ground())) throw InputError("element set out of range");
  const std::size_t value = m.rank(x) + m.rank(m.ground() - x) - m.rank();
  assert(value == m.rank(x) + corank(m, x) - x.size());
  return value;
}

bool is_k_separating(const BinaryMatroid& m, ElementSet x, std::size_t k) {
  if (k == 0) throw InputError("k must be positive");
  return lambda(m, x) <= k - 1;
}

bool is_k_separation(const BinaryMatroid& m, ElementSet x, std::size_t k) {
  return is_k_separating(m, x, k) && x.size() >= k && (m.ground() - x).size() >= k;
}

std::string to_string(SeparationKind kind) {
  switch (kind) {
    case SeparationKind::KSeparation: return "k-separation";
    case SeparationKind::Violator43: return "violator-4-3";
    case SeparationKind::Fan4: return "fan-4";
    case SeparationKind::Sequential: return "sequential";
  }
  return "unknown";
}

std::size_t separation_order(std::size_t lambda, std::size_t size_x, std::size_t size_y) {
  return std::min(size_x, size_y) >= lambda + 1 ? lambda + 1 : 0;
}

bool revalidate(const BinaryMatroid& m, const SeparationWitness& w) {
  if (!w.side_x.subset_of(m.ground())) return false;
  const ElementSet y = m.ground() - w.side_x;
  if (lambda(m, w.side_x) != w.lambda) return false;
  if (w.side_x.size() != w.size_x || y.size() != w.size_y) return false;
  switch (w.kind) {
    case SeparationKind::KSeparation:
      return w.k == separation_order(w.lambda, w.size_x, w.size_y);
    case SeparationKind::Violator43:
      return w.lambda <= 2 && w.size_x >= 4 && w.size_y >= 4;
    case SeparationKind::Fan4: {
      if (w.size_x != 4 || w.size_y < 4 || w.lambda > 2) return false;
      const auto fans = find_4fans(m);
      return std::any_of(fans.begin(), fans.end(), [&](const Fan& f) { return f.elements() == w.side_x; });
    }
    case SeparationKind::Sequential:
      return is_sequential(m, w.side_x).sequential;
  }
  return false;
}

namespace {

SeparationWitness make_witness(const BinaryMatroid& m, ElementSet x, SeparationKind kind) {
  SeparationWitness w;
  w.side_x = x;
  w.lambda = lambda(m, x);
  w.kind = kind;
  w.size_x = x.size();
  w.size_y = m.size() - x.size();
  w.k = separation_order(w.lambda, w.size_x, w.size_y);
  return w;
}

class Clock {
 public:
  explicit Clock(const SearchBudget& budget)
      : node_limit_(budget.node_limit), deadline_(std::chrono::steady_clock::now() + budget.time_limit) {}

  /// Counts one node; false once the budget is spent.
  bool tick() {
    ++nodes_;
    if (nodes_ > node_limit_) return false;
    if ((nodes_ & 0x3FF) == 0 && std::chrono::steady_clock::now() > deadline_) return false;
    return true;
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t nodes_ = 0;
  std::uint64_t node_limit_;
  std::chrono::steady_clock::time_point deadline_;
};

// One side of a partial partition: its members, an elimination state of
// their columns, and the elements that state already spans.
struct Side {
  ElementSet members;
  XorBasis basis;
  ElementSet span;

  void add(const BinaryMatroid& m, std::size_t e) {
    members = members.with(e);
    if (basis.insert(m.column(e))) {
      for (std::size_t i : m.ground() - span) {
        if (basis.spans(m.column(i))) span = span.with(i);
      }
    }
  }
};

struct Partial {
  Side x;
  Side y;
  Side both;  // X and Y together
  ElementSet open;

  // Connectivity of X within the restriction to the assigned elements:
  // nondecreasing as elements are assigned, equal to lambda(X) once every
  // element is placed, and at least r(X) + r(Y) - r(M).
  std::size_t bound() const { return x.basis.rank() + y.basis.rank() - both.basis.rank(); }
};

class PartitionSearch {
 public:
  PartitionSearch(const BinaryMatroid& m, std::size_t min_x, std::size_t min_y, Clock& clock)
      : m_(m), min_x_(min_x), min_y_(min_y), clock_(clock), priority_(m.size(), 0) {
    // Branch on elements in many triangles first.
    const TriangleList tri = triangles(m);
    std::vector<std::size_t> order(m.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return tri.count(a) > tri.count(b); });
    for (std::size_t p = 0; p < order.size(); ++p) priority_[order[p]] = p;
  }

  /// nullopt with exhausted() set means the budget ran out.
  std::optional<ElementSet> run(std::size_t bound) {
    bound_ = bound;
    exhausted_ = false;
    Partial root;
    root.open = m_.ground();
    // Loops are spanned by every side, even an empty one.
    root.x.span = root.y.span = root.both.span = loops(m_);
    if (min_x_ == min_y_ && m_.size() > 0) {
      // Element 0 is fixed in X.
      place(root, 0, true);
    }
    return visit(root);
  }

  bool exhausted() const { return exhausted_; }

 private:
  void place(Partial& p, std::size_t e, bool to_x) {
    (to_x ? p.x : p.y).add(m_, e);
    p.both.add(m_, e);
    p.open = p.open.without(e);
  }

  bool sizes_feasible(const Partial& p) const {
    const std::size_t u = p.open.size();
    return p.x.members.size() + u >= min_x_ && p.y.members.size() + u >= min_y_ &&
           p.x.members.size() + p.y.members.size() + u >= min_x_ + min_y_;
  }

  std::size_t pick(ElementSet candidates) const {
    std::size_t best = candidates.front();
    for (std::size_t e : candidates) {
      if (priority_[e] < priority_[best]) best = e;
    }
    return best;
  }

  std::optional<ElementSet> visit(Partial& p) {
    if (!clock_.tick()) {
      exhausted_ = true;
      return std::nullopt;
    }
    const std::size_t lb = p.bound();
    if (lb > bound_ || !sizes_feasible(p)) return std::nullopt;

    const ElementSet free = p.open & p.x.span & p.y.span;
    ElementSet costly = (p.open & p.both.span) - free;
    if (lb == bound_ && !costly.empty()) {
      // No slack left: anything spanned by the assigned elements must go to
      // a side that already spans it.
      if (!(costly - p.x.span - p.y.span).empty()) return std::nullopt;
      for (std::size_t e : costly) {
        const bool to_x = p.x.span.contains(e);
        (to_x ? p.x : p.y).members = (to_x ? p.x : p.y).members.with(e);
        p.both.members = p.both.members.with(e);
        p.open = p.open.without(e);
      }
      if (!sizes_feasible(p)) return std::nullopt;
      costly = ElementSet{};
    }

    std::size_t e = 0;
    if (!costly.empty()) {
      const ElementSet neither = costly - p.x.span - p.y.span;
      e = pick(neither.empty() ? costly : neither);
    } else if (const ElementSet outside = p.open - p.both.span; !outside.empty()) {
      e = pick(outside);
    } else {
      return complete(p);
    }

    const bool x_cheaper = p.x.span.contains(e) || !p.y.span.contains(e);
    for (const bool to_x : {x_cheaper, !x_cheaper}) {
      Partial child = p;
      place(child, e, to_x);
      if (auto found = visit(child)) return found;
      if (exhausted_) return std::nullopt;
    }
    return std::nullopt;
  }

  // Only elements spanned by both sides remain; they never change a rank.
  std::optional<ElementSet> complete(const Partial& p) const {
    ElementSet x = p.x.members;
    for (std::size_t e : p.open) {
      if (x.size() >= min_x_) break;
      x = x.with(e);
    }
    const std::size_t y_size = m_.size() - x.size();
    if (x.size() < min_x_ || y_size < min_y_) return std::nullopt;
    return x;
  }

  const BinaryMatroid& m_;
  std::size_t min_x_;
  std::size_t min_y_;
  Clock& clock_;
  std::vector<std::size_t> priority_;
  std::size_t bound_ = 0;
  bool exhausted_ = false;
};

SearchResult exhaustive_search(const BinaryMatroid& m, std::size_t lambda_bound, std::size_t min_x,
                               std::size_t min_y, Clock& clock) {
  SearchResult result;
  const std::size_t n = m.size();
  if (n >= 64) throw CapacityError("exhaustive search needs fewer than 64 elements");
  const bool symmetric = min_x == min_y && n > 0;
  const std::size_t free_bits = symmetric ? n - 1 : n;
  const std::uint64_t count = std::uint64_t{1} << free_bits;
  std::optional<ElementSet> best;
  std::size_t best_lambda = 0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (!clock.tick()) {
      result.status = SearchStatus::Indeterminate;
      result.nodes = clock.nodes();
      return result;
    }
    const ElementSet x(symmetric ? (mask << 1) | 1U : mask);
    if (x.size() < min_x || n - x.size() < min_y) continue;
    const std::size_t l = lambda(m, x);
    if (l > lambda_bound) continue;
    if (!best || l < best_lambda || (l == best_lambda && lex_less(x, *best))) {
      best = x;
      best_lambda = l;
    }
  }
  result.nodes = clock.nodes();
  if (best) {
    result.status = SearchStatus::Found;
    result.witness = make_witness(m, *best, SeparationKind::KSeparation);
  }
  return result;
}

}  // namespace

SearchResult find_separation(const BinaryMatroid& m, std::size_t lambda_bound, std::size_t min_x,
                             std::size_t min_y, const SearchBudget& budget) {
  if (min_x == 0 || min_y == 0) throw InputError("minimum side sizes must be positive");
  Clock clock(budget);
  if (budget.strategy == SearchStrategy::Exhaustive) {
    return exhaustive_search(m, lambda_bound, min_x, min_y, clock);
  }
  SearchResult result;
  PartitionSearch search(m, min_x, min_y, clock);
  // Deepening on the bound makes the witness lambda-minimal.
  for (std::size_t b = 0; b <= lambda_bound; ++b) {
    const auto x = search.run(b);
    if (search.exhausted()) {
      result.status = SearchStatus::Indeterminate;
      break;
    }
    if (x) {
      result.status = SearchStatus::Found;
      result.witness = make_witness(m, *x, SeparationKind::KSeparation);
      break;
    }
  }
  result.nodes = clock.nodes();
  return result;
}

std::optional<SeparationWitness> find_small_separation(const BinaryMatroid& m, std::size_t n,
                                                       const SearchBudget& budget) {
  if (n < 2 || n > 4) throw InputError("connectivity order must be 2, 3 or 4");
  for (std::size_t k = 1; k < n; ++k) {
    const SearchResult r = find_separation(m, k - 1, k, k, budget);
    if (r.status == SearchStatus::Indeterminate) {
      throw SearchExhausted("search budget exhausted looking for a " + std::to_string(k) + "-separation");
    }
    if (r.witness) return r.witness;
  }
  return std::nullopt;
}

bool is_n_connected(const BinaryMatroid& m, std::size_t n, const SearchBudget& budget) {
  return !find_small_separation(m, n, budget).has_value();
}

SearchResult find_43_violator(const BinaryMatroid& m, const SearchBudget& budget) {
  SearchResult r = find_separation(m, 2, 4, 4, budget);
  if (r.witness) r.witness->kind = SeparationKind::Violator43;
  return r;
}

I4cResult is_internally_4_connected(const BinaryMatroid& m, const SearchBudget& budget) {
  if (auto small = find_small_separation(m, 3, budget)) return {false, small};
  // A 4-fan is a (4,3)-violator as soon as the other side has 4 elements.
  if (m.size() >= 8) {
    const auto fans = find_4fans(m);
    if (!fans.empty()) return {false, make_witness(m, fans.front().elements(), SeparationKind::Fan4)};
  }
  const SearchResult r = find_43_violator(m, budget);
  if (r.status == SearchStatus::Indeterminate) {
    throw SearchExhausted("search budget exhausted looking for a (4,3)-violator");
  }
  if (r.witness) return {false, r.witness};
  return {true, std::nullopt};
}

SequentialResult is_sequential(const BinaryMatroid& m, ElementSet x) {
  SequentialResult out;
  const ElementSet ground = m.ground();
  ElementSet from;
  if (full_closure(m, x) == ground) {
    from = x;
    out.absorbed_from_x = true;
  } else if (full_closure(m, ground - x) == ground) {
    from = ground - x;
  } else {
    return out;
  }
  out.sequential = true;
  // Move one element at a time, always the least index available in
  // cl(U) or cl*(U).
  ElementSet u = from;
  while (u != ground) {
    const ElementSet reachable = (closure(m, u) | coclosure(m, u)) - u;
    const std::size_t e = reachable.front();
    out.move_order.push_back(e);
    u = u.with(e);
  }
  return out;
}

std::vector<Fan> find_4fans(const BinaryMatroid& m) {
  const TriangleList tri = triangles(m);
  const TriangleList tds = triads(m);
  std::vector<Fan> out;
  for (ElementSet t : tri.triangles) {
    for (ElementSet d : tds.triangles) {
      if ((t & d).size() == 2) out.push_back(Fan{t, d});
    }
  }
  std::sort(out.begin(), out.end(), [](const Fan& a, const Fan& b) {
    if (a.elements() != b.elements()) return lex_less(a.elements(), b.elements());
    if (a.triangle != b.triangle) return lex_less(a.triangle, b.triangle);
    return lex_less(a.triad, b.triad);
  });
  return out;
}

}  // namespace binmat
