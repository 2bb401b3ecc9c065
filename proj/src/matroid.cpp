#include "binmat/matroid.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>
#include <unordered_map>

#include "binmat/error.hpp"

namespace binmat {

namespace {

bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == '#';
  });
}

bool column_is_zero(const BitMatrix& m, std::size_t c) {
  const std::uint64_t bit = ElementSet::bit(c);
  return std::none_of(m.row_words().begin(), m.row_words().end(),
                      [bit](std::uint64_t r) { return (r & bit) != 0; });
}

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

BinaryMatroid::BinaryMatroid(BitMatrix matrix, std::vector<std::string> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  if (labels_.empty()) labels_ = default_labels(matrix_.cols());
  if (labels_.size() != matrix_.cols()) {
    throw InputError("got " + std::to_string(labels_.size()) + " labels for " + std::to_string(matrix_.cols()) +
                     " columns");
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (!valid_label(l)) throw InputError("invalid element label '" + l + "'");
    if (!seen.insert(l).second) throw InputError("duplicate element label '" + l + "'");
  }
  const BitMatrix reduced = rref(matrix_);
  rank_ = reduced.rows();
  columns_.assign(matrix_.cols(), 0);
  for (std::size_t r = 0; r < reduced.rows(); ++r) {
    for (std::size_t c : ElementSet(reduced.row(r))) columns_[c] |= ElementSet::bit(r);
  }
}

std::size_t BinaryMatroid::rank(ElementSet x) const {
  if (!x.subset_of(ground())) throw InputError("element set out of range");
  XorBasis basis;
  for (std::size_t i : x) {
    basis.insert(columns_[i]);
    if (basis.rank() == rank_) break;
  }
  return basis.rank();
}

std::optional<std::size_t> BinaryMatroid::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t BinaryMatroid::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw InputError("unknown element label '" + std::string(label) + "'");
}

ElementSet BinaryMatroid::resolve(std::span<const std::string> names) const {
  ElementSet out;
  for (const auto& n : names) {
    const std::size_t i = index_of(n);
    if (out.contains(i)) throw InputError("element '" + n + "' listed twice");
    out = out.with(i);
  }
  return out;
}

ElementSet BinaryMatroid::resolve(std::initializer_list<std::string_view> names) const {
  std::vector<std::string> v(names.begin(), names.end());
  return resolve(v);
}

std::vector<std::string> BinaryMatroid::names(ElementSet x) const {
  std::vector<std::string> out;
  for (std::size_t i : x) out.push_back(labels_.at(i));
  return out;
}

std::string BinaryMatroid::format(ElementSet x) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : x) {
    if (!first) out += ", ";
    out += labels_.at(i);
    first = false;
  }
  return out + "}";
}

BinaryMatroid BinaryMatroid::relabeled(std::vector<std::string> labels) const {
  return BinaryMatroid(matrix_, std::move(labels));
}

bool same_matroid(const BinaryMatroid& a, const BinaryMatroid& b) {
  return a.labels() == b.labels() && rref(a.matrix()) == rref(b.matrix());
}

std::size_t rank(const BinaryMatroid& m, ElementSet x) { return m.rank(x); }

std::size_t corank(const BinaryMatroid& m, ElementSet x) {
  return x.size() + m.rank(m.ground() - x) - m.rank();
}

ElementSet closure(const BinaryMatroid& m, ElementSet x) {
  if (!x.subset_of(m.ground())) throw InputError("element set out of range");
  XorBasis basis;
  for (std::size_t i : x) basis.insert(m.column(i));
  ElementSet out = x;
  for (std::size_t i : m.ground() - x) {
    if (basis.spans(m.column(i))) out = out.with(i);
  }
  return out;
}

ElementSet coclosure(const BinaryMatroid& m, ElementSet x) {
  if (!x.subset_of(m.ground())) throw InputError("element set out of range");
  // e joins X iff removing it from E - X drops the rank, i.e. e is a coloop
  // of the complement.
  const ElementSet rest = m.ground() - x;
  const std::size_t base = m.rank(rest);
  ElementSet out = x;
  for (std::size_t i : rest) {
    if (m.rank(rest.without(i)) < base) out = out.with(i);
  }
  return out;
}

ElementSet full_closure(const BinaryMatroid& m, ElementSet x) {
  ElementSet current = x;
  while (true) {
    const ElementSet next = coclosure(m, closure(m, current));
    if (next == current) return current;
    current = next;
  }
}

BinaryMatroid deletion(const BinaryMatroid& m, ElementSet d) {
  if (!d.subset_of(m.ground())) throw InputError("element set out of range");
  std::vector<std::size_t> keep;
  std::vector<std::string> labels;
  for (std::size_t i : m.ground() - d) {
    keep.push_back(i);
    labels.push_back(m.labels()[i]);
  }
  return BinaryMatroid(m.matrix().select_columns(keep), std::move(labels));
}

BinaryMatroid restriction(const BinaryMatroid& m, ElementSet r) { return deletion(m, m.ground() - r); }

BinaryMatroid contraction(const BinaryMatroid& m, ElementSet c) {
  if (!c.subset_of(m.ground())) throw InputError("element set out of range");
  BitMatrix mat = m.matrix();
  std::vector<std::string> labels = m.labels();
  // Contract from the highest index down.
  std::vector<std::size_t> order = c.indices();
  std::reverse(order.begin(), order.end());
  for (std::size_t i : order) {
    if (column_is_zero(mat, i)) {
      std::vector<std::size_t> keep;
      for (std::size_t k = 0; k < mat.cols(); ++k) {
        if (k != i) keep.push_back(k);
      }
      mat = mat.select_columns(keep);
    } else {
      mat = pivot_contract(mat, i);
    }
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return BinaryMatroid(std::move(mat), std::move(labels));
}

std::vector<ElementSet> parallel_classes(const BinaryMatroid& m) {
  std::vector<ElementSet> classes;
  std::unordered_map<std::uint64_t, std::size_t> where;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::uint64_t col = m.column(i);
    if (col == 0) continue;
    auto [it, fresh] = where.try_emplace(col, classes.size());
    if (fresh) {
      classes.push_back(ElementSet{i});
    } else {
      classes[it->second] = classes[it->second].with(i);
    }
  }
  return classes;
}

ElementSet loops(const BinaryMatroid& m) {
  ElementSet out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.column(i) == 0) out = out.with(i);
  }
  return out;
}

Simplification simplify(const BinaryMatroid& m) {
  SimplificationTrace trace;
  const ElementSet loop_set = loops(m);
  ElementSet removed = loop_set;
  trace.removed_loops = m.names(loop_set);
  for (ElementSet cls : parallel_classes(m)) {
    const std::size_t rep = cls.front();
    for (std::size_t i : cls.without(rep)) {
      trace.representative.emplace(m.labels()[i], m.labels()[rep]);
      removed = removed.with(i);
    }
  }
  trace.kept = m.names(m.ground() - removed);
  return {deletion(m, removed), std::move(trace)};
}

Simplification si_contract(const BinaryMatroid& m, std::size_t e) {
  if (e >= m.size()) throw InputError("element index out of range");
  if (m.column(e) == 0) throw PreconditionError("cannot contract loop '" + m.labels()[e] + "' in si(M/e)");
  return simplify(contraction(m, ElementSet{e}));
}

BinaryMatroid dual(const BinaryMatroid& m) {
  const StandardForm sf = standard_form(m.matrix());
  const std::size_t r = sf.basis_columns.size();
  const std::size_t n = m.size();
  BitMatrix d(n - r, n);
  // [I_r | D] becomes [D^T | I_{n-r}], written back in the original column order.
  for (std::size_t j = 0; j < n - r; ++j) {
    d.set(j, sf.permutation[r + j], true);
    for (std::size_t i = 0; i < r; ++i) {
      if (sf.reduced.get(i, r + j)) d.set(j, sf.permutation[i], true);
    }
  }
  return BinaryMatroid(rref(d), m.labels());
}

bool is_circuit(const BinaryMatroid& m, ElementSet c) {
  if (c.empty()) return false;
  std::uint64_t sum = 0;
  for (std::size_t i : c) sum ^= m.column(i);
  // A binary set whose columns sum to zero and whose only dependency is the
  // full sum is minimally dependent.
  return sum == 0 && m.rank(c) + 1 == c.size();
}

bool is_cocircuit(const BinaryMatroid& m, ElementSet d) {
  if (d.empty() || !d.subset_of(m.ground())) return false;
  const ElementSet h = m.ground() - d;
  return m.rank(h) + 1 == m.rank() && closure(m, h) == h;
}

namespace {

void bounded_circuits(const BinaryMatroid& m, std::size_t max_size, std::size_t next, ElementSet current,
                      const XorBasis& basis, std::uint64_t sum, std::vector<ElementSet>& out) {
  if (current.size() == max_size) return;
  for (std::size_t e = next; e < m.size(); ++e) {
    const std::uint64_t col = m.column(e);
    const std::uint64_t s = sum ^ col;
    if (basis.spans(col)) {
      // current + e holds exactly one circuit; it is the whole set iff the sum vanishes.
      if (s == 0) out.push_back(current.with(e));
      continue;
    }
    XorBasis grown = basis;
    grown.insert(col);
    bounded_circuits(m, max_size, e + 1, current.with(e), grown, s, out);
  }
}

}  // namespace

std::vector<ElementSet> circuits(const BinaryMatroid& m, std::size_t max_size) {
  std::vector<ElementSet> out;
  if (m.size() - m.rank() <= kMaxNullity) {
    for (ElementSet s : minimal_supports(dual(m).matrix(), max_size)) out.push_back(s);
  } else {
    bounded_circuits(m, max_size, 0, ElementSet{}, XorBasis{}, 0, out);
    std::sort(out.begin(), out.end(), LexLess{});
  }
  return out;
}

std::vector<ElementSet> cocircuits(const BinaryMatroid& m) {
  if (m.rank() > kMaxSpanDimension) {
    throw CapacityError("cocircuit enumeration needs rank <= " + std::to_string(kMaxSpanDimension));
  }
  return minimal_supports(m.matrix());
}

TriangleList triangles(const BinaryMatroid& m) {
  TriangleList out;
  out.per_element.assign(m.size(), {});
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_column;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.column(i) != 0) by_column[m.column(i)].push_back(i);
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::uint64_t ci = m.column(i);
    if (ci == 0) continue;
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const std::uint64_t cj = m.column(j);
      if (cj == 0 || cj == ci) continue;
      auto it = by_column.find(ci ^ cj);
      if (it == by_column.end()) continue;
      for (std::size_t k : it->second) {
        if (k <= j) continue;
        const std::size_t pos = out.triangles.size();
        out.triangles.push_back(ElementSet{i, j, k});
        out.per_element[i].push_back(pos);
        out.per_element[j].push_back(pos);
        out.per_element[k].push_back(pos);
      }
    }
  }
  return out;
}

TriangleList triads(const BinaryMatroid& m) { return triangles(dual(m)); }

namespace {

bool same_outcome(const TrackedBasis::Outcome& a, const TrackedBasis::Outcome& b) { return a == b; }

struct ElementInvariant {
  std::size_t parallel_size;
  std::size_t triangle_count;
  bool loop;
  bool operator==(const ElementInvariant&) const = default;
};

std::vector<ElementInvariant> invariants(const BinaryMatroid& m) {
  std::vector<ElementInvariant> out(m.size(), ElementInvariant{0, 0, false});
  for (ElementSet cls : parallel_classes(m)) {
    for (std::size_t i : cls) out[i].parallel_size = cls.size();
  }
  for (std::size_t i : loops(m)) out[i].loop = true;
  const TriangleList t = triangles(m);
  for (std::size_t i = 0; i < m.size(); ++i) out[i].triangle_count = t.count(i);
  return out;
}

struct IsoSearch {
  const BinaryMatroid& m1;
  const BinaryMatroid& m2;
  std::vector<ElementInvariant> inv1;
  std::vector<ElementInvariant> inv2;
  std::vector<std::optional<std::size_t>> forced;
  Isomorphism mapping;
  std::uint64_t used = 0;

  bool extend(std::size_t i, const TrackedBasis& b1, const TrackedBasis& b2) {
    if (i == m1.size()) return true;
    TrackedBasis n1 = b1;
    const auto o1 = n1.add(m1.column(i));
    for (std::size_t j = 0; j < m2.size(); ++j) {
      if ((used >> j) & 1U) continue;
      if (forced[i] && *forced[i] != j) continue;
      if (!(inv1[i] == inv2[j])) continue;
      TrackedBasis n2 = b2;
      if (!same_outcome(o1, n2.add(m2.column(j)))) continue;
      mapping[i] = j;
      used |= ElementSet::bit(j);
      if (extend(i + 1, n1, n2)) return true;
      used &= ~ElementSet::bit(j);
    }
    return false;
  }
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const BinaryMatroid& m1, const BinaryMatroid& m2,
                                            std::span<const std::pair<std::size_t, std::size_t>> forced,
                                            std::size_t max_size) {
  if (m1.size() > max_size || m2.size() > max_size) {
    throw CapacityError("isomorphism search is limited to " + std::to_string(max_size) + " elements");
  }
  if (m1.size() != m2.size() || m1.rank() != m2.rank()) return std::nullopt;
  IsoSearch search{m1, m2, invariants(m1), invariants(m2), {}, {}, 0};
  search.forced.assign(m1.size(), std::nullopt);
  for (auto [i, j] : forced) {
    if (i >= m1.size() || j >= m2.size()) throw InputError("forced pair out of range");
    search.forced[i] = j;
  }
  std::vector<ElementInvariant> s1 = search.inv1, s2 = search.inv2;
  auto key = [](const ElementInvariant& v) { return std::tuple(v.loop, v.parallel_size, v.triangle_count); };
  auto by_key = [&](const ElementInvariant& a, const ElementInvariant& b) { return key(a) < key(b); };
  std::sort(s1.begin(), s1.end(), by_key);
  std::sort(s2.begin(), s2.end(), by_key);
  if (s1 != s2) return std::nullopt;
  search.mapping.assign(m1.size(), 0);
  if (!search.extend(0, TrackedBasis{}, TrackedBasis{})) return std::nullopt;
  return search.mapping;
}

bool is_isomorphic(const BinaryMatroid& m1, const BinaryMatroid& m2) {
  return find_isomorphism(m1, m2).has_value();
}

bool is_isomorphism(const BinaryMatroid& m1, const BinaryMatroid& m2, std::span<const std::size_t> mapping) {
  if (m1.size() != m2.size() || mapping.size() != m1.size()) return false;
  std::uint64_t used = 0;
  TrackedBasis b1, b2;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    const std::size_t j = mapping[i];
    if (j >= m2.size() || ((used >> j) & 1U)) return false;
    used |= ElementSet::bit(j);
    if (!same_outcome(b1.add(m1.column(i)), b2.add(m2.column(j)))) return false;
  }
  return true;
}

}  // namespace binmat
