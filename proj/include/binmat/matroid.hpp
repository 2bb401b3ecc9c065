#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "binmat/element_set.hpp"
#include "binmat/gf2.hpp"

namespace binmat {

/// A labeled GF(2) column matroid. The representing matrix is kept exactly as
/// given; rank queries run against a row-reduced copy whose columns fit in
/// one word each.
class BinaryMatroid {
 public:
  BinaryMatroid() = default;
  /// Empty `labels` means the default names e0..e{n-1}.
  explicit BinaryMatroid(BitMatrix matrix, std::vector<std::string> labels = {});

  const BitMatrix& matrix() const { return matrix_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t rank() const { return rank_; }
  ElementSet ground() const { return ElementSet::first(size()); }

  /// Coordinates of element i in the reduced row space (rank() bits).
  std::uint64_t column(std::size_t i) const { return columns_[i]; }
  std::span<const std::uint64_t> columns() const { return columns_; }

  std::size_t rank(ElementSet x) const;

  std::size_t index_of(std::string_view label) const;
  std::optional<std::size_t> find(std::string_view label) const;
  ElementSet resolve(std::span<const std::string> names) const;
  ElementSet resolve(std::initializer_list<std::string_view> names) const;
  std::vector<std::string> names(ElementSet x) const;
  /// "{a, b, c}"
  std::string format(ElementSet x) const;

  /// Same matrix, different labels.
  BinaryMatroid relabeled(std::vector<std::string> labels) const;

 private:
  BitMatrix matrix_;
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> columns_;
  std::size_t rank_ = 0;
};

/// Default labels e0..e{n-1}.
std::vector<std::string> default_labels(std::size_t n);

/// True when both matroids have the same labels in the same order and the
/// same row space (hence the same rank function).
bool same_matroid(const BinaryMatroid& a, const BinaryMatroid& b);

std::size_t rank(const BinaryMatroid& m, ElementSet x);
/// |X| + r(E - X) - r(M), the rank of X in the dual.
std::size_t corank(const BinaryMatroid& m, ElementSet x);

ElementSet closure(const BinaryMatroid& m, ElementSet x);
ElementSet coclosure(const BinaryMatroid& m, ElementSet x);
/// Least set containing x that is closed in both M and M*.
ElementSet full_closure(const BinaryMatroid& m, ElementSet x);

BinaryMatroid deletion(const BinaryMatroid& m, ElementSet d);
BinaryMatroid restriction(const BinaryMatroid& m, ElementSet r);
BinaryMatroid contraction(const BinaryMatroid& m, ElementSet c);

/// Bookkeeping of a simplification, by label.
struct SimplificationTrace {
  std::vector<std::string> kept;
  std::vector<std::string> removed_loops;
  /// removed parallel element -> the kept element of its class
  std::map<std::string, std::string> representative;

  bool empty() const { return removed_loops.empty() && representative.empty(); }
};

struct Simplification {
  BinaryMatroid matroid;
  SimplificationTrace trace;
};

/// Drops loops and keeps the least-indexed element of each parallel class.
Simplification simplify(const BinaryMatroid& m);
/// simplify(contraction(m, {e})); e must not be a loop.
Simplification si_contract(const BinaryMatroid& m, std::size_t e);

/// Dual with labels in the original order, matrix in rref.
BinaryMatroid dual(const BinaryMatroid& m);

/// Guard on |E| - r for null-space enumeration of circuits.
inline constexpr std::size_t kMaxNullity = 25;

/// Circuits of size <= max_size, lexicographically sorted. Uses null-space
/// minimal supports when the nullity is within the guard, otherwise a
/// bounded-size subset search.
std::vector<ElementSet> circuits(const BinaryMatroid& m, std::size_t max_size);
/// All cocircuits (minimal supports of the row space); rank must be <= 25.
std::vector<ElementSet> cocircuits(const BinaryMatroid& m);
/// True when d is a cocircuit: E - d is a hyperplane.
bool is_cocircuit(const BinaryMatroid& m, ElementSet d);
bool is_circuit(const BinaryMatroid& m, ElementSet c);

struct TriangleList {
  std::vector<ElementSet> triangles;
  /// per_element[i] lists positions in `triangles` containing element i.
  std::vector<std::vector<std::size_t>> per_element;

  std::size_t count(std::size_t e) const { return per_element[e].size(); }
};

TriangleList triangles(const BinaryMatroid& m);
/// Triangles of the dual.
TriangleList triads(const BinaryMatroid& m);

std::vector<ElementSet> parallel_classes(const BinaryMatroid& m);
ElementSet loops(const BinaryMatroid& m);

/// Search guard for is_isomorphic.
inline constexpr std::size_t kMaxIsomorphismSize = 15;

/// A bijection carrying the rank function of m1 onto that of m2:
/// mapping[i] is the element of m2 matched with element i of m1.
using Isomorphism = std::vector<std::size_t>;

/// Backtracking search, optionally with some pairs (i in m1, j in m2) fixed.
std::optional<Isomorphism> find_isomorphism(const BinaryMatroid& m1, const BinaryMatroid& m2,
                                            std::span<const std::pair<std::size_t, std::size_t>> forced = {},
                                            std::size_t max_size = kMaxIsomorphismSize);
bool is_isomorphic(const BinaryMatroid& m1, const BinaryMatroid& m2);
/// Checks one given bijection without searching; any size up to 64.
bool is_isomorphism(const BinaryMatroid& m1, const BinaryMatroid& m2, std::span<const std::size_t> mapping);

}  // namespace binmat
