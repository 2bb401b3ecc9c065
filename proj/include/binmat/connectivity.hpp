#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binmat/element_set.hpp"
#include "binmat/matroid.hpp"

namespace binmat {

/// r(X) + r(E - X) - r(M).
std::size_t lambda(const BinaryMatroid& m, ElementSet x);

bool is_k_separating(const BinaryMatroid& m, ElementSet x, std::size_t k);
bool is_k_separation(const BinaryMatroid& m, ElementSet x, std::size_t k);

enum class SeparationKind { KSeparation, Violator43, Fan4, Sequential };

std::string to_string(SeparationKind kind);

struct SeparationWitness {
  ElementSet side_x;
  std::size_t lambda = 0;
  SeparationKind kind = SeparationKind::KSeparation;
  /// lambda + 1 when both sides have at least that many elements, so that X
  /// is a (lambda + 1)-separation; 0 when X is separating but no separation.
  std::size_t k = 0;
  std::size_t size_x = 0;
  std::size_t size_y = 0;
};

/// The k stored in a witness with these values.
std::size_t separation_order(std::size_t lambda, std::size_t size_x, std::size_t size_y);

/// Recomputes lambda and sizes; checks the kind's constraints.
bool revalidate(const BinaryMatroid& m, const SeparationWitness& w);

enum class SearchStrategy { Exhaustive, BranchAndBound };

struct SearchBudget {
  SearchStrategy strategy = SearchStrategy::BranchAndBound;
  std::uint64_t node_limit = 1'000'000'000;
  std::chrono::milliseconds time_limit = std::chrono::hours(1);
};

enum class SearchStatus { Found, None, Indeterminate };

struct SearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<SeparationWitness> witness;
  std::uint64_t nodes = 0;
};

/// Looks for X with lambda(X) <= lambda_bound, |X| >= min_x and
/// |E - X| >= min_y. A returned witness has the least lambda among all such
/// sets. The exhaustive strategy returns the lexicographically least X of
/// that lambda; branch-and-bound returns a deterministic but unspecified one.
SearchResult find_separation(const BinaryMatroid& m, std::size_t lambda_bound, std::size_t min_x,
                             std::size_t min_y, const SearchBudget& budget = {});

/// No k-separation for any k < n, for n in {2, 3, 4}.
/// Throws SearchExhausted when the budget runs out.
bool is_n_connected(const BinaryMatroid& m, std::size_t n, const SearchBudget& budget = {});

/// Witness of a k-separation with k < n, if any.
std::optional<SeparationWitness> find_small_separation(const BinaryMatroid& m, std::size_t n,
                                                       const SearchBudget& budget = {});

struct I4cResult {
  bool value = false;
  /// On false: a 1- or 2-separation, a 4-fan, or a (4,3)-violator.
  std::optional<SeparationWitness> witness;
};

/// 3-connected and free of (4,3)-violators. Throws SearchExhausted.
I4cResult is_internally_4_connected(const BinaryMatroid& m, const SearchBudget& budget = {});

/// A 3-separation with both sides of size >= 4.
SearchResult find_43_violator(const BinaryMatroid& m, const SearchBudget& budget = {});

struct SequentialResult {
  bool sequential = false;
  /// True when fcl(X) = E, so the complement E - X is the sequential side.
  bool absorbed_from_x = false;
  /// Elements of the sequential side in the order they are moved across.
  /// Each prefix, joined to the absorbing side, stays k-separating.
  std::vector<std::size_t> move_order;
};

SequentialResult is_sequential(const BinaryMatroid& m, ElementSet x);

struct Fan {
  ElementSet triangle;
  ElementSet triad;
  ElementSet elements() const { return triangle | triad; }
};

/// All (triangle, triad) pairs sharing exactly two elements, sorted by the
/// union, then triangle, then triad.
std::vector<Fan> find_4fans(const BinaryMatroid& m);

}  // namespace binmat
