#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binmat/element_set.hpp"

namespace binmat {

inline constexpr std::size_t kMaxColumns = 64;

/// Dense GF(2) matrix with at most 64 columns. Row r is a single word whose
/// bit c holds entry (r, c).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  /// Parses rows written as strings of '0'/'1' characters.
  static BitMatrix from_strings(std::span<const std::string_view> rows, std::size_t cols);
  static BitMatrix from_words(std::vector<std::uint64_t> rows, std::size_t cols);

  std::size_t rows() const { return row_bits_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  std::uint64_t row(std::size_t r) const;
  std::span<const std::uint64_t> row_words() const { return row_bits_; }
  /// Column c as a word over the rows; requires rows() <= 64.
  std::uint64_t column_word(std::size_t c) const;
  std::uint64_t column_mask() const { return ElementSet::first(cols_).bits(); }

  void append_row(std::uint64_t bits);
  BitMatrix select_columns(std::span<const std::size_t> order) const;
  BitMatrix transpose() const;
  std::vector<std::string> to_strings() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> row_bits_;
};

/// Ordered list of distinct column positions.
struct ColumnSelection {
  std::vector<std::size_t> indices;

  static ColumnSelection all(std::size_t cols);
  static ColumnSelection from_set(ElementSet set) { return {set.indices()}; }
  /// Throws InputError on an out-of-range or duplicate index.
  ElementSet validate(std::size_t cols) const;
  std::size_t size() const { return indices.size(); }
  friend bool operator==(const ColumnSelection&, const ColumnSelection&) = default;
};

/// Add-only elimination state over 64-bit vectors. Each stored vector is
/// indexed by its leading bit, so reduction touches at most rank() entries.
class XorBasis {
 public:
  std::size_t rank() const { return rank_; }

  std::uint64_t reduce(std::uint64_t v) const {
    while (v != 0) {
      const int lead = 63 - std::countl_zero(v);
      if (((occupied_ >> lead) & 1U) == 0) return v;
      v ^= pivots_[static_cast<std::size_t>(lead)];
    }
    return 0;
  }
  bool spans(std::uint64_t v) const { return reduce(v) == 0; }
  /// Returns true when the rank grew.
  bool insert(std::uint64_t v) {
    v = reduce(v);
    if (v == 0) return false;
    const int lead = 63 - std::countl_zero(v);
    pivots_[static_cast<std::size_t>(lead)] = v;
    occupied_ |= std::uint64_t{1} << lead;
    ++rank_;
    return true;
  }

 private:
  std::array<std::uint64_t, 64> pivots_{};
  std::uint64_t occupied_ = 0;
  std::size_t rank_ = 0;
};

/// Elimination that also records, for each stored vector, which earlier
/// independent inputs (numbered 0, 1, ... in insertion order) combine to it.
/// A dependent input comes back as the set of positions summing to it.
class TrackedBasis {
 public:
  struct Outcome {
    bool independent = false;
    /// For a dependent input: bit p set iff independent input p is used.
    std::uint64_t combo = 0;
    bool operator==(const Outcome&) const = default;
  };

  Outcome add(std::uint64_t v) {
    Outcome out = express(v);
    if (out.independent) {
      std::uint64_t combo = 0;
      v = reduce_with(v, combo);
      const int lead = 63 - std::countl_zero(v);
      vec_[static_cast<std::size_t>(lead)] = v;
      combo_[static_cast<std::size_t>(lead)] = combo ^ (std::uint64_t{1} << positions_);
      occupied_ |= std::uint64_t{1} << lead;
      ++positions_;
    }
    return out;
  }

  /// Coordinates of v without inserting it.
  Outcome express(std::uint64_t v) const {
    std::uint64_t combo = 0;
    v = reduce_with(v, combo);
    if (v != 0) return {true, 0};
    return {false, combo};
  }

  std::size_t rank() const { return positions_; }

 private:
  std::uint64_t reduce_with(std::uint64_t v, std::uint64_t& combo) const {
    while (v != 0) {
      const int lead = 63 - std::countl_zero(v);
      if (((occupied_ >> lead) & 1U) == 0) break;
      v ^= vec_[static_cast<std::size_t>(lead)];
      combo ^= combo_[static_cast<std::size_t>(lead)];
    }
    return v;
  }

  std::array<std::uint64_t, 64> vec_{};
  std::array<std::uint64_t, 64> combo_{};
  std::uint64_t occupied_ = 0;
  std::size_t positions_ = 0;
};

/// GF(2) rank of the selected columns (0 for an empty selection).
std::size_t rank_of_columns(const BitMatrix& m, const ColumnSelection& sel);
std::size_t rank_of_columns(const BitMatrix& m, ElementSet sel);

struct StandardForm {
  /// [I_r | D]: basis columns first, then the rest, each group in input order.
  BitMatrix reduced;
  /// The lexicographically first basis, as input column indices.
  ColumnSelection basis_columns;
  /// permutation[k] is the input column shown at output position k.
  std::vector<std::size_t> permutation;
};

StandardForm standard_form(const BitMatrix& m);

/// Reduced row echelon form with zero rows dropped and columns in place.
/// Two matrices with the same row space have the same rref.
BitMatrix rref(const BitMatrix& m);

/// Pivots on the first row holding a 1 in `col`, then deletes that row and
/// column. The result represents the contraction of `col`.
BitMatrix pivot_contract(const BitMatrix& m, std::size_t col);

/// Guard on the span dimension for minimal_supports.
inline constexpr std::size_t kMaxSpanDimension = 25;

/// Minimal nonzero supports of the row space of `generators`, optionally
/// restricted to weight <= max_weight, in lexicographic order.
std::vector<ElementSet> minimal_supports(const BitMatrix& generators,
                                         std::optional<std::size_t> max_weight = std::nullopt);

}  // namespace binmat
