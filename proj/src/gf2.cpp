#include "binmat/gf2.hpp"

#include <algorithm>
#include <utility>

#include "binmat/error.hpp"

namespace binmat {

namespace {

void check_cols(std::size_t cols) {
  if (cols > kMaxColumns) {
    throw CapacityError("matrix has " + std::to_string(cols) + " columns; at most 64 are supported");
  }
}

struct Echelon {
  std::vector<std::uint64_t> rows;       // nonzero rows of the rref, top to bottom
  std::vector<std::size_t> pivot_cols;   // pivot column of each row
};

// Column-by-column elimination; the pivots form the lexicographically first
// basis.
Echelon eliminate(const BitMatrix& m) {
  Echelon out;
  std::vector<std::uint64_t> rows(m.row_words().begin(), m.row_words().end());
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    const std::uint64_t bit = ElementSet::bit(c);
    std::size_t p = next;
    while (p < rows.size() && (rows[p] & bit) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && (rows[r] & bit) != 0) rows[r] ^= rows[next];
    }
    out.pivot_cols.push_back(c);
    ++next;
  }
  rows.resize(next);
  out.rows = std::move(rows);
  return out;
}

}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), row_bits_(rows, 0) {
  check_cols(cols);
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.row_bits_[i] = ElementSet::bit(i);
  return m;
}

BitMatrix BitMatrix::from_strings(std::span<const std::string_view> rows, std::size_t cols) {
  BitMatrix m(0, cols);
  for (std::string_view line : rows) {
    if (line.size() != cols) {
      throw InputError("matrix row has " + std::to_string(line.size()) + " entries, expected " +
                       std::to_string(cols));
    }
    std::uint64_t bits = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (line[c] == '1') {
        bits |= ElementSet::bit(c);
      } else if (line[c] != '0') {
        throw InputError(std::string("matrix entry '") + line[c] + "' is not 0 or 1");
      }
    }
    m.row_bits_.push_back(bits);
  }
  return m;
}

BitMatrix BitMatrix::from_words(std::vector<std::uint64_t> rows, std::size_t cols) {
  BitMatrix m(0, cols);
  const std::uint64_t mask = m.column_mask();
  for (std::uint64_t r : rows) {
    if ((r & ~mask) != 0) throw InputError("row word has bits beyond the column count");
  }
  m.row_bits_ = std::move(rows);
  return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols_) throw InputError("matrix index out of range");
  return ((row_bits_[r] >> c) & 1U) != 0;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  if (r >= rows() || c >= cols_) throw InputError("matrix index out of range");
  if (value) {
    row_bits_[r] |= ElementSet::bit(c);
  } else {
    row_bits_[r] &= ~ElementSet::bit(c);
  }
}

std::uint64_t BitMatrix::row(std::size_t r) const {
  if (r >= rows()) throw InputError("row index out of range");
  return row_bits_[r];
}

std::uint64_t BitMatrix::column_word(std::size_t c) const {
  if (c >= cols_) throw InputError("column index out of range");
  if (rows() > 64) throw CapacityError("column words need at most 64 rows");
  std::uint64_t word = 0;
  for (std::size_t r = 0; r < rows(); ++r) {
    if ((row_bits_[r] >> c) & 1U) word |= ElementSet::bit(r);
  }
  return word;
}

void BitMatrix::append_row(std::uint64_t bits) {
  if ((bits & ~column_mask()) != 0) throw InputError("row word has bits beyond the column count");
  row_bits_.push_back(bits);
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> order) const {
  BitMatrix out(rows(), order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] >= cols_) throw InputError("column index out of range");
  }
  for (std::size_t r = 0; r < rows(); ++r) {
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if ((row_bits_[r] >> order[k]) & 1U) bits |= ElementSet::bit(k);
    }
    out.row_bits_[r] = bits;
  }
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix out(cols_, rows());
  for (std::size_t c = 0; c < cols_; ++c) out.row_bits_[c] = column_word(c);
  return out;
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows());
  for (std::uint64_t bits : row_bits_) {
    std::string line(cols_, '0');
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((bits >> c) & 1U) line[c] = '1';
    }
    out.push_back(std::move(line));
  }
  return out;
}

ColumnSelection ColumnSelection::all(std::size_t cols) {
  ColumnSelection sel;
  sel.indices.resize(cols);
  for (std::size_t i = 0; i < cols; ++i) sel.indices[i] = i;
  return sel;
}

ElementSet ColumnSelection::validate(std::size_t cols) const {
  ElementSet seen;
  for (std::size_t i : indices) {
    if (i >= cols) throw InputError("column " + std::to_string(i) + " out of range");
    if (seen.contains(i)) throw InputError("column " + std::to_string(i) + " selected twice");
    seen = seen.with(i);
  }
  return seen;
}

std::size_t rank_of_columns(const BitMatrix& m, ElementSet sel) {
  if (!sel.subset_of(ElementSet(m.column_mask()))) throw InputError("column selection out of range");
  XorBasis basis;
  for (std::uint64_t row : m.row_words()) basis.insert(row & sel.bits());
  return basis.rank();
}

std::size_t rank_of_columns(const BitMatrix& m, const ColumnSelection& sel) {
  return rank_of_columns(m, sel.validate(m.cols()));
}

StandardForm standard_form(const BitMatrix& m) {
  const Echelon ech = eliminate(m);
  StandardForm out;
  ElementSet basis;
  for (std::size_t c : ech.pivot_cols) basis = basis.with(c);
  out.basis_columns.indices = ech.pivot_cols;
  out.permutation = ech.pivot_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!basis.contains(c)) out.permutation.push_back(c);
  }
  const BitMatrix reduced = BitMatrix::from_words(ech.rows, m.cols());
  out.reduced = reduced.select_columns(out.permutation);
  return out;
}

BitMatrix rref(const BitMatrix& m) { return BitMatrix::from_words(eliminate(m).rows, m.cols()); }

BitMatrix pivot_contract(const BitMatrix& m, std::size_t col) {
  if (col >= m.cols()) throw InputError("column index out of range");
  const std::uint64_t bit = ElementSet::bit(col);
  std::vector<std::uint64_t> rows(m.row_words().begin(), m.row_words().end());
  std::size_t pivot = rows.size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] & bit) {
      pivot = r;
      break;
    }
  }
  if (pivot == rows.size()) {
    throw PreconditionError("column " + std::to_string(col) + " is zero (a loop); delete it instead");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r != pivot && (rows[r] & bit)) rows[r] ^= rows[pivot];
  }
  rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (c != col) keep.push_back(c);
  }
  return BitMatrix::from_words(std::move(rows), m.cols()).select_columns(keep);
}

std::vector<ElementSet> minimal_supports(const BitMatrix& generators,
                                         std::optional<std::size_t> max_weight) {
  const Echelon ech = eliminate(generators);
  const std::size_t dim = ech.rows.size();
  if (dim > kMaxSpanDimension) {
    throw CapacityError("span dimension " + std::to_string(dim) + " exceeds the enumeration guard of " +
                        std::to_string(kMaxSpanDimension));
  }
  std::vector<ElementSet> out;
  if (dim == 0) return out;

  // coeff[c] holds column c of the reduced generators: the linear functional
  // whose value on a coefficient vector x is coordinate c of x^T R.
  const std::size_t n = generators.cols();
  std::vector<std::uint64_t> coeff(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      if ((ech.rows[r] >> c) & 1U) coeff[c] |= ElementSet::bit(r);
    }
  }
  const std::uint64_t ground = generators.column_mask();

  // Gray-code walk of all nonzero combinations. A vector is minimal iff the
  // coordinates where it vanishes cut the coefficient space down to one
  // dimension, i.e. those columns have rank dim - 1.
  std::uint64_t v = 0;
  const std::uint64_t total = std::uint64_t{1} << dim;
  for (std::uint64_t i = 1; i < total; ++i) {
    v ^= ech.rows[static_cast<std::size_t>(std::countr_zero(i))];
    const ElementSet support(v);
    if (max_weight && support.size() > *max_weight) continue;
    XorBasis zeros;
    for (std::size_t c : ElementSet(ground & ~v)) {
      zeros.insert(coeff[c]);
      if (zeros.rank() == dim - 1) break;
    }
    if (zeros.rank() == dim - 1) out.push_back(support);
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

}  // namespace binmat
