#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "binmat/constructions.hpp"
#include "binmat/error.hpp"
#include "binmat/gf2.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace binmat;

namespace {

BitMatrix fano_matrix() { return catalog(CatalogId::parse("f7")).matrix(); }

BitMatrix matrix_a() { return BitMatrix::from_strings(fixtures::kMatrixA, 27); }

}  // namespace

TEST_CASE("BitMatrix access and equality") {
  BitMatrix m(2, 5);
  m.set(1, 4, true);
  CHECK(m.get(1, 4));
  CHECK_FALSE(m.get(0, 4));
  CHECK_THROWS_AS(m.get(2, 0), InputError);
  CHECK_THROWS_AS(m.set(0, 5, true), InputError);

  BitMatrix same(2, 5);
  same.set(1, 4, true);
  CHECK(m == same);
  same.set(0, 0, true);
  CHECK_FALSE(m == same);

  CHECK_THROWS_AS(BitMatrix(1, 65), CapacityError);
  const std::vector<std::string_view> bad = {"10a"};
  CHECK_THROWS_AS(BitMatrix::from_strings(bad, 3), InputError);
  const std::vector<std::string_view> short_row = {"10"};
  CHECK_THROWS_AS(BitMatrix::from_strings(short_row, 3), InputError);
}

TEST_CASE("BitMatrix transpose and column selection") {
  const BitMatrix f = fano_matrix();
  CHECK(f.transpose().transpose() == f);
  const std::vector<std::size_t> order = {6, 0};
  const BitMatrix s = f.select_columns(order);
  CHECK(s.cols() == 2);
  for (std::size_t r = 0; r < f.rows(); ++r) {
    CHECK(s.get(r, 0) == f.get(r, 6));
    CHECK(s.get(r, 1) == f.get(r, 0));
  }
}

TEST_CASE("rank_of_columns") {
  CHECK(rank_of_columns(BitMatrix::identity(3), ColumnSelection::all(3)) == 3);
  CHECK(rank_of_columns(fano_matrix(), ColumnSelection{}) == 0);

  const BitMatrix a = matrix_a();
  const std::size_t expected = oracle::rank(oracle::columns_of(BinaryMatroid(a)), oracle::full(27));
  CHECK(expected == 8);
  CHECK(rank_of_columns(a, ColumnSelection::all(27)) == expected);

  CHECK_THROWS_AS(rank_of_columns(a, ColumnSelection{{27}}), InputError);
  CHECK_THROWS_AS(rank_of_columns(a, ColumnSelection{{1, 1}}), InputError);
}

TEST_CASE("rank_of_columns agrees with elimination on random selections") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMatroid m = oracle::random_matroid(1 + rng() % 8, 1 + rng() % 14, rng);
    const auto cols = oracle::columns_of(m);
    const ElementSet x = oracle::random_subset(m.size(), rng);
    CHECK(rank_of_columns(m.matrix(), x) == oracle::rank(cols, x.bits()));
  }
}

TEST_CASE("rank is monotone with unit steps and splits submodularly") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMatroid m = oracle::random_matroid(2 + rng() % 6, 2 + rng() % 12, rng);
    const ElementSet x = oracle::random_subset(m.size(), rng);
    const std::size_t e = rng() % m.size();
    const std::size_t rx = rank_of_columns(m.matrix(), x);
    const std::size_t rxe = rank_of_columns(m.matrix(), x.with(e));
    CHECK(rxe >= rx);
    CHECK(rxe <= rx + 1);
    const ElementSet rest = m.ground() - x;
    CHECK(rx + rank_of_columns(m.matrix(), rest) >= m.rank());
  }
}

TEST_CASE("standard_form") {
  SUBCASE("identity") {
    const StandardForm sf = standard_form(BitMatrix::identity(4));
    CHECK(sf.reduced == BitMatrix::identity(4));
    CHECK(sf.basis_columns == ColumnSelection::all(4));
    CHECK(sf.permutation == std::vector<std::size_t>{0, 1, 2, 3});
  }
  SUBCASE("zero matrix") {
    const StandardForm sf = standard_form(BitMatrix(3, 4));
    CHECK(sf.basis_columns.size() == 0);
    CHECK(sf.reduced.rows() == 0);
  }
  SUBCASE("Fano plane") {
    const StandardForm sf = standard_form(fano_matrix());
    CHECK(sf.basis_columns.size() == 3);
    CHECK(sf.reduced.rows() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(sf.reduced.get(i, j) == (i == j));
    }
  }
}

TEST_CASE("standard_form preserves independence") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const BinaryMatroid m = oracle::random_matroid(1 + rng() % 7, 1 + rng() % 12, rng);
    const StandardForm sf = standard_form(m.matrix());
    CHECK(sf.basis_columns.size() == m.rank());
    CHECK(rank_of_columns(m.matrix(), sf.basis_columns) == m.rank());
    // Output position k shows input column permutation[k].
    const ElementSet x = oracle::random_subset(m.size(), rng);
    ElementSet moved;
    for (std::size_t k = 0; k < sf.permutation.size(); ++k) {
      if (x.contains(sf.permutation[k])) moved = moved.with(k);
    }
    CHECK(rank_of_columns(sf.reduced, moved) == rank_of_columns(m.matrix(), x));
  }
}

TEST_CASE("rref is a row-space invariant") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryMatroid m = oracle::random_matroid(1 + rng() % 6, 1 + rng() % 10, rng);
    BitMatrix mixed = m.matrix();
    // Add random combinations of rows, which keeps the row space.
    std::vector<std::uint64_t> words(mixed.row_words().begin(), mixed.row_words().end());
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        if (i != j && (rng() & 1U)) words[i] ^= words[j];
      }
    }
    words.push_back(0);
    CHECK(rref(BitMatrix::from_words(words, m.size())) == rref(m.matrix()));
  }
}

TEST_CASE("pivot_contract") {
  SUBCASE("identity") {
    CHECK(pivot_contract(BitMatrix::identity(2), 0) == BitMatrix::identity(1));
  }
  SUBCASE("Fano plane gives three parallel pairs") {
    const BitMatrix c = pivot_contract(fano_matrix(), 0);
    CHECK(c.cols() == 6);
    CHECK(rank_of_columns(c, ColumnSelection::all(6)) == 2);
    const auto classes = parallel_classes(BinaryMatroid(c));
    REQUIRE(classes.size() == 3);
    for (const ElementSet& cls : classes) CHECK(cls.size() == 2);
  }
  SUBCASE("M(K5) contracts to a matroid simplifying to M(K4)") {
    const BinaryMatroid k5 = catalog(CatalogId::parse("mk5"));
    const BitMatrix c = pivot_contract(k5.matrix(), 0);
    CHECK(rank_of_columns(c, ColumnSelection::all(c.cols())) == 3);
    CHECK(is_isomorphic(simplify(BinaryMatroid(c)).matroid, catalog(CatalogId::parse("mk4"))));
  }
  SUBCASE("zero column") {
    BitMatrix z(2, 3);
    z.set(0, 1, true);
    CHECK_THROWS_AS(pivot_contract(z, 0), PreconditionError);
  }
}

TEST_CASE("pivot_contract drops rank of sets joined with the column by one") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMatroid m = oracle::random_matroid(2 + rng() % 6, 2 + rng() % 12, rng);
    const std::size_t col = rng() % m.size();
    if (m.rank(ElementSet{col}) == 0) continue;
    const BitMatrix c = pivot_contract(m.matrix(), col);
    const ElementSet x = oracle::random_subset(m.size(), rng).without(col);
    ElementSet shifted;
    for (std::size_t i : x) shifted = shifted.with(i < col ? i : i - 1);
    CHECK(rank_of_columns(c, shifted) + 1 == m.rank(x.with(col)));
  }
}

TEST_CASE("minimal_supports") {
  SUBCASE("single generator") {
    const std::vector<std::string_view> rows = {"0111"};
    const auto s = minimal_supports(BitMatrix::from_strings(rows, 4));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == ElementSet{1, 2, 3});
  }
  SUBCASE("Fano row space") {
    const auto s = minimal_supports(fano_matrix());
    CHECK(s.size() == 7);
    for (const ElementSet& x : s) CHECK(x.size() == 4);
  }
  SUBCASE("weight filter") {
    CHECK(minimal_supports(fano_matrix(), 3).empty());
  }
  SUBCASE("row space of the 37-element connection has only even supports") {
    const auto s = minimal_supports(section6(Section6Stage::M).matrix());
    CHECK_FALSE(s.empty());
    for (const ElementSet& x : s) CHECK(x.size() % 2 == 0);
  }
  SUBCASE("dimension guard") {
    CHECK_THROWS_AS(minimal_supports(BitMatrix::identity(26)), CapacityError);
  }
}

TEST_CASE("minimal_supports is a sorted antichain of span members") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const BinaryMatroid m = oracle::random_matroid(1 + rng() % 5, 1 + rng() % 10, rng);
    const auto s = minimal_supports(m.matrix());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i + 1 < s.size()) CHECK(lex_less(s[i], s[i + 1]));
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (i != j) CHECK_FALSE(s[i].subset_of(s[j]));
      }
      // The support's indicator lies in the row space.
      BitMatrix extended = m.matrix();
      extended.append_row(s[i].bits());
      CHECK(rank_of_columns(extended.transpose(), ColumnSelection::all(extended.rows())) ==
            rank_of_columns(m.matrix().transpose(), ColumnSelection::all(m.matrix().rows())));
    }
    CHECK(oracle::masks_of(s) == oracle::cocircuits(oracle::columns_of(m)));
  }
}
