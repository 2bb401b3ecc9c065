#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "binmat/connectivity.hpp"
#include "binmat/constructions.hpp"
#include "binmat/error.hpp"
#include "binmat/matroid.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace binmat;

namespace {

BinaryMatroid named(const char* id, std::size_t n = 0) { return catalog(CatalogId::parse(id, n)); }

std::size_t weight(const BinaryMatroid& m, std::size_t col) {
  std::size_t w = 0;
  for (std::size_t r = 0; r < m.matrix().rows(); ++r) w += m.matrix().get(r, col) ? 1 : 0;
  return w;
}

/// The identity map on labels carries the rank function of a onto b.
bool same_rank_function(const BinaryMatroid& a, const BinaryMatroid& b) {
  if (a.labels() != b.labels()) return false;
  std::vector<std::size_t> map(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) map[i] = i;
  return is_isomorphism(a, b, map);
}

}  // namespace

TEST_CASE("graphic") {
  GraphSpec tri;
  tri.add_edge("x", "y", "p");
  tri.add_edge("y", "z", "q");
  tri.add_edge("z", "x", "r");
  const BinaryMatroid t = graphic(tri);
  CHECK(t.size() == 3);
  CHECK(t.rank() == 2);
  const std::vector<std::string_view> rows = {"101", "011"};
  CHECK(is_isomorphic(t, BinaryMatroid(BitMatrix::from_strings(rows, 3))));

  const BinaryMatroid k5 = graphic(complete_graph(5));
  CHECK(k5.size() == 10);
  CHECK(k5.rank() == 4);
  const TriangleList kt = triangles(k5);
  CHECK(kt.triangles.size() == 10);
  for (std::size_t e = 0; e < 10; ++e) CHECK(kt.count(e) == 3);

  GraphSpec loop;
  loop.add_edge("x", "x", "l");
  CHECK_THROWS_AS(graphic(loop), InputError);

  GraphSpec dup;
  dup.add_edge("x", "y", "p");
  dup.add_edge("y", "z", "p");
  CHECK_THROWS_AS(graphic(dup), InputError);
}

TEST_CASE("graphic rank counts components") {
  GraphSpec g;
  g.add_edge("1", "2", "a");
  g.add_edge("3", "4", "b");
  g.add_edge("4", "5", "c");
  g.add_edge("5", "3", "d");
  CHECK(graphic(g).rank() == 5 - 2);
}

TEST_CASE("edge list parsing") {
  const GraphSpec g = parse_edge_list("# a path\n1 2 e12\n\n2 3 e23  # trailing\n");
  REQUIRE(g.edges.size() == 2);
  CHECK(g.vertices == std::vector<std::string>{"1", "2", "3"});
  CHECK(g.edges[1].label == "e23");
  CHECK_THROWS_AS(parse_edge_list("1 2\n"), InputError);
  CHECK_THROWS_AS(parse_edge_list("1 2 a b\n"), InputError);
  CHECK_THROWS_AS(parse_edge_list("1 1 a\n"), InputError);
}

TEST_CASE("graph G matches the reference incidence matrix") {
  const BinaryMatroid g = section6(Section6Stage::G);
  CHECK(g.matrix() == BitMatrix::from_strings(fixtures::kMatrixA, 27));
  CHECK(g.size() == 27);
  CHECK(g.rank() == 8);
  const TriangleList t = triangles(g);
  CHECK(t.triangles.size() == 27);
  for (std::size_t e = 0; e < 27; ++e) CHECK(t.count(e) == 3);
  CHECK(oracle::masks_of(t.triangles) == oracle::graph_triangles(oracle::graph_of(section6_graph())));
}

TEST_CASE("catalog") {
  const BinaryMatroid f7 = named("f7");
  CHECK(f7.size() == 7);
  CHECK(f7.rank() == 3);
  CHECK(parallel_classes(f7).size() == 7);

  const BinaryMatroid k33d = named("mk33dual");
  CHECK(k33d.size() == 9);
  CHECK(k33d.rank() == 4);
  CHECK(triangles(k33d).triangles.size() == 6);

  const BinaryMatroid pg = named("pg32");
  CHECK(pg.size() == 15);
  CHECK(pg.rank() == 4);
  CHECK(triangles(pg).triangles.size() == 35);

  CHECK(named("pg12").size() == 3);
  CHECK(named("pg42").size() == 31);
  CHECK(triangles(named("ag32")).triangles.empty());
  CHECK(named("ag32").size() == 8);
  CHECK(same_matroid(named("f7dual"), dual(f7)));
  CHECK(same_matroid(named("mk5dual"), dual(named("mk5"))));
  CHECK(is_isomorphic(named("mk33"), graphic(complete_bipartite_33())));

  for (std::size_t n = 3; n <= 8; ++n) {
    const BinaryMatroid w = named("wheel", n);
    CHECK(w.size() == 2 * n);
    CHECK(w.rank() == n);
    CHECK(is_n_connected(w, 3));
    if (n >= 4) CHECK_FALSE(is_internally_4_connected(w).value);
  }
  CHECK(same_matroid(named("wheel5"), named("wheel", 5)));

  CHECK_THROWS_AS(CatalogId::parse("wheel", 9), InputError);
  CHECK_THROWS_AS(CatalogId::parse("pg52"), InputError);
  CHECK_THROWS_AS(CatalogId::parse("k7"), InputError);

  for (const CatalogId& id : catalog_entries()) {
    CHECK(CatalogId::parse(id.to_string()).to_string() == id.to_string());
  }
}

TEST_CASE("projective geometry element values") {
  const BinaryMatroid pg = projective_geometry(3);
  for (std::size_t k = 0; k < pg.size(); ++k) {
    std::size_t value = 0;
    for (std::size_t r = 0; r < pg.matrix().rows(); ++r) {
      if (pg.matrix().get(r, k)) value |= std::size_t{1} << (pg.matrix().rows() - 1 - r);
    }
    CHECK(value == k + 1);
  }
}

TEST_CASE("is_modular_flat") {
  const BinaryMatroid k5 = named("mk5");
  // The edges among vertices 1..4 form M(K4), a hyperplane of M(K5).
  const ElementSet k4 = k5.resolve({"g12", "g13", "g14", "g23", "g24", "g34"});
  CHECK(is_modular_flat(k5, k4));

  const BinaryMatroid f7 = named("f7");
  for (ElementSet line : triangles(f7).triangles) CHECK(is_modular_flat(f7, line));

  CHECK_THROWS_AS(is_modular_flat(k5, k5.resolve({"g12", "g13"})), UnsupportedCase);
  CHECK_THROWS_AS(is_modular_flat(k5, k5.resolve({"g12", "g23"})), UnsupportedCase);

  // A hyperplane of M(K4) missing a triangle's edges is not modular:
  // the star of one vertex's complement leaves the opposite triangle disjoint.
  const BinaryMatroid k4m = named("mk4");
  bool found_nonmodular = false;
  for (ElementSet d : cocircuits(k4m)) {
    const ElementSet h = k4m.ground() - d;
    bool meets_all = true;
    for (ElementSet t : triangles(k4m).triangles) meets_all = meets_all && !(t & h).empty();
    for (std::size_t i = 0; i < k4m.size(); ++i) {
      for (std::size_t j = i + 1; j < k4m.size(); ++j) {
        const ElementSet line = closure(k4m, ElementSet{i, j});
        if (line.size() == 2 && (line & h).empty()) meets_all = false;
      }
    }
    CHECK(is_modular_flat(k4m, h) == meets_all);
    found_nonmodular = found_nonmodular || !meets_all;
  }
  CHECK(found_nonmodular);
}

TEST_CASE("generalized parallel connection") {
  SUBCASE("two triangles sharing an element") {
    GraphSpec g1;
    g1.add_edge("1", "2", "x");
    g1.add_edge("2", "3", "p");
    g1.add_edge("3", "1", "q");
    GraphSpec g2;
    g2.add_edge("1", "2", "y");
    g2.add_edge("2", "3", "r");
    g2.add_edge("3", "1", "s");
    const BinaryMatroid m1 = graphic(g1);
    const BinaryMatroid m2 = graphic(g2);
    GpcOptions opts;
    opts.assume_modular = true;
    const BinaryMatroid p = generalized_parallel_connection(m1, m2, GlueMap{{{"x", "y"}}}, opts);
    CHECK(p.size() == 5);
    CHECK(p.rank() == 3);
    CHECK(p.labels() == std::vector<std::string>{"y", "r", "s", "p", "q"});
    CHECK(triangles(p).triangles.size() == 2);
    // A point of a triangle is a hyperplane, and a modular one.
    CHECK(same_matroid(generalized_parallel_connection(m1, m2, GlueMap{{{"x", "y"}}}), p));
  }
  SUBCASE("a point of F7 is not a hyperplane") {
    const BinaryMatroid f7 = named("f7");
    GraphSpec g2;
    g2.add_edge("1", "2", "y");
    g2.add_edge("2", "3", "r");
    g2.add_edge("3", "1", "s");
    CHECK_THROWS_AS(generalized_parallel_connection(f7, graphic(g2), GlueMap{{{"e0", "y"}}}), PreconditionError);
    GpcOptions opts;
    opts.assume_modular = true;
    const BinaryMatroid p = generalized_parallel_connection(f7, graphic(g2), GlueMap{{{"e0", "y"}}}, opts);
    CHECK(p.size() == 9);
    CHECK(p.rank() == 3 + 2 - 1);
  }
  SUBCASE("gluing everything returns M2") {
    const BinaryMatroid k4 = named("mk4");
    GlueMap all;
    for (const std::string& l : k4.labels()) all.pairs.emplace_back(l, l);
    GpcOptions opts;
    opts.assume_modular = true;
    CHECK(same_matroid(generalized_parallel_connection(k4, k4, all, opts), k4));
  }
  SUBCASE("glue must be an isomorphism") {
    const BinaryMatroid k5 = named("mk5");
    const BinaryMatroid n = section6(Section6Stage::N);
    GlueMap bad = section6_glue();
    std::swap(bad.pairs[0].second, bad.pairs[4].second);
    CHECK_THROWS_AS(generalized_parallel_connection(k5, n, bad), InputError);
    GlueMap unknown = section6_glue();
    unknown.pairs[0].second = "zz";
    CHECK_THROWS_AS(generalized_parallel_connection(k5, n, unknown), InputError);
  }
}

TEST_CASE("construction stage N") {
  const BinaryMatroid n = section6(Section6Stage::N);
  CHECK(n.size() == 33);
  CHECK(n.rank() == 8);
  // Column weights of B, a transcription checksum.
  const std::vector<std::size_t> expected_weights = {6, 4, 6, 6, 6, 6};
  for (std::size_t i = 0; i < 6; ++i) CHECK(weight(n, 27 + i) == expected_weights[i]);

  const ElementSet glue = n.resolve({"a", "b", "c", "d", "e", "f"});
  const auto cols = oracle::columns_of(n);
  const TriangleList t = triangles(n);
  CHECK(oracle::masks_of(t.triangles) == oracle::triangles(cols));
  for (std::size_t e : glue) CHECK(t.count(e) == 2);
  for (std::size_t e : n.ground() - glue) CHECK(t.count(e) == 3);
  for (ElementSet tri : t.triangles) {
    CHECK((tri & glue).size() != 1);
  }
  // No element of M(G) lies on a line with two glue elements.
  for (std::size_t x : glue) {
    for (std::size_t y : glue) {
      if (y <= x) continue;
      for (std::size_t e : n.ground() - glue) CHECK(oracle::rank(cols, ElementSet{x, y, e}.bits()) == 3);
    }
  }
  CHECK(is_isomorphic(restriction(n, glue), named("mk4")));
}

TEST_CASE("construction stage M") {
  const BinaryMatroid m = section6(Section6Stage::M);
  const BinaryMatroid n = section6(Section6Stage::N);
  const BinaryMatroid k5 = named("mk5");
  CHECK(m.size() == 37);
  CHECK(m.rank() == 9);
  CHECK(m.rank() == n.rank() + 1);
  CHECK(oracle::rank(oracle::columns_of(m), oracle::full(37)) == k5.rank() + n.rank() - 3);

  // Both sides are recovered.
  const BinaryMatroid n_side = restriction(m, m.resolve(n.labels()));
  CHECK(same_rank_function(n_side, n));
  std::vector<std::string> k5_labels = {"a", "b", "c", "d", "e", "f", "g15", "g25", "g35", "g45"};
  const BinaryMatroid k5_side = restriction(m, m.resolve(k5_labels));
  CHECK(is_isomorphic(k5_side, k5));

  const TriangleList t = triangles(m);
  CHECK(t.triangles.size() == 37);
  for (std::size_t e = 0; e < 37; ++e) CHECK(t.count(e) == 3);
  CHECK(oracle::masks_of(t.triangles) == oracle::triangles(oracle::columns_of(m)));

  // Triangles inside either side are that side's triangles.
  const ElementSet ns = m.resolve(n.labels());
  std::set<std::set<std::string>> inside_n;
  for (ElementSet tri : t.triangles) {
    if (tri.subset_of(ns)) {
      const auto names = m.names(tri);
      inside_n.insert(std::set<std::string>(names.begin(), names.end()));
    }
  }
  std::set<std::set<std::string>> of_n;
  for (ElementSet tri : triangles(n).triangles) {
    const auto names = n.names(tri);
    of_n.insert(std::set<std::string>(names.begin(), names.end()));
  }
  CHECK(inside_n == of_n);
}
