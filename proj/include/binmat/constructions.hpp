#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "binmat/matroid.hpp"

namespace binmat {

struct GraphEdge {
  std::string u;
  std::string v;
  std::string label;
};

struct GraphSpec {
  std::vector<std::string> vertices;
  std::vector<GraphEdge> edges;

  /// Adds an edge, declaring its endpoints on first sight.
  void add_edge(std::string u, std::string v, std::string label);
};

/// Cycle matroid from the vertex-edge incidence matrix (one row per vertex,
/// one column per edge). Self-loops are rejected.
BinaryMatroid graphic(const GraphSpec& g);

/// Edge-list text: one `u v label` triple per line, `#` starts a comment.
GraphSpec parse_edge_list(std::string_view text);

/// Complete graph on vertices 1..n, edges labeled g<i><j> in lexicographic order.
GraphSpec complete_graph(std::size_t n);
/// K_{3,3} with classes a1..a3 and b1..b3, edges labeled by endpoints.
GraphSpec complete_bipartite_33();
/// Hub h and rim 1..n; spokes s<i> = h-i, rim edges r<i> = i-(i+1).
GraphSpec wheel_graph(std::size_t n);

/// Named matroids. Names: f7, f7dual, mk4, mk5, mk5dual, mk33, mk33dual,
/// pg<r>2 for 1 <= r <= 4, ag32, wheel (with n in 3..8), section6-g,
/// section6-n, section6-m.
struct CatalogId {
  std::string name;
  std::size_t n = 0;  // wheel size

  /// Parses "pg32", "wheel4", "wheel" (with n given separately) and the rest.
  static CatalogId parse(std::string_view text, std::size_t n = 0);
  std::string to_string() const;
};

BinaryMatroid catalog(const CatalogId& id);
std::vector<CatalogId> catalog_entries();

/// PG(r, 2): all nonzero vectors of GF(2)^{r+1}, element e<k> is the vector
/// with integer value k+1.
BinaryMatroid projective_geometry(std::size_t r);
/// AG(3, 2): the eight vectors of GF(2)^4 with first coordinate 1.
BinaryMatroid affine_geometry_32();

/// Only hyperplanes are supported: F must be closed with rank r(M) - 1, and
/// is then modular iff it meets every line. Throws UnsupportedCase otherwise.
bool is_modular_flat(const BinaryMatroid& m, ElementSet f);

/// Pairs (element of m1, element of m2) identifying T1 with T2.
struct GlueMap {
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct GpcOptions {
  /// Accept T1 as modular without checking; needed when T1 is not a hyperplane.
  bool assume_modular = false;
};

/// Generalized parallel connection of m1 and m2 across the glued sets.
/// Ground set: E(m2) followed by E(m1) - T1 in m1's order.
BinaryMatroid generalized_parallel_connection(const BinaryMatroid& m1, const BinaryMatroid& m2,
                                              const GlueMap& glue, const GpcOptions& options = {});

enum class Section6Stage { G, N, M };

/// The three stages of the counterexample construction: the graph G, the
/// matroid N = [A|B], and the connection of M(K_5) with N.
BinaryMatroid section6(Section6Stage stage);
/// The graph G (K_{3,3} plus u, v, w joined to all six vertices).
GraphSpec section6_graph();
/// The glue map used for section6(M): K_5 edges g12..g34 to a..f.
GlueMap section6_glue();

}  // namespace binmat
