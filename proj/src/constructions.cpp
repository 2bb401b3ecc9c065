#include "binmat/constructions.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "binmat/error.hpp"

namespace binmat {

void GraphSpec::add_edge(std::string u, std::string v, std::string label) {
  for (const std::string* end : {&u, &v}) {
    if (std::find(vertices.begin(), vertices.end(), *end) == vertices.end()) vertices.push_back(*end);
  }
  edges.push_back(GraphEdge{std::move(u), std::move(v), std::move(label)});
}

BinaryMatroid graphic(const GraphSpec& g) {
  std::map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (!row_of.emplace(g.vertices[i], i).second) throw InputError("vertex '" + g.vertices[i] + "' declared twice");
  }
  BitMatrix incidence(g.vertices.size(), g.edges.size());
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < g.edges.size(); ++c) {
    const GraphEdge& e = g.edges[c];
    if (e.u == e.v) throw InputError("edge '" + e.label + "' is a self-loop");
    const auto u = row_of.find(e.u);
    const auto v = row_of.find(e.v);
    if (u == row_of.end() || v == row_of.end()) throw InputError("edge '" + e.label + "' has an undeclared endpoint");
    incidence.set(u->second, c, true);
    incidence.set(v->second, c, true);
    labels.push_back(e.label);
  }
  return BinaryMatroid(std::move(incidence), std::move(labels));
}

GraphSpec parse_edge_list(std::string_view text) {
  GraphSpec g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 3) {
      throw InputError("edge list line " + std::to_string(line_no) + ": expected `u v label`");
    }
    if (tok[0] == tok[1]) throw InputError("edge list line " + std::to_string(line_no) + ": self-loop");
    g.add_edge(tok[0], tok[1], tok[2]);
  }
  return g;
}

GraphSpec complete_graph(std::size_t n) {
  if (n > 9) throw UnsupportedCase("complete graphs are labeled by single-digit vertices");
  GraphSpec g;
  for (std::size_t i = 1; i <= n; ++i) g.vertices.push_back(std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      g.edges.push_back({std::to_string(i), std::to_string(j), "g" + std::to_string(i) + std::to_string(j)});
    }
  }
  return g;
}

GraphSpec complete_bipartite_33() {
  GraphSpec g;
  g.vertices = {"a1", "a2", "a3", "b1", "b2", "b3"};
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const std::string a = "a" + std::to_string(i);
      const std::string b = "b" + std::to_string(j);
      g.edges.push_back({a, b, a + b});
    }
  }
  return g;
}

GraphSpec wheel_graph(std::size_t n) {
  GraphSpec g;
  g.vertices.push_back("h");
  for (std::size_t i = 1; i <= n; ++i) g.vertices.push_back(std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) {
    g.edges.push_back({"h", std::to_string(i), "s" + std::to_string(i)});
    g.edges.push_back({std::to_string(i), std::to_string(i % n + 1), "r" + std::to_string(i)});
  }
  return g;
}

BinaryMatroid projective_geometry(std::size_t r) {
  if (r < 1 || r > 4) throw InputError("pg(r,2) is available for 1 <= r <= 4");
  const std::size_t rows = r + 1;
  const std::size_t n = (std::size_t{1} << rows) - 1;
  BitMatrix m(rows, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t value = k + 1;
    for (std::size_t bit = 0; bit < rows; ++bit) {
      // Row 0 carries the most significant bit.
      if ((value >> (rows - 1 - bit)) & 1U) m.set(bit, k, true);
    }
  }
  return BinaryMatroid(std::move(m));
}

BinaryMatroid affine_geometry_32() {
  BitMatrix m(4, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    m.set(0, k, true);
    for (std::size_t bit = 0; bit < 3; ++bit) {
      if ((k >> (2 - bit)) & 1U) m.set(bit + 1, k, true);
    }
  }
  return BinaryMatroid(std::move(m));
}

CatalogId CatalogId::parse(std::string_view text, std::size_t n) {
  static const std::set<std::string_view> plain = {"f7",       "f7dual",     "mk4",        "mk5",
                                                   "mk5dual",  "mk33",       "mk33dual",   "ag32",
                                                   "section6-g", "section6-n", "section6-m"};
  if (plain.count(text)) return {std::string(text), 0};
  if (text.size() == 4 && text.substr(0, 2) == "pg" && text[3] == '2' && text[2] >= '1' && text[2] <= '4') {
    return {std::string(text), 0};
  }
  if (text.substr(0, 5) == "wheel") {
    std::size_t size = n;
    const std::string_view digits = text.substr(5);
    if (!digits.empty()) {
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), size);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw InputError("bad wheel size");
    }
    if (size < 3 || size > 8) throw InputError("wheel size must be in 3..8");
    return {"wheel", size};
  }
  throw InputError("unknown catalog id '" + std::string(text) + "'");
}

std::string CatalogId::to_string() const { return name == "wheel" ? "wheel" + std::to_string(n) : name; }

std::vector<CatalogId> catalog_entries() {
  std::vector<CatalogId> out;
  for (const char* name : {"f7", "f7dual", "mk4", "mk5", "mk5dual", "mk33", "mk33dual", "pg12", "pg22", "pg32",
                           "pg42", "ag32"}) {
    out.push_back(CatalogId::parse(name));
  }
  for (std::size_t n = 3; n <= 8; ++n) out.push_back({"wheel", n});
  for (const char* name : {"section6-g", "section6-n", "section6-m"}) out.push_back(CatalogId::parse(name));
  return out;
}

BinaryMatroid catalog(const CatalogId& id) {
  const std::string& n = id.name;
  if (n == "f7") return projective_geometry(2);
  if (n == "f7dual") return dual(projective_geometry(2));
  if (n == "mk4") return graphic(complete_graph(4));
  if (n == "mk5") return graphic(complete_graph(5));
  if (n == "mk5dual") return dual(graphic(complete_graph(5)));
  if (n == "mk33") return graphic(complete_bipartite_33());
  if (n == "mk33dual") return dual(graphic(complete_bipartite_33()));
  if (n == "ag32") return affine_geometry_32();
  if (n.size() == 4 && n.substr(0, 2) == "pg") return projective_geometry(static_cast<std::size_t>(n[2] - '0'));
  if (n == "wheel") {
    if (id.n < 3 || id.n > 8) throw InputError("wheel size must be in 3..8");
    return graphic(wheel_graph(id.n));
  }
  if (n == "section6-g") return section6(Section6Stage::G);
  if (n == "section6-n") return section6(Section6Stage::N);
  if (n == "section6-m") return section6(Section6Stage::M);
  throw InputError("unknown catalog id '" + n + "'");
}

bool is_modular_flat(const BinaryMatroid& m, ElementSet f) {
  if (closure(m, f) != f) throw UnsupportedCase("modularity check needs a closed set");
  if (m.rank(f) + 1 != m.rank()) throw UnsupportedCase("modularity is only checked for hyperplanes");
  const ElementSet outside = m.ground() - f;
  for (std::size_t x : outside) {
    for (std::size_t y : outside) {
      if (y <= x) continue;
      const ElementSet pair{x, y};
      if (m.rank(pair) != 2) continue;
      if (!closure(m, pair).intersects(f)) return false;
    }
  }
  return true;
}

BinaryMatroid generalized_parallel_connection(const BinaryMatroid& m1, const BinaryMatroid& m2,
                                              const GlueMap& glue, const GpcOptions& options) {
  std::vector<std::size_t> t1, t2;
  ElementSet t1_set, t2_set;
  for (const auto& [a, b] : glue.pairs) {
    const std::size_t i = m1.index_of(a);
    const std::size_t j = m2.index_of(b);
    if (t1_set.contains(i) || t2_set.contains(j)) throw InputError("glue map is not injective");
    t1.push_back(i);
    t2.push_back(j);
    t1_set = t1_set.with(i);
    t2_set = t2_set.with(j);
  }
  const BinaryMatroid glued1(m1.matrix().select_columns(t1));
  const BinaryMatroid glued2(m2.matrix().select_columns(t2));
  std::vector<std::size_t> identity(t1.size());
  for (std::size_t k = 0; k < identity.size(); ++k) identity[k] = k;
  if (!is_isomorphism(glued1, glued2, identity)) {
    throw InputError("glue map is not an isomorphism between the glued restrictions");
  }
  if (closure(m2, t2_set) != t2_set) throw PreconditionError("glued set is not closed in the second matroid");
  if (!options.assume_modular) {
    const bool hyperplane = closure(m1, t1_set) == t1_set && m1.rank(t1_set) + 1 == m1.rank();
    if (!hyperplane) {
      throw PreconditionError("modularity of the glued set cannot be verified (not a hyperplane); "
                              "set assume_modular to override");
    }
    if (!is_modular_flat(m1, t1_set)) throw PreconditionError("glued set is not a modular flat");
  }

  std::vector<std::string> labels = m2.labels();
  std::vector<std::size_t> added;
  for (std::size_t i : m1.ground() - t1_set) {
    if (m2.find(m1.labels()[i])) throw InputError("label '" + m1.labels()[i] + "' occurs in both matroids");
    labels.push_back(m1.labels()[i]);
    added.push_back(i);
  }

  // Basis of m1: the first independent glue elements in glue order, then the
  // first independent non-glue elements. Positions below rank_t map through
  // the glue into m2's coordinates; the rest become new unit rows.
  TrackedBasis basis;
  std::vector<std::size_t> glue_basis;  // indices into t1/t2
  for (std::size_t k = 0; k < t1.size(); ++k) {
    if (basis.add(m1.column(t1[k])).independent) glue_basis.push_back(k);
  }
  const std::size_t rank_t = basis.rank();
  for (std::size_t i : added) basis.add(m1.column(i));
  const std::size_t extra = m1.rank() - rank_t;

  const BitMatrix& a2 = m2.matrix();
  const std::size_t rows = a2.rows() + extra;
  BitMatrix out(rows, labels.size());
  for (std::size_t r = 0; r < a2.rows(); ++r) {
    for (std::size_t c : ElementSet(a2.row(r))) out.set(r, c, true);
  }
  for (std::size_t k = 0; k < added.size(); ++k) {
    const std::size_t col = m2.size() + k;
    const TrackedBasis::Outcome coords = basis.express(m1.column(added[k]));
    for (std::size_t p : ElementSet(coords.combo)) {
      if (p < rank_t) {
        const std::size_t partner = t2[glue_basis[p]];
        for (std::size_t r = 0; r < a2.rows(); ++r) {
          if (a2.get(r, partner)) out.set(r, col, !out.get(r, col));
        }
      } else {
        out.set(a2.rows() + (p - rank_t), col, true);
      }
    }
  }
  BinaryMatroid result(std::move(out), std::move(labels));

  // Postconditions: both sides come back, and the rank adds up.
  if (!same_matroid(restriction(result, ElementSet::first(m2.size())).relabeled(m2.labels()), m2)) {
    throw Error("parallel connection does not restrict to the second matroid");
  }
  std::vector<std::size_t> m1_order(m1.size());
  for (std::size_t k = 0; k < t1.size(); ++k) m1_order[t1[k]] = t2[k];
  for (std::size_t k = 0; k < added.size(); ++k) m1_order[added[k]] = m2.size() + k;
  const BinaryMatroid side1(result.matrix().select_columns(m1_order));
  std::vector<std::size_t> identity1(m1.size());
  for (std::size_t k = 0; k < identity1.size(); ++k) identity1[k] = k;
  if (!is_isomorphism(m1, side1, identity1)) {
    throw Error("parallel connection does not restrict to the first matroid");
  }
  if (result.rank() != m1.rank() + m2.rank() - rank_t) throw Error("parallel connection has the wrong rank");
  return result;
}

namespace {

// Columns a..f over the vertex rows a1 a2 a3 b1 b2 b3 u v w.
constexpr std::array<std::string_view, 9> kSection6B = {
    "101110",  // a1
    "101110",  // a2
    "101110",  // a3
    "110011",  // b1
    "011101",  // b2
    "011101",  // b3
    "110011",  // u
    "100101",  // v
    "001011",  // w
};

}  // namespace

GraphSpec section6_graph() {
  GraphSpec g = complete_bipartite_33();
  g.vertices.insert(g.vertices.end(), {"u", "v", "w"});
  for (const char* hub : {"u", "v", "w"}) {
    for (const char* end : {"a1", "a2", "a3", "b1", "b2", "b3"}) {
      g.edges.push_back({hub, end, std::string(hub) + end});
    }
  }
  return g;
}

GlueMap section6_glue() {
  return GlueMap{{{"g12", "a"}, {"g13", "b"}, {"g14", "c"}, {"g23", "d"}, {"g34", "e"}, {"g24", "f"}}};
}

BinaryMatroid section6(Section6Stage stage) {
  const BinaryMatroid g = graphic(section6_graph());
  if (stage == Section6Stage::G) return g;

  const BitMatrix b = BitMatrix::from_strings(kSection6B, 6);
  const BitMatrix& a = g.matrix();
  BitMatrix n(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c : ElementSet(a.row(r))) n.set(r, c, true);
    for (std::size_t c : ElementSet(b.row(r))) n.set(r, a.cols() + c, true);
  }
  std::vector<std::string> labels = g.labels();
  labels.insert(labels.end(), {"a", "b", "c", "d", "e", "f"});
  BinaryMatroid nm(std::move(n), std::move(labels));
  if (stage == Section6Stage::N) return nm;

  return generalized_parallel_connection(graphic(complete_graph(5)), nm, section6_glue());
}

}  // namespace binmat
