#include "binmat/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "binmat/error.hpp"

namespace binmat {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::size_t parse_count(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError(std::string("bad ") + what + " '" + s + "'");
  }
  return std::stoul(s);
}

}  // namespace

std::string render_matroid(const BinaryMatroid& m) {
  std::string out(kMatroidHeader);
  out += "\nrows " + std::to_string(m.matrix().rows()) + " cols " + std::to_string(m.size()) + "\n";
  for (const std::string& row : m.matrix().to_strings()) out += row + "\n";
  out += "labels";
  for (const std::string& l : m.labels()) out += " " + l;
  out += "\n";
  return out;
}

BinaryMatroid parse_matroid(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) lines.push_back(trim(line));
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines[0] != kMatroidHeader) {
    throw InputError("missing header line '" + std::string(kMatroidHeader) + "'");
  }
  if (lines.size() < 2) throw InputError("missing dimensions line");
  const auto dims = split_words(lines[1]);
  if (dims.size() != 4 || dims[0] != "rows" || dims[2] != "cols") {
    throw InputError("dimensions line must read 'rows R cols N'");
  }
  const std::size_t rows = parse_count(dims[1], "row count");
  const std::size_t cols = parse_count(dims[3], "column count");
  if (cols > kMaxColumns) throw CapacityError("at most 64 columns are supported");
  if (lines.size() < 2 + rows) throw InputError("file ends before all matrix rows");
  std::vector<std::string_view> row_text;
  for (std::size_t r = 0; r < rows; ++r) row_text.emplace_back(lines[2 + r]);
  BitMatrix matrix = BitMatrix::from_strings(row_text, cols);

  std::vector<std::string> labels;
  std::size_t next = 2 + rows;
  if (next < lines.size()) {
    auto words = split_words(lines[next]);
    if (words.empty() || words[0] != "labels") throw InputError("unexpected line '" + lines[next] + "'");
    labels.assign(words.begin() + 1, words.end());
    if (labels.size() != cols) {
      throw InputError("labels line has " + std::to_string(labels.size()) + " names for " + std::to_string(cols) +
                       " columns");
    }
    ++next;
  }
  if (next != lines.size()) throw InputError("trailing content after the labels line");
  if (cols == 0) return BinaryMatroid(std::move(matrix), {});
  return BinaryMatroid(std::move(matrix), std::move(labels));
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string ReportDocument::render() const {
  std::string out = "command: " + command + "\n";
  out += "verdict: " + to_string(verdict) + "\n";
  for (const std::string& line : body) out += line + "\n";
  Json mirror = Json::object();
  mirror["command"] = command;
  mirror["verdict"] = to_string(verdict);
  for (const auto& [key, value] : data.items()) mirror[key] = value;
  out += mirror.dump() + "\n";
  return out;
}

int ReportDocument::exit_code() const {
  switch (verdict) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    default: return 2;
  }
}

Json to_json(const BinaryMatroid& m, ElementSet x) { return Json(m.names(x)); }

Json to_json(const BinaryMatroid& m, const SeparationWitness& w) {
  return Json{{"kind", to_string(w.kind)},
              {"side_x", to_json(m, w.side_x)},
              {"lambda", w.lambda},
              {"size_x", w.size_x},
              {"size_y", w.size_y}};
}

Json to_json(const BinaryMatroid& m, const AuditReport& r) {
  Json witnesses = Json::array();
  for (const AuditWitness& w : r.witnesses) {
    Json j{{"kind", w.kind}, {"elements", to_json(m, w.elements)}, {"detail", w.detail}};
    if (w.separation) {
      const BinaryMatroid si = si_contract(m, w.elements.front()).matroid;
      j["separation"] = to_json(si, *w.separation);
    }
    witnesses.push_back(std::move(j));
  }
  Json out{{"audit", r.name}, {"applicable", r.applicable}};
  out["passed"] = r.passed ? Json(*r.passed) : Json(nullptr);
  out["witnesses"] = std::move(witnesses);
  out["notes"] = r.notes;
  return out;
}

Json to_json(const BinaryMatroid& m, const CensusReport& c) {
  Json per = Json::object();
  for (std::size_t e = 0; e < m.size(); ++e) per[m.labels()[e]] = c.per_element[e];
  Json out{{"total_triangles", c.total_triangles}};
  out["uniform_k"] = c.uniform_k ? Json(*c.uniform_k) : Json(nullptr);
  out["per_element"] = std::move(per);
  return out;
}

Json to_json(const ElementVerdict& v) {
  Json out{{"element", v.element}, {"status", to_string(v.status)}};
  if (v.witness) {
    out["witness"] = Json{{"kind", to_string(v.witness->kind)},
                          {"side_x", v.witness_side},
                          {"lambda", v.witness->lambda},
                          {"size_x", v.witness->size_x},
                          {"size_y", v.witness->size_y}};
  }
  return out;
}

ElementVerdict element_verdict_from_json(const BinaryMatroid& m, const Json& j) {
  try {
    ElementVerdict v;
    v.element = j.at("element").get<std::string>();
    const std::size_t e = m.index_of(v.element);
    const std::string status = j.at("status").get<std::string>();
    if (status == "good") {
      v.status = ElementStatus::Good;
    } else if (status == "bad") {
      v.status = ElementStatus::Bad;
    } else if (status == "loop") {
      v.status = ElementStatus::Loop;
    } else {
      v.status = ElementStatus::Indeterminate;
    }
    if (j.contains("witness")) {
      const Json& w = j.at("witness");
      const BinaryMatroid si = si_contract(m, e).matroid;
      v.witness_side = w.at("side_x").get<std::vector<std::string>>();
      SeparationWitness sw;
      sw.side_x = si.resolve(v.witness_side);
      sw.lambda = lambda(si, sw.side_x);
      sw.size_x = sw.side_x.size();
      sw.size_y = si.size() - sw.size_x;
      sw.k = separation_order(sw.lambda, sw.size_x, sw.size_y);
      const std::string kind = w.at("kind").get<std::string>();
      for (SeparationKind k : {SeparationKind::KSeparation, SeparationKind::Violator43, SeparationKind::Fan4,
                               SeparationKind::Sequential}) {
        if (to_string(k) == kind) sw.kind = k;
      }
      if (!revalidate(si, sw)) throw InputError("stored witness for '" + v.element + "' does not revalidate");
      v.witness = sw;
    }
    return v;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed element record: ") + ex.what());
  }
}

Json to_json(const BinaryMatroid& m, const TheoremReport& r) {
  Json elements = Json::array();
  for (const ElementVerdict& v : r.elements) elements.push_back(to_json(v));
  Json out{{"internally_4_connected", r.internally_4_connected}};
  out["census_k"] = r.census_k ? Json(*r.census_k) : Json(nullptr);
  out["hypotheses_ok"] = r.hypotheses_ok;
  out["good"] = to_json(m, r.good);
  out["bad"] = to_json(m, r.bad);
  out["good_count"] = r.good.size();
  out["min4_ok"] = r.min4_ok;
  out["cocircuit_clause"] = to_string(r.clause);
  out["clause_cocircuit"] = r.clause_cocircuit ? to_json(m, *r.clause_cocircuit) : Json(nullptr);
  out["indeterminate"] = r.indeterminate;
  out["elements"] = std::move(elements);
  return out;
}

std::string describe(const BinaryMatroid& m, const SeparationWitness& w) {
  return to_string(w.kind) + " X=" + m.format(w.side_x) + " lambda=" + std::to_string(w.lambda) +
         " sizes=" + std::to_string(w.size_x) + "/" + std::to_string(w.size_y);
}

std::vector<std::string> describe(const BinaryMatroid& m, const AuditReport& r) {
  std::vector<std::string> out;
  out.push_back("audit: " + r.name);
  out.push_back(std::string("applicable: ") + (r.applicable ? "yes" : "no"));
  for (const AuditWitness& w : r.witnesses) {
    std::string line = "witness: " + w.kind + " " + m.format(w.elements);
    if (!w.detail.empty()) line += " -- " + w.detail;
    out.push_back(line);
    if (w.separation) {
      const BinaryMatroid si = si_contract(m, w.elements.front()).matroid;
      out.push_back("  separation: " + describe(si, *w.separation));
    }
  }
  for (const std::string& n : r.notes) out.push_back("note: " + n);
  return out;
}

std::vector<std::string> describe(const BinaryMatroid& m, const TheoremReport& r) {
  std::vector<std::string> out;
  out.push_back(std::string("internally-4-connected: ") + (r.internally_4_connected ? "yes" : "no"));
  out.push_back("census: " + (r.census_k ? "uniform " + std::to_string(*r.census_k) : std::string("not uniform")));
  out.push_back(std::string("hypotheses: ") + (r.hypotheses_ok ? "hold" : "fail"));
  out.push_back("good (" + std::to_string(r.good.size()) + "): " + m.format(r.good));
  out.push_back("bad (" + std::to_string(r.bad.size()) + "): " + m.format(r.bad));
  for (const ElementVerdict& v : r.elements) {
    if (v.status == ElementStatus::Bad && v.witness) {
      std::string side = "{";
      for (std::size_t i = 0; i < v.witness_side.size(); ++i) side += (i ? ", " : "") + v.witness_side[i];
      side += "}";
      out.push_back("  si(M/" + v.element + "): " + to_string(v.witness->kind) + " X=" + side +
                    " lambda=" + std::to_string(v.witness->lambda) + " sizes=" + std::to_string(v.witness->size_x) +
                    "/" + std::to_string(v.witness->size_y));
    } else if (v.status == ElementStatus::Indeterminate) {
      out.push_back("  si(M/" + v.element + "): indeterminate");
    }
  }
  out.push_back(std::string("at-least-four: ") + (r.min4_ok ? "yes" : "no"));
  std::string clause = "cocircuit-clause: " + to_string(r.clause);
  if (r.clause_cocircuit) clause += " " + m.format(*r.clause_cocircuit);
  out.push_back(clause);
  if (r.indeterminate) out.push_back("note: some searches ran out of budget; report is partial");
  return out;
}

}  // namespace binmat
