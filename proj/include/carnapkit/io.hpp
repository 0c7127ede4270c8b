#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/error.hpp"
#include "carnapkit/heyting.hpp"
#include "carnapkit/nucleus.hpp"
#include "carnapkit/poset.hpp"
#include "carnapkit/topology.hpp"

// Line-oriented text formats. Blank lines and everything after `#` are
// ignored; every other line is `key: payload`.
//
//   poset      elements: a b c / order: a<=b b<=c
//   nucleus    map: {a} -> {a,b}        (one line per upset)
//   topology   points: 0 1 / open: {1}
//   algebra    carrier: 0 a 1 / zero: 0 / one: 1 / meet: a 1 -> a
//              (likewise join and arrow; every pair exactly once)

namespace carnap {

/// File contents, or the text after `inline:` with `;` read as a newline.
inline std::string read_source(const std::string& spec) {
  if (spec.rfind("inline:", 0) == 0) {
    std::string text = spec.substr(7);
    for (char& c : text)
      if (c == ';') c = '\n';
    return text;
  }
  std::ifstream in(spec);
  if (!in) throw IoError("cannot read " + spec);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

struct Line {
  std::size_t number;
  std::string key;
  std::string payload;
};

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::vector<Line> lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", n);
    out.push_back({n, trim(s.substr(0, colon)), trim(s.substr(colon + 1))});
  }
  return out;
}

/// Names may not contain any of `reserved`, nor be `->`.
inline std::vector<std::string> element_names(const std::vector<std::string>& ws, std::size_t line,
                                              const char* reserved = "{},<=>-") {
  if (ws.empty()) throw ParseError("no elements declared", line);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i] == "->" || ws[i].find_first_of(reserved) != std::string::npos)
      throw ParseError("invalid element name '" + ws[i] + "'", line);
    for (std::size_t j = 0; j < i; ++j)
      if (ws[i] == ws[j]) throw ParseError("duplicate element '" + ws[i] + "'", line);
  }
  return ws;
}

inline int lookup(const std::vector<std::string>& names, const std::string& name, std::size_t line) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw ParseError("unknown element '" + name + "'", line);
}

}  // namespace detail

/// `{a,b}` or `{}` over the given names.
inline PointSet parse_set(const std::string& text, const std::vector<std::string>& names, std::size_t line = 1) {
  std::string s = detail::trim(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError("expected a set such as {a,b}", line);
  PointSet out;
  std::stringstream in(s.substr(1, s.size() - 2));
  for (std::string item; std::getline(in, item, ',');) {
    item = detail::trim(item);
    if (item.empty()) {
      if (s.size() == 2 || detail::trim(s.substr(1, s.size() - 2)).empty()) continue;
      throw ParseError("empty set member", line);
    }
    out = out.with(detail::lookup(names, item, line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Posets

inline Poset parse_poset(const std::string& text) {
  auto ls = detail::lines(text);
  if (ls.empty() || ls[0].key != "elements") throw ParseError("first line must be 'elements:'", ls.empty() ? 1 : ls[0].number);
  auto names = detail::element_names(detail::words(ls[0].payload), ls[0].number);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (ls[i].key != "order") throw ParseError("unexpected key '" + ls[i].key + "'", ls[i].number);
    for (const auto& w : detail::words(ls[i].payload)) {
      auto at = w.find("<=");
      if (at == std::string::npos) throw ParseError("expected a<=b, got '" + w + "'", ls[i].number);
      pairs.emplace_back(detail::lookup(names, w.substr(0, at), ls[i].number), detail::lookup(names, w.substr(at + 2), ls[i].number));
    }
  }
  return Poset::from_generators(names, pairs);
}

/// Elements and the covering pairs.
inline std::string format_poset(const Poset& P) {
  std::string out = "elements:";
  for (const auto& n : P.names()) out += " " + n;
  out += "\n";
  std::string order;
  for (int x = 0; x < P.size(); ++x)
    for (int y : P.covers(x).members()) order += " " + P.name(x) + "<=" + P.name(y);
  if (!order.empty()) out += "order:" + order + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Nuclei

/// The table of j over L, one entry per upset in lattice order. Every upset
/// must be mapped exactly once; the nucleus axioms are not checked here.
inline std::vector<PointSet> parse_nucleus_table(const std::string& text, const UpSetLattice& L) {
  const auto& names = L.poset().names();
  std::vector<PointSet> table(L.size());
  std::vector<bool> seen(L.size(), false);
  for (const auto& l : detail::lines(text)) {
    if (l.key != "map") throw ParseError("unexpected key '" + l.key + "'", l.number);
    auto arrow = l.payload.find("->");
    if (arrow == std::string::npos) throw ParseError("expected '{..} -> {..}'", l.number);
    PointSet from = parse_set(l.payload.substr(0, arrow), names, l.number);
    PointSet to = parse_set(l.payload.substr(arrow + 2), names, l.number);
    int i = L.index_of(from);
    if (i < 0) throw ParseError(format_set(from, names) + " is not an upset", l.number);
    if (seen[i]) throw ParseError(format_set(from, names) + " is mapped twice", l.number);
    seen[i] = true;
    table[i] = to;
  }
  for (int i = 0; i < L.size(); ++i)
    if (!seen[i]) throw ParseError("no image given for " + format_set(L[i], names), 0);
  return table;
}

inline std::string format_nucleus(const NuclearFrame& NF) {
  std::string out;
  const auto& names = NF.poset().names();
  for (int i = 0; i < NF.lattice().size(); ++i)
    out += "map: " + format_set(NF.lattice()[i], names) + " -> " + format_set(NF.lattice()[NF.apply(i)], names) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Topologies

inline FiniteTopology parse_topology(const std::string& text) {
  auto ls = detail::lines(text);
  if (ls.empty() || ls[0].key != "points") throw ParseError("first line must be 'points:'", ls.empty() ? 1 : ls[0].number);
  auto names = detail::element_names(detail::words(ls[0].payload), ls[0].number);
  std::vector<PointSet> opens;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (ls[i].key != "open") throw ParseError("unexpected key '" + ls[i].key + "'", ls[i].number);
    opens.push_back(parse_set(ls[i].payload, names, ls[i].number));
  }
  return FiniteTopology(names, opens);
}

inline std::string format_topology(const FiniteTopology& T) {
  std::string out = "points:";
  for (const auto& n : T.names()) out += " " + n;
  out += "\n";
  for (auto o : T.opens()) out += "open: " + format_set(o, T.names()) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Algebras

inline FiniteAlgebra parse_algebra(const std::string& text) {
  auto ls = detail::lines(text);
  if (ls.empty() || ls[0].key != "carrier") throw ParseError("first line must be 'carrier:'", ls.empty() ? 1 : ls[0].number);
  auto names = detail::element_names(detail::words(ls[0].payload), ls[0].number, "#:");
  const int n = static_cast<int>(names.size());
  int zero = -1, one = -1;
  std::map<std::string, FiniteAlgebra::Table> tables = {{"meet", {}}, {"join", {}}, {"arrow", {}}};
  for (auto& [k, t] : tables) t.assign(n * n, -1);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& l = ls[i];
    auto ws = detail::words(l.payload);
    if (l.key == "zero" || l.key == "one") {
      if (ws.size() != 1) throw ParseError("expected one element", l.number);
      (l.key == "zero" ? zero : one) = detail::lookup(names, ws[0], l.number);
      continue;
    }
    auto it = tables.find(l.key);
    if (it == tables.end()) throw ParseError("unexpected key '" + l.key + "'", l.number);
    if (ws.size() != 4 || ws[2] != "->") throw ParseError("expected 'x y -> z'", l.number);
    int a = detail::lookup(names, ws[0], l.number), b = detail::lookup(names, ws[1], l.number);
    int c = detail::lookup(names, ws[3], l.number);
    int& slot = it->second[a * n + b];
    if (slot >= 0) throw ParseError(l.key + " " + ws[0] + " " + ws[1] + " given twice", l.number);
    slot = c;
  }
  if (zero < 0) throw ParseError("missing 'zero:'", 0);
  if (one < 0) throw ParseError("missing 'one:'", 0);
  for (const auto& [k, t] : tables)
    for (int i = 0; i < n * n; ++i)
      if (t[i] < 0) throw ParseError(k + " " + names[i / n] + " " + names[i % n] + " is missing", 0);
  return FiniteAlgebra(names, zero, one, tables["meet"], tables["join"], tables["arrow"]);
}

inline std::string format_algebra(const FiniteAlgebra& A) {
  std::string out = "carrier:";
  for (const auto& n : A.names()) out += " " + n;
  out += "\nzero: " + A.name(A.zero()) + "\none: " + A.name(A.one()) + "\n";
  const int n = A.size();
  const std::pair<const char*, const FiniteAlgebra::Table*> ops[] = {
      {"meet", &A.meet_table()}, {"join", &A.join_table()}, {"arrow", &A.arrow_table()}};
  for (auto [key, t] : ops)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out += std::string(key) + ": " + A.name(a) + " " + A.name(b) + " -> " + A.name((*t)[a * n + b]) + "\n";
  return out;
}

}  // namespace carnap
