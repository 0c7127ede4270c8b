#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "carnapkit/acceptance.hpp"
#include "carnapkit/algebra.hpp"
#include "carnapkit/budget.hpp"
#include "carnapkit/error.hpp"
#include "carnapkit/formula.hpp"
#include "carnapkit/heyting.hpp"
#include "carnapkit/interp.hpp"
#include "carnapkit/io.hpp"
#include "carnapkit/nucleus.hpp"
#include "carnapkit/prover.hpp"
#include "carnapkit/topology.hpp"

namespace carnap {

enum class Verdict { Pass, Fail, Undecided };

inline const char* to_string(Verdict v) { return v == Verdict::Pass ? "PASS" : v == Verdict::Fail ? "FAIL" : "UNDECIDED"; }

/// A parsed command line. Empty strings mean "not given".
struct RunConfig {
  std::string command;
  /// `algebra` subcommand.
  std::string action;
  /// Positional text: the consequence for prove, the formula for eval, the
  /// suite for accept.
  std::string text;
  std::string logic = "ipc";
  std::string poset;
  std::string nucleus = "kripke";
  std::string topology;
  std::string algebra;
  /// standard | topological | holliday
  std::string interp = "standard";
  std::string mode = "set-fmla";
  std::string engine = "derive";
  std::vector<std::string> consequences;
  /// `p={a},q={}` for set-valued interpretations, `p=a,q=0` for algebras.
  std::string valuation;
  /// Nucleus on an algebra, images listed in carrier order.
  std::string j;
  int search = 0;
  int max_size = 6;
  int points = 2;
  std::string family;
  std::uint64_t map_nodes = 200000;
  bool witness = false;
  bool porcelain = false;
  Budget budget = Budget::from_env();
};

struct RunResult {
  int exit_code = 0;
  std::string report;
};

namespace cli {

/// Accumulates report lines: `key: value` for people, `key<TAB>value` with
/// --porcelain.
class Report {
 public:
  explicit Report(bool porcelain) : porcelain_(porcelain) {}

  void kv(const std::string& key, const std::string& value) { out_ += key + (porcelain_ ? "\t" : ": ") + value + "\n"; }
  void kv(const std::string& key, bool value) { kv(key, std::string(value ? "yes" : "no")); }
  void kv(const std::string& key, std::uint64_t value) { kv(key, std::to_string(value)); }
  void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }

  /// Columns padded for people, tab-separated with --porcelain.
  void table(const std::vector<std::vector<std::string>>& rows) {
    if (porcelain_) {
      for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) line += (i ? "\t" : "") + r[i];
        out_ += line + "\n";
      }
      return;
    }
    std::vector<std::size_t> width;
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], display_width(r[i]));
      }
    for (const auto& r : rows) {
      std::string line = "  ";
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - display_width(r[i]) + 2, ' ');
      }
      out_ += line + "\n";
    }
  }

  RunResult finish(Verdict v) {
    out_ += std::string("VERDICT: ") + to_string(v) + "\n";
    return {static_cast<int>(v), out_};
  }

 private:
  // Code points, so that ∧ and → count once.
  static std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
  }

  bool porcelain_;
  std::string out_;
};

inline int parse_count(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v < 1) throw ValidationError("invalid " + what + " '" + s + "'");
  return v;
}

/// chain:N, antichain:N, vee, or a poset file / inline: text.
inline Poset load_poset(const std::string& spec) {
  if (spec.empty()) throw ValidationError("--poset is required");
  if (spec.rfind("chain:", 0) == 0) return Poset::chain(parse_count(spec.substr(6), "chain length"));
  if (spec.rfind("antichain:", 0) == 0) return Poset::antichain(parse_count(spec.substr(10), "antichain size"));
  if (spec == "vee") return Poset::vee();
  return parse_poset(read_source(spec));
}

/// sierpinski, discrete:N, trivial:N, or a topology file / inline: text.
inline FiniteTopology load_topology(const std::string& spec) {
  if (spec == "sierpinski") return FiniteTopology::sierpinski();
  if (spec.rfind("discrete:", 0) == 0) return FiniteTopology::discrete(parse_count(spec.substr(9), "size"));
  if (spec.rfind("trivial:", 0) == 0) return FiniteTopology::trivial(parse_count(spec.substr(8), "size"));
  return parse_topology(read_source(spec));
}

/// chain:N, powerset:K, or an algebra file / inline: text.
inline FiniteAlgebra load_algebra(const std::string& spec) {
  if (spec.empty()) throw ValidationError("--algebra is required");
  if (spec.rfind("chain:", 0) == 0) return heyting_chain(parse_count(spec.substr(6), "chain length"));
  if (spec.rfind("powerset:", 0) == 0) return powerset_algebra(parse_count(spec.substr(9), "size"));
  return parse_algebra(read_source(spec));
}

/// kripke | beth | dd | top | file:<path>; invalid tables throw.
inline NuclearFrame load_frame(const Poset& P, const std::string& spec, const Budget& budget) {
  if (spec.rfind("file:", 0) == 0) {
    auto L = std::make_shared<const UpSetLattice>(P, budget.poset);
    return NuclearFrame::from_table(L, parse_nucleus_table(read_source(spec.substr(5)), *L), spec.substr(5));
  }
  return nucleus_by_name(P, spec, budget.poset);
}

/// The interpretation selected by --interp with --poset/--nucleus or
/// --topology.
inline Interpretation load_interpretation(const RunConfig& c) {
  if (c.interp == "standard") {
    if (!c.topology.empty()) return standard_topological_interpretation(load_topology(c.topology));
    return standard_interpretation(load_frame(load_poset(c.poset), c.nucleus, c.budget));
  }
  if (c.interp == "topological" || c.interp == "holliday") {
    FiniteTopology T = c.topology.empty() ? alexandroff(load_poset(c.poset)) : load_topology(c.topology);
    return c.interp == "holliday" ? holliday_interpretation(T) : standard_topological_interpretation(T);
  }
  throw ValidationError("unknown interpretation '" + c.interp + "' (expected standard, topological or holliday)");
}

inline std::vector<std::pair<std::string, std::string>> split_assignments(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto eq = text.find('=', i);
    if (eq == std::string::npos) throw ParseError("expected atom=value", i);
    std::string atom = detail::trim(text.substr(i, eq - i));
    std::size_t end;
    const std::string rest = detail::trim(text.substr(eq + 1));
    if (!rest.empty() && rest.front() == '{') {
      end = text.find('}', eq);
      if (end == std::string::npos) throw ParseError("unterminated set", eq);
      ++end;
    } else {
      end = text.find(',', eq);
      if (end == std::string::npos) end = text.size();
    }
    out.emplace_back(atom, detail::trim(text.substr(eq + 1, end - eq - 1)));
    i = text.find(',', end);
    i = i == std::string::npos ? text.size() : i + 1;
  }
  return out;
}

inline Valuation parse_set_valuation(const std::string& text, const Interpretation& I) {
  Valuation v;
  for (const auto& [atom, value] : split_assignments(text)) {
    PointSet s = parse_set(value, I.point_names);
    if (I.range_index_of(s) < 0) throw ValidationError("v(" + atom + ")=" + value + " is outside the valuation range");
    v[atom] = s;
  }
  return v;
}

inline AlgebraValuation parse_algebra_valuation(const std::string& text, const FiniteAlgebra& A) {
  AlgebraValuation v;
  for (const auto& [atom, value] : split_assignments(text)) v[atom] = detail::lookup(A.names(), value, 1);
  return v;
}

inline std::vector<Consequence> consequences_or_probes(const RunConfig& c) {
  if (c.consequences.empty()) return probe_consequences();
  std::vector<Consequence> out;
  for (const auto& s : c.consequences) out.push_back(parse_consequence(s));
  return out;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

inline void describe_poset(Report& r, const Poset& P) {
  std::string elements, order;
  for (const auto& n : P.names()) elements += (elements.empty() ? "" : " ") + n;
  for (int x = 0; x < P.size(); ++x)
    for (int y : P.covers(x).members()) order += (order.empty() ? "" : " ") + P.name(x) + "<=" + P.name(y);
  r.kv("elements", elements);
  r.kv("covers", order.empty() ? std::string("none") : order);
}

inline RunResult prove(const RunConfig& c) {
  Report r(c.porcelain);
  const Consequence q = parse_consequence(c.text);
  r.kv("consequence", to_string(q));
  r.kv("logic", c.logic);
  ProofVerdict v;
  if (c.logic == "ipc") {
    ProverOptions opts;
    opts.want_countermodel = c.witness;
    opts.countermodel_size = c.max_size;
    opts.nodes = c.budget.nodes;
    v = prove_ipc(q, opts);
  } else if (c.logic == "cpc") {
    v = prove_cpc(q);
  } else {
    throw ValidationError("unknown logic '" + c.logic + "' (expected ipc or cpc)");
  }
  r.kv("provable", v.provable);
  if (!v.provable && c.witness) {
    if (v.witness) {
      const auto& m = *v.witness;
      describe_poset(r, m.poset);
      r.kv("world", m.poset.name(m.world));
      r.kv("valuation", format_valuation(m.valuation, m.poset.names()));
    } else {
      r.kv("countermodel", "none found within " + std::to_string(c.max_size) + " worlds");
    }
  }
  return r.finish(v.provable ? Verdict::Pass : Verdict::Fail);
}

inline void describe_nucleus(Report& r, const NuclearFrame& NF) {
  const auto& names = NF.poset().names();
  std::vector<std::vector<std::string>> rows = {{"U", "jU", "fixed"}};
  for (int i = 0; i < NF.lattice().size(); ++i)
    rows.push_back({format_set(NF.lattice()[i], names), format_set(NF.lattice()[NF.apply(i)], names), yes_no(NF.apply(i) == i)});
  r.table(rows);
  std::string fixed;
  for (auto s : NF.fixpoints()) fixed += (fixed.empty() ? "" : " ") + format_set(s, names);
  r.kv("fixpoints", fixed);
  r.kv("dense", NF.is_dense());
}

inline RunResult frame(const RunConfig& c) {
  Report r(c.porcelain);
  if (!c.topology.empty()) {
    const FiniteTopology T = load_topology(c.topology);
    std::string opens;
    for (auto o : T.opens()) opens += (opens.empty() ? "" : " ") + format_set(o, T.names());
    r.kv("opens", opens);
    auto R = dragalin_realization(T);
    r.kv("frame", std::string("nonempty opens under reverse inclusion"));
    describe_poset(r, R.poset);
    r.kv("nucleus", R.nucleus_verdict.describe(R.poset.names()));
    if (!R.frame) return r.finish(Verdict::Fail);
    describe_nucleus(r, *R.frame);
    r.kv("h bijective onto fixpoints", R.h_bijective);
    r.kv("h monotone", R.h_monotone);
    r.kv("fixpoints are the h(U) and the empty set", R.fixpoint_characterisation);
    auto conj = check_conjugation(R);
    r.kv("conjugation", conj.ok ? std::string("ok") : "fails for " + conj.connective);
    return r.finish(R.ok() && conj.ok ? Verdict::Pass : Verdict::Fail);
  }
  const Poset P = load_poset(c.poset);
  describe_poset(r, P);
  const NuclearFrame NF = load_frame(P, c.nucleus, c.budget);
  r.kv("upsets", NF.lattice().size());
  r.kv("nucleus", NF.name());
  describe_nucleus(r, NF);
  auto F = fixpoint_algebra(NF);
  auto hv = check_heyting(F.algebra);
  r.kv("fixpoint algebra", hv.ok ? std::string("Heyting") : hv.describe(F.algebra));
  return r.finish(hv.ok ? Verdict::Pass : Verdict::Fail);
}

inline RunResult nucleus(const RunConfig& c) {
  Report r(c.porcelain);
  const Poset P = load_poset(c.poset);
  describe_poset(r, P);
  auto L = std::make_shared<const UpSetLattice>(P, c.budget.poset);
  std::vector<PointSet> table;
  if (c.nucleus.rfind("file:", 0) == 0) {
    table = parse_nucleus_table(read_source(c.nucleus.substr(5)), *L);
  } else {
    auto NF = nucleus_by_name(P, c.nucleus, c.budget.poset);
    for (int i = 0; i < L->size(); ++i) table.push_back((*L)[NF.apply(i)]);
  }
  r.kv("nucleus", c.nucleus);
  auto v = validate_nucleus(*L, table);
  if (!v.ok) {
    r.kv("axioms", v.describe(P.names()));
    return r.finish(Verdict::Fail);
  }
  auto NF = NuclearFrame::from_table(L, table, c.nucleus);
  auto props = check_nucleus_properties(NF);
  describe_nucleus(r, NF);
  r.kv("axioms", props.describe(P.names()));
  if (c.nucleus == "beth") r.kv("agrees with maximal-point definition", NF == beth_nucleus_by_maximal_points(P, c.budget.poset));
  return r.finish(props.ok ? Verdict::Pass : Verdict::Fail);
}

inline RunResult eval(const RunConfig& c) {
  Report r(c.porcelain);
  const Formula f = parse_formula(c.text);
  r.kv("formula", to_string(f));
  if (!c.algebra.empty()) {
    const FiniteAlgebra A = load_algebra(c.algebra);
    auto v = parse_algebra_valuation(c.valuation, A);
    r.kv("valuation", format_valuation(A, v));
    r.kv("value", A.name(evaluate(A, v, f)));
    return r.finish(Verdict::Pass);
  }
  const Interpretation I = load_interpretation(c);
  auto v = parse_set_valuation(c.valuation, I);
  r.kv("interpretation", I.name);
  r.kv("valuation", format_valuation(v, I.point_names));
  r.kv("value", format_set(evaluate(I, v, f), I.point_names));
  return r.finish(Verdict::Pass);
}

inline RunResult consistency(const RunConfig& c) {
  Report r(c.porcelain);
  Mode mode;
  if (c.mode == "set-fmla") mode = Mode::SetFmla;
  else if (c.mode == "fmla-fmla") mode = Mode::FmlaFmla;
  else throw ValidationError("unknown mode '" + c.mode + "' (expected set-fmla or fmla-fmla)");
  const Interpretation I = load_interpretation(c);
  const auto cs = consequences_or_probes(c);
  r.kv("interpretation", I.name);
  r.kv("mode", std::string(to_string(mode)));
  r.kv("consequences", static_cast<int>(cs.size()));
  auto rep = check_consistency(I, cs, mode, c.budget);
  r.kv("valuations checked", rep.valuations_checked);
  if (rep.skipped) r.kv("skipped (several premises)", rep.skipped);
  r.kv("consistent", rep.consistent);
  if (!rep.consistent) {
    r.kv("violated", to_string(*rep.violated));
    if (c.witness) {
      r.kv("witness", format_valuation(rep.witness, I.point_names));
      r.kv("failing worlds", format_set(rep.worlds, I.point_names));
    }
  }
  return r.finish(rep.consistent ? Verdict::Pass : Verdict::Fail);
}

inline RunResult categoricity(const RunConfig& c) {
  Report r(c.porcelain);
  const Poset P = load_poset(c.poset);
  const NuclearFrame NF = load_frame(P, c.nucleus, c.budget);
  const auto& names = P.names();
  r.kv("nucleus", NF.name());
  r.kv("fixpoints", static_cast<int>(NF.fixpoints().size()));
  r.kv("engine", c.engine);
  if (c.engine == "derive") {
    auto f = derive_forced_tables(NF, c.budget);
    r.kv("passes", f.passes);
    r.kv("all entries forced", f.complete);
    r.kv("contradiction", f.contradiction);
    if (f.forced) {
      std::vector<std::vector<std::string>> rows;
      std::istringstream in(format_tables(*f.forced));
      for (std::string line; std::getline(in, line);) rows.push_back({line});
      r.table(rows);
    }
    std::vector<std::vector<std::string>> open;
    for (const auto& e : f.open) {
      std::string cands;
      for (auto s : e.candidates) cands += (cands.empty() ? "" : " ") + format_set(s, names);
      open.push_back({e.entry, "candidates " + cands, "between " + format_set(e.lower, names) + " and " + format_set(e.upper, names)});
    }
    if (!open.empty()) r.table(open);
    r.kv("equals standard", f.equals_standard);
    return r.finish(f.complete && f.equals_standard && !f.contradiction ? Verdict::Pass : Verdict::Fail);
  }
  if (c.engine == "exhaustive") {
    auto e = exhaustive_categoricity(NF, c.budget);
    r.kv("search", e.mode);
    r.kv("survivors", e.survivors);
    r.kv("nodes", e.nodes);
    for (const auto& d : e.deviations) r.kv("deviation", d);
    r.kv("equals standard", e.equals_standard);
    return r.finish(e.unique() && e.equals_standard ? Verdict::Pass : Verdict::Fail);
  }
  throw ValidationError("unknown engine '" + c.engine + "' (expected derive or exhaustive)");
}

inline RunResult holliday(const RunConfig& c) {
  Report r(c.porcelain);
  const FiniteTopology T = c.topology.empty() ? alexandroff(load_poset(c.poset)) : load_topology(c.topology);
  const auto& names = T.names();
  const auto H = holliday_interpretation(T);
  std::string opens;
  for (auto o : T.opens()) opens += (opens.empty() ? "" : " ") + format_set(o, names);
  r.kv("opens", opens);
  const auto corpus = theorem_corpus(2, 3);
  auto valid = check_theorem_validity(H, corpus, c.budget);
  r.kv("theorems checked", static_cast<int>(corpus.size()));
  r.kv("theorem validity", std::string(valid.valid ? "PASS" : "FAIL"));
  if (!valid.valid) r.kv("refuted theorem", to_string(*valid.failing) + " at " + format_valuation(valid.witness, names));
  auto tr = check_translation_identity_all(T, formula_universe(2, 3), c.budget);
  r.kv("translation identity", std::string(tr.ok ? "PASS" : "FAIL"));
  if (!tr.ok) r.kv("translation failure", to_string(*tr.failing) + " at " + format_valuation(tr.witness, names));
  auto div = holliday_negation_divergence(T);
  r.kv("U -> bot equals negation", div ? "no, at " + format_set(*div, names) : std::string("yes"));
  auto ns = holliday_nonstandard_witness(T);
  r.kv("conjunction differs from intersection",
       ns ? "at " + format_set(ns->first, names) + ", " + format_set(ns->second, names) : std::string("no"));
  auto cons = check_consistency(H, probe_consequences(), Mode::SetFmla, c.budget);
  r.kv("consistency", std::string(cons.consistent ? "PASS" : "FAIL"));
  if (!cons.consistent) {
    r.kv("violated", to_string(*cons.violated));
    r.kv("witness", format_valuation(cons.witness, names));
    if (c.witness) {
      const Consequence mp = parse_consequence("p, p -> q |- q");
      auto first = check_consistency(H, {mp}, Mode::SetFmla, c.budget);
      if (!first.consistent) r.kv("modus ponens witness", format_valuation(first.witness, names));
    }
  }
  return r.finish(valid.valid && tr.ok && !cons.consistent ? Verdict::Pass : Verdict::Fail);
}

inline RunResult search_atom_maps_cmd(const RunConfig& c) {
  Report r(c.porcelain);
  const Poset P = load_poset(c.poset);
  const auto& names = P.names();
  auto rep = search_atom_maps(P, probe_consequences(), c.budget, c.map_nodes);
  UpSetLattice L(P, c.budget.poset);
  r.kv("upsets", rep.lattice_size);
  r.kv("atom maps", static_cast<int>(rep.maps.size()));
  std::vector<std::vector<std::string>> rows = {{"map", "infl", "idem", "mult", "mono", "survivors", "kripke tables survive"}};
  for (const auto& e : rep.maps) {
    bool any = !e.survivors || *e.survivors > 0;
    if (!c.witness && !any) continue;
    std::string m;
    for (int i : e.map) m += (m.empty() ? "" : " ") + format_set(L[i], names);
    rows.push_back({m, yes_no(e.inflationary), yes_no(e.idempotent), yes_no(e.multiplicative), yes_no(e.monotone),
                    !e.survivors ? std::string("budget") : *e.survivors == UINT64_MAX ? std::string(">= 2^64") : std::to_string(*e.survivors), yes_no(e.standard_survives)});
  }
  r.table(rows);
  r.kv("surviving nuclei", rep.surviving_nuclei);
  r.kv("surviving non-nuclei", rep.surviving_non_nuclei);
  r.kv("undecided", rep.undecided);
  return r.finish(rep.undecided == 0 ? Verdict::Pass : Verdict::Undecided);
}

inline RunResult fmla_fmla_lab(const RunConfig& c) {
  Report r(c.porcelain);
  const int n = c.points;
  std::vector<std::string> names = Poset::default_names(n);
  std::vector<PointSet> family;
  if (c.family.empty()) {
    for (PointSet::mask_type m = 0; m < (PointSet::mask_type{1} << n); ++m) family.emplace_back(m);
  } else {
    std::size_t i = 0;
    while ((i = c.family.find('{', i)) != std::string::npos) {
      auto end = c.family.find('}', i);
      if (end == std::string::npos) throw ParseError("unterminated set in family", i);
      family.push_back(parse_set(c.family.substr(i, end - i + 1), names));
      i = end + 1;
    }
  }
  auto rep = fmla_fmla_search(n, family, c.budget);
  std::string fam;
  for (auto s : rep.family) fam += (fam.empty() ? "" : " ") + format_set(s, names);
  r.kv("family", fam);
  r.kv("closed under intersection", rep.intersection_closed);
  r.kv("surviving conjunction tables", rep.survivors);
  const int m = static_cast<int>(rep.family.size());
  for (std::size_t t = 0; t < rep.tables.size() && (c.witness || t < 4); ++t) {
    std::vector<std::vector<std::string>> rows;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        int v = rep.tables[t][a * m + b];
        rows.push_back({"table " + std::to_string(t + 1), format_set(rep.family[a], names) + " & " + format_set(rep.family[b], names),
                        v < 0 ? std::string("free") : format_set(rep.family[v], names)});
      }
    r.table(rows);
  }
  r.kv("intersection survives", rep.intersection_survives);
  r.kv("non-intersection survives", rep.non_intersection_survives);
  r.kv("intersection-closed implies only intersection", rep.intersection_closed ? yes_no(rep.closure_claim_holds) : std::string("vacuous"));
  return r.finish(!rep.intersection_closed || rep.closure_claim_holds ? Verdict::Pass : Verdict::Fail);
}

inline void describe_algebra(Report& r, const FiniteAlgebra& A) {
  const int n = A.size();
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head = {"op"};
  for (int b = 0; b < n; ++b) head.push_back(A.name(b));
  rows.push_back(head);
  const std::pair<const char*, const FiniteAlgebra::Table*> ops[] = {
      {"meet", &A.meet_table()}, {"join", &A.join_table()}, {"arrow", &A.arrow_table()}};
  for (auto [key, t] : ops)
    for (int a = 0; a < n; ++a) {
      std::vector<std::string> row = {std::string(key) + " " + A.name(a)};
      for (int b = 0; b < n; ++b) row.push_back(A.name((*t)[a * n + b]));
      rows.push_back(row);
    }
  r.table(rows);
}

inline void describe_violation(Report& r, const FiniteAlgebra& A, const AlgebraViolation& v) {
  r.kv("violated", to_string(v.consequence));
  r.kv("witness", format_valuation(A, v.valuation) + ", c=" + A.name(v.c));
}

inline RunResult algebra(const RunConfig& c) {
  Report r(c.porcelain);
  if (c.action == "dummett" && c.algebra.empty()) {
    if (c.search < 1) throw ValidationError("algebra dummett needs --algebra with --j, or --search N");
    auto found = find_non_heyting_dummett_algebras(c.search);
    r.kv("non-Heyting Dummett algebras", static_cast<int>(found.size()));
    std::vector<std::vector<std::string>> rows = {{"size", "j", "first failure"}};
    for (const auto& d : found) {
      std::string j;
      for (int x : d.nucleus) j += (j.empty() ? "" : " ") + d.heyting.name(x);
      rows.push_back({std::to_string(d.dummett.size()), j, d.verdict.describe(d.dummett)});
    }
    r.table(rows);
    if (!found.empty()) r.kv("smallest size", found.front().dummett.size());
    return r.finish(found.empty() ? Verdict::Fail : Verdict::Pass);
  }
  FiniteAlgebra A = load_algebra(c.algebra);
  if (c.action == "dummett") {
    std::vector<int> j;
    for (const auto& w : detail::words(c.j)) j.push_back(detail::lookup(A.names(), w, 1));
    auto nv = validate_algebra_nucleus(A, j);
    r.kv("nucleus", nv.describe(A));
    if (!nv.ok) return r.finish(Verdict::Fail);
    A = dummett_algebra(A, j);
  }
  auto order = check_algebraic_interpretation(A);
  r.kv("algebraic interpretation", order.describe(A));
  if (!order.ok) return r.finish(Verdict::Fail);
  if (c.action == "check" || c.action == "dummett") {
    describe_algebra(r, A);
    auto h = check_heyting(A);
    auto b = check_boolean(A);
    r.kv("heyting", h.describe(A));
    r.kv("boolean", b.describe(A));
    r.kv("residuated", check_residuation(A));
    if (c.action == "check") return r.finish(h.ok ? Verdict::Pass : Verdict::Fail);
    auto valid = validate_theorems_algebra(A, theorem_corpus(2, 3), c.budget);
    r.kv("theorem validity", std::string(valid.valid ? "PASS" : "FAIL"));
    auto cons = check_algebra_consistency(A, probe_consequences(), c.budget);
    r.kv("consistency", std::string(cons.consistent ? "PASS" : "FAIL"));
    if (!cons.consistent) {
      describe_violation(r, A, *cons.violation);
      if (c.witness)
        for (const auto& v : algebra_consistency_violations(A, cons.violation->consequence, c.budget))
          r.kv("violation", format_valuation(A, v.valuation) + ", c=" + A.name(v.c));
    }
    return r.finish(h.ok ? Verdict::Pass : Verdict::Fail);
  }
  if (c.action == "consistency") {
    const auto cs = consequences_or_probes(c);
    r.kv("consequences", static_cast<int>(cs.size()));
    auto cons = check_algebra_consistency(A, cs, c.budget);
    r.kv("checked", cons.checked);
    r.kv("consistent", cons.consistent);
    if (!cons.consistent) {
      describe_violation(r, A, *cons.violation);
      if (c.witness)
        for (const auto& v : algebra_consistency_violations(A, cons.violation->consequence, c.budget))
          r.kv("violation", format_valuation(A, v.valuation) + ", c=" + A.name(v.c));
    }
    return r.finish(cons.consistent ? Verdict::Pass : Verdict::Fail);
  }
  if (c.action == "force-heyting" || c.action == "force-boolean") {
    auto f = c.action == "force-heyting" ? heyting_forcing_check(A, c.budget) : boolean_forcing_check(A, c.budget);
    std::vector<std::vector<std::string>> rows = {{"equation", "holds", "consequence violated"}};
    for (const auto& row : f.rows) rows.push_back({row.equation, yes_no(row.holds), yes_no(row.enforced)});
    r.table(rows);
    r.kv("equations", f.verdict.describe(A));
    r.kv("consistent with probes and table", f.consistency.consistent);
    if (!f.consistency.consistent && c.witness) describe_violation(r, A, *f.consistency.violation);
    r.kv("failing equations are enforced", f.pipeline_ok);
    return r.finish(f.pipeline_ok ? Verdict::Pass : Verdict::Fail);
  }
  throw ValidationError("unknown algebra action '" + c.action + "' (expected check, consistency, dummett, force-heyting or force-boolean)");
}

inline RunResult accept(const RunConfig& c) {
  if (!is_acceptance_suite(c.text)) throw ValidationError("unknown suite '" + c.text + "'");
  Report r(c.porcelain);
  bool all = true;
  std::string lines;
  for (const auto& res : run_acceptance(c.text)) {
    all = all && res.passed;
    lines += format_criterion(res, c.porcelain) + "\n";
  }
  RunResult out = r.finish(all ? Verdict::Pass : Verdict::Fail);
  out.report = lines + out.report;
  return out;
}

}  // namespace cli

/// Dispatches one command. Reports end with `VERDICT: PASS|FAIL|UNDECIDED`
/// and exit 0/1/2; a search that runs out of budget is UNDECIDED. Input
/// errors produce exit 3 (2 for prove) and a one-line message.
inline RunResult run(const RunConfig& c) {
  const int error_code = c.command == "prove" ? 2 : 3;
  try {
    if (c.command == "prove") return cli::prove(c);
    if (c.command == "frame") return cli::frame(c);
    if (c.command == "nucleus") return cli::nucleus(c);
    if (c.command == "eval") return cli::eval(c);
    if (c.command == "consistency") return cli::consistency(c);
    if (c.command == "categoricity") return cli::categoricity(c);
    if (c.command == "holliday") return cli::holliday(c);
    if (c.command == "search-atom-maps") return cli::search_atom_maps_cmd(c);
    if (c.command == "fmla-fmla-lab") return cli::fmla_fmla_lab(c);
    if (c.command == "algebra") return cli::algebra(c);
    if (c.command == "accept") return cli::accept(c);
    return {error_code, "error: unknown command '" + c.command + "'\n"};
  } catch (const BudgetExceeded& e) {
    cli::Report r(c.porcelain);
    r.kv("budget exceeded", std::string(e.what()));
    RunResult out = r.finish(Verdict::Undecided);
    if (c.command == "prove") out.exit_code = 2;
    return out;
  } catch (const std::exception& e) {
    return {error_code, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace carnap
