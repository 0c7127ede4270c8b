#include <gtest/gtest.h>

#include <functional>

#include "carnapkit/io.hpp"

using namespace carnap;

namespace {

std::string data(const std::string& name) { return std::string(CARNAPKIT_DATA_DIR) + "/" + name; }

std::size_t parse_error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.position();
  }
  return 0;
}

}  // namespace

TEST(Source, InlineAndFiles) {
  EXPECT_EQ(read_source("inline:elements: a;order:"), "elements: a\norder:");
  EXPECT_NE(read_source(data("chain2.poset")).find("elements"), std::string::npos);
  EXPECT_THROW(read_source(data("missing.poset")), IoError);
}

TEST(Set, Parsing) {
  const std::vector<std::string> names = {"a", "b", "c"};
  EXPECT_EQ(parse_set("{}", names), PointSet{});
  EXPECT_EQ(parse_set("{ }", names), PointSet{});
  EXPECT_EQ(parse_set("{a, c}", names), PointSet{}.with(0).with(2));
  EXPECT_THROW(parse_set("a,b", names), ParseError);
  EXPECT_THROW(parse_set("{a,,b}", names), ParseError);
  EXPECT_THROW(parse_set("{d}", names), ParseError);
}

TEST(Poset, DataFiles) {
  auto c = parse_poset(read_source(data("chain2.poset")));
  EXPECT_TRUE(c == Poset::chain(2));
  auto v = parse_poset(read_source(data("vposet.poset")));
  EXPECT_TRUE(v == Poset::vee());
  EXPECT_EQ(v.names(), (std::vector<std::string>{"r", "a", "b"}));
  auto d = parse_poset(read_source(data("diamond.poset")));
  EXPECT_EQ(d.size(), 4);
  EXPECT_TRUE(d.leq(0, 3));
  EXPECT_FALSE(d.leq(1, 2));
}

TEST(Poset, RoundTrip) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& P : enumerate_posets(n, true)) {
      auto Q = parse_poset(format_poset(P));
      EXPECT_TRUE(Q == P);
      EXPECT_EQ(Q.names(), P.names());
    }
}

TEST(Poset, Errors) {
  EXPECT_EQ(parse_error_line([] { parse_poset("order: a<=b"); }), 1u);
  EXPECT_EQ(parse_error_line([] { parse_poset("elements: a b\n\norder: a<=c"); }), 3u);
  EXPECT_EQ(parse_error_line([] { parse_poset("elements: a a"); }), 1u);
  EXPECT_EQ(parse_error_line([] { parse_poset("# c\nelements: a b\nfoo: 1"); }), 3u);
  EXPECT_EQ(parse_error_line([] { parse_poset("elements: a b\norder: a b"); }), 2u);
  EXPECT_EQ(parse_error_line([] { parse_poset("elements: a\nnot a key"); }), 2u);
  EXPECT_THROW(parse_poset("elements: a b\norder: a<=b b<=a"), ValidationError);
}

TEST(Nucleus, DataFiles) {
  const Poset P = parse_poset(read_source(data("chain2.poset")));
  UpSetLattice L(P);
  auto dd = parse_nucleus_table(read_source(data("chain2_dd.nucleus")), L);
  EXPECT_TRUE(validate_nucleus(L, dd).ok);
  auto D = double_negation_nucleus(P);
  for (int i = 0; i < L.size(); ++i) EXPECT_EQ(dd[i], D(L[i]));
  auto bad = parse_nucleus_table(read_source(data("chain2_bad.nucleus")), L);
  auto v = validate_nucleus(L, bad);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.axiom, "inflationarity");
}

TEST(Nucleus, RoundTrip) {
  for (const char* name : {"kripke", "beth", "dd", "top"}) {
    auto NF = nucleus_by_name(Poset::vee(), name);
    EXPECT_EQ(parse_nucleus_table(format_nucleus(NF), NF.lattice()), [&] {
      std::vector<PointSet> t;
      for (auto u : NF.lattice().sets()) t.push_back(NF(u));
      return t;
    }());
  }
}

TEST(Nucleus, Errors) {
  UpSetLattice L(Poset::chain(2));
  EXPECT_EQ(parse_error_line([&] { parse_nucleus_table("map: {} -> {}\nmap: {0} -> {0}", L); }), 2u);
  EXPECT_EQ(parse_error_line([&] { parse_nucleus_table("map: {} -> {}\nmap: {} -> {}", L); }), 2u);
  EXPECT_EQ(parse_error_line([&] { parse_nucleus_table("map: {} {}", L); }), 1u);
  EXPECT_THROW(parse_nucleus_table("map: {} -> {}", L), ParseError);
}

TEST(Topology, DataAndRoundTrip) {
  auto S = parse_topology(read_source(data("sierpinski.top")));
  EXPECT_EQ(S.opens(), FiniteTopology::sierpinski().opens());
  for (const auto& T : enumerate_topologies(3)) EXPECT_EQ(parse_topology(format_topology(T)).opens(), T.opens());
  EXPECT_THROW(parse_topology("points: 0 1\nopen: {0}"), ValidationError);
  EXPECT_EQ(parse_error_line([] { parse_topology("points: 0\nopen: {1}"); }), 2u);
}

TEST(Algebra, RoundTrip) {
  for (const auto& A : {heyting_chain(3), powerset_algebra(2)}) {
    auto B = parse_algebra(format_algebra(A));
    EXPECT_TRUE(B == A);
    EXPECT_EQ(B.names(), A.names());
  }
}

TEST(Algebra, Errors) {
  auto text = format_algebra(heyting_chain(2));
  EXPECT_THROW(parse_algebra(text.substr(0, text.rfind("arrow"))), ParseError);
  EXPECT_EQ(parse_error_line([&] { parse_algebra(text + "meet: 0 0 -> 0\n"); }), 16u);
  EXPECT_EQ(parse_error_line([] { parse_algebra("carrier: 0 1\nzero: 2"); }), 2u);
  EXPECT_EQ(parse_error_line([] { parse_algebra("carrier: 0 1\nmeet: 0 1 0"); }), 2u);
  EXPECT_THROW(parse_algebra("carrier: 0 1\nmeet: 0 0 -> 0"), ParseError);
}
