// tests/test_fst_core.cpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <string>

#include "fstphi/enumerate.hpp"
#include "fstphi/fst.hpp"
#include "fstphi/text_io.hpp"
#include "test_util.hpp"

using namespace fstphi;
using fstphi::testing::Rng;

namespace {

SymbolTable abc_syms() {
  SymbolTable syms;
  syms.add_symbol(kPhiSymbol);
  syms.add_symbol("a");
  syms.add_symbol("b");
  syms.add_symbol("c");
  return syms;
}

}  // namespace

TEST_CASE("builders") {
  SymbolTable syms = abc_syms();
  Label a = *syms.find("a");
  Fst<TropicalWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{a, a, TropicalWeight::one(), 1});
  f.set_final(1, TropicalWeight::one());
  CHECK(f.num_states() == 2);
  CHECK(f.num_arcs() == 1);
  CHECK(f.start() == 0);
  CHECK(f.is_final(1));
  CHECK_FALSE(f.is_final(0));
  CHECK(f.final_weight(0) == TropicalWeight::zero());

  SUBCASE("setting a zero final weight removes finality") {
    f.set_final(1, TropicalWeight::zero());
    CHECK_FALSE(f.is_final(1));
  }
  SUBCASE("arcs to nonexistent states are rejected") {
    CHECK_THROWS_AS(
        f.add_arc(0, Arc<TropicalWeight>{a, a, TropicalWeight::one(), 7}),
        FstError);
    CHECK_THROWS_AS(
        f.add_arc(9, Arc<TropicalWeight>{a, a, TropicalWeight::one(), 1}),
        FstError);
  }
  SUBCASE("zero-weight arcs are rejected") {
    CHECK_THROWS_AS(
        f.add_arc(0, Arc<TropicalWeight>{a, a, TropicalWeight::zero(), 1}),
        FstError);
  }
  SUBCASE("invalid start is rejected") {
    CHECK_THROWS_AS(f.set_start(5), FstError);
  }
}

TEST_CASE("linear_acceptor") {
  SymbolTable syms = abc_syms();
  SUBCASE("aaab gives a 5-state chain") {
    auto f = linear_acceptor("aaab", syms);
    CHECK(f.num_states() == 5);
    CHECK(f.num_arcs() == 4);
    CHECK(f.is_final(4));
    CHECK(f.arcs(0).front().ilabel == *syms.find("a"));
    CHECK(f.arcs(3).front().ilabel == *syms.find("b"));
  }
  SUBCASE("empty string accepts only epsilon") {
    auto f = linear_acceptor("", syms);
    CHECK(f.num_states() == 1);
    CHECK(f.is_final(0));
    CHECK(f.num_arcs() == 0);
  }
  SUBCASE("unknown symbol is an error") {
    CHECK_THROWS_AS(linear_acceptor("az", syms), FstError);
  }
}

TEST_CASE("text round trip on the smallest acceptor") {
  SymbolTable syms = abc_syms();
  auto f = read_text("0\t1\ta\ta\n1\n", syms);
  CHECK(f.num_states() == 2);
  CHECK(f.start() == 0);
  CHECK(f.is_final(1));
  REQUIRE(f.arcs(0).size() == 1);
  CHECK(f.arcs(0).front().ilabel == *syms.find("a"));
  CHECK(f.arcs(0).front().weight == TropicalWeight::one());

  // write then read is the identity
  SymbolTable syms2 = abc_syms();
  auto g = read_text(write_text(f, syms), syms2);
  CHECK(f == g);
}

TEST_CASE("text format errors") {
  SymbolTable syms = abc_syms();
  CHECK_THROWS_AS(read_text("0 1 a\n", syms), FstError);     // 3 fields
  CHECK_THROWS_AS(read_text("x 1 a a\n", syms), FstError);   // bad state
  CHECK_THROWS_AS(read_text("0 1 a a oops\n", syms), FstError);
  CHECK_THROWS_AS(read_text("-1\n", syms), FstError);
}

TEST_CASE("text round trip is the identity on random machines") {
  Rng rng(11);
  SymbolTable syms = abc_syms();
  std::vector<Label> alpha = {*syms.find("a"), *syms.find("b"),
                              *syms.find("c")};
  for (int i = 0; i < 50; ++i) {
    auto f = fstphi::testing::random_transducer(rng, 20, alpha, alpha);
    // A fresh table with the same layout assigns the same ids back.
    SymbolTable again = abc_syms();
    auto g = read_text(write_text(f, syms), again);
    CHECK(f == g);
  }
}

TEST_CASE("gallic weights survive the text format") {
  SymbolTable syms = abc_syms();
  Label a = *syms.find("a"), b = *syms.find("b");
  Fst<GallicWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<GallicWeight>{a, a,
                                 GallicWeight(StringWeight{b, a},
                                              TropicalWeight(2.0)),
                                 1});
  f.set_final(1, GallicWeight(StringWeight{b}, TropicalWeight::one()));
  SymbolTable syms2 = abc_syms();
  auto g = read_text<GallicWeight>(write_text(f, syms), syms2);
  CHECK(f == g);
}

TEST_CASE("to_dot") {
  SymbolTable syms = abc_syms();
  SUBCASE("two nodes, one edge") {
    auto f = linear_acceptor("a", syms);
    auto dot = to_dot(f, syms);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("0 -> 1 [label = \"a\"]") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    std::size_t nodes = 0, pos = 0;
    while ((pos = dot.find("shape = ", pos)) != std::string::npos) {
      ++nodes;
      ++pos;
    }
    CHECK(nodes == 2);
  }
  SUBCASE("gallic edges show bracketed string weights") {
    Label a = *syms.find("a"), b = *syms.find("b");
    Fst<GallicWeight> f;
    f.add_states(2);
    f.set_start(0);
    f.add_arc(0, Arc<GallicWeight>{a, b,
                                   GallicWeight(StringWeight{b},
                                                TropicalWeight::one()),
                                   1});
    f.set_final(1, GallicWeight::one());
    auto dot = to_dot(f, syms);
    CHECK(dot.find("a:b/[b]") != std::string::npos);
  }
  SUBCASE("empty machine renders an empty digraph") {
    Fst<TropicalWeight> f;
    auto dot = to_dot(f, syms);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("->") == std::string::npos);
  }
}

TEST_CASE("weight parsing round trips") {
  CHECK(parse_weight<TropicalWeight>("3") == TropicalWeight(3.0));
  CHECK(parse_weight<TropicalWeight>("0.5") == TropicalWeight(0.5));
  CHECK(parse_weight<StringWeight>("<inf>").is_infinite());
  CHECK(parse_weight<StringWeight>("<e>") == StringWeight::one());
  CHECK(parse_weight<StringWeight>("5_3") == StringWeight{5, 3});
  CHECK(parse_weight<GallicWeight>("5_3,2") ==
        GallicWeight(StringWeight{5, 3}, TropicalWeight(2.0)));
  CHECK(parse_weight<GallicWeight>("<e>,0") == GallicWeight::one());
  CHECK_THROWS_AS(parse_weight<TropicalWeight>("abc"), FstError);
  CHECK_THROWS_AS(parse_weight<StringWeight>("5_x"), FstError);
}
