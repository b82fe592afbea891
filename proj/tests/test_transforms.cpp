// tests/test_transforms.cpp

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

#include <set>
#include <vector>

#include "fstphi/enumerate.hpp"
#include "fstphi/fst.hpp"
#include "fstphi/transforms.hpp"
#include "test_util.hpp"

using namespace fstphi;
using fstphi::testing::Rng;

namespace {

constexpr Label kA = 1, kB = 2;

// Residual language of a state: suffixes accepted from it, up to max_len.
std::set<std::vector<Label>> residual(const Fst<TropicalWeight>& f, StateId q,
                                      int max_len) {
  Fst<TropicalWeight> g;
  g.add_states(f.num_states());
  g.set_start(q);
  for (StateId s = 0; s < f.num_states(); ++s) {
    if (f.is_final(s)) g.set_final(s, f.final_weight(s));
    for (const auto& arc : f.arcs(s)) g.add_arc(s, arc);
  }
  return language_up_to(g, max_len);
}

}  // namespace

TEST_CASE("to_gallic moves output labels into string weights") {
  Fst<TropicalWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kA, kB, TropicalWeight(1.0), 1});
  f.add_arc(0, Arc<TropicalWeight>{kA, kEpsilon, TropicalWeight(1.0), 1});
  f.set_final(1, TropicalWeight(2.0));
  auto g = to_gallic(f);
  REQUIRE(g.arcs(0).size() == 2);
  CHECK(g.arcs(0)[0] ==
        Arc<GallicWeight>{kA, kA,
                          GallicWeight(StringWeight{kB}, TropicalWeight(1.0)),
                          1});
  CHECK(g.arcs(0)[1] ==
        Arc<GallicWeight>{kA, kA,
                          GallicWeight(StringWeight(), TropicalWeight(1.0)),
                          1});
  CHECK(g.final_weight(1) ==
        GallicWeight(StringWeight(), TropicalWeight(2.0)));
}

TEST_CASE("to_gallic of an acceptor labels every weight with its own arc") {
  Rng rng(31);
  auto f = fstphi::testing::random_acceptor(rng, 6, {kA, kB});
  auto g = to_gallic(f);
  for (StateId s = 0; s < g.num_states(); ++s)
    for (const auto& arc : g.arcs(s)) {
      REQUIRE(arc.weight.string_part().size() == 1);
      CHECK(arc.weight.string_part().labels()[0] == arc.ilabel);
    }
}

TEST_CASE("from_gallic inverts to_gallic on short strings") {
  Fst<TropicalWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kA, kB, TropicalWeight(1.0), 1});
  f.set_final(1, TropicalWeight::one());
  CHECK(from_gallic(to_gallic(f)) == f);
}

TEST_CASE("from_gallic rejects unfactored weights") {
  Fst<GallicWeight> f;
  f.add_state();
  f.set_start(0);
  f.set_final(0, GallicWeight(StringWeight{kA, kB}, TropicalWeight::one()));
  CHECK_THROWS_AS(from_gallic(f), FstError);
}

TEST_CASE("from_gallic turns one-symbol final weights into a fresh final") {
  Fst<GallicWeight> f;
  f.add_state();
  f.set_start(0);
  f.set_final(0, GallicWeight(StringWeight{kB}, TropicalWeight(3.0)));
  auto g = from_gallic(f);
  REQUIRE(g.num_states() == 2);
  CHECK_FALSE(g.is_final(0));
  REQUIRE(g.arcs(0).size() == 1);
  CHECK(g.arcs(0).front().ilabel == kEpsilon);
  CHECK(g.arcs(0).front().olabel == kB);
  CHECK(g.final_weight(1) == TropicalWeight(3.0));
}

TEST_CASE("factor_weights splits multi-symbol strings into chains") {
  Fst<GallicWeight> f;
  f.add_states(2);
  f.set_start(0);
  // string weight "ab a" (two symbols) factors into two arcs.
  f.add_arc(0, Arc<GallicWeight>{kA, kA,
                                 GallicWeight(StringWeight{kB, kA},
                                              TropicalWeight(2.0)),
                                 1});
  f.set_final(1, GallicWeight::one());
  auto g = factor_weights(f);
  CHECK(g.num_states() == 3);
  REQUIRE(g.arcs(0).size() == 1);
  const auto& first = g.arcs(0).front();
  CHECK(first.ilabel == kA);
  CHECK(first.weight == GallicWeight(StringWeight{kB}, TropicalWeight(2.0)));
  const auto& second = g.arcs(first.nextstate).front();
  CHECK(second.ilabel == kEpsilon);
  CHECK(second.weight == GallicWeight(StringWeight{kA}, TropicalWeight::one()));
  CHECK(second.nextstate == 1);

  // every string part is now at most one symbol
  for (StateId s = 0; s < g.num_states(); ++s) {
    if (g.is_final(s)) CHECK(g.final_weight(s).string_part().size() <= 1);
    for (const auto& arc : g.arcs(s))
      CHECK(arc.weight.string_part().size() <= 1);
  }
}

TEST_CASE("factor_weights splits multi-symbol final weights") {
  Fst<GallicWeight> f;
  f.add_state();
  f.set_start(0);
  f.set_final(0, GallicWeight(StringWeight{kA, kB, kA}, TropicalWeight(1.0)));
  auto g = factor_weights(f);
  CHECK_FALSE(g.is_final(0));
  // three epsilon arcs carrying one symbol each, then a final state
  StateId s = 0;
  std::vector<Label> emitted;
  while (!g.is_final(s)) {
    REQUIRE(g.arcs(s).size() == 1);
    const auto& arc = g.arcs(s).front();
    CHECK(arc.ilabel == kEpsilon);
    REQUIRE(arc.weight.string_part().size() == 1);
    emitted.push_back(arc.weight.string_part().labels()[0]);
    s = arc.nextstate;
  }
  CHECK(emitted == std::vector<Label>{kA, kB, kA});
  CHECK(g.final_weight(s) == GallicWeight::one());
}

TEST_CASE("factor_weights is the identity on short-string machines") {
  Fst<GallicWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<GallicWeight>{kA, kA,
                                 GallicWeight(StringWeight{kB},
                                              TropicalWeight::one()),
                                 1});
  f.set_final(1, GallicWeight(StringWeight{kA}, TropicalWeight::one()));
  CHECK(factor_weights(f) == f);
}

TEST_CASE("gallic round trip preserves the weighted relation (randomized)") {
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    auto f = fstphi::testing::random_transducer(rng, 6, {kA, kB}, {kA, kB});
    auto g = from_gallic(factor_weights(to_gallic(f)));
    CHECK(enumerate_relation(f, 5) == enumerate_relation(g, 5));
  }
}

TEST_CASE("project") {
  Fst<TropicalWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kA, kB, TropicalWeight(1.0), 1});
  f.set_final(1, TropicalWeight::one());
  auto out = project(f, ProjectSide::output);
  CHECK(out.arcs(0).front().ilabel == kB);
  CHECK(out.arcs(0).front().olabel == kB);
  auto in = project(f, ProjectSide::input);
  CHECK(in.arcs(0).front().olabel == kA);

  SUBCASE("acceptors are unchanged by projection") {
    Rng rng(33);
    auto acc = fstphi::testing::random_acceptor(rng, 6, {kA, kB});
    CHECK(project(acc, ProjectSide::input) == acc);
    CHECK(project(acc, ProjectSide::output) == acc);
  }
}

TEST_CASE("rm_epsilon removes a chain epsilon") {
  Fst<TropicalWeight> f;
  f.add_states(4);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight::one(), 1});
  f.add_arc(1, Arc<TropicalWeight>{kEpsilon, kEpsilon, TropicalWeight::one(),
                                   2});
  f.add_arc(2, Arc<TropicalWeight>{kB, kB, TropicalWeight::one(), 3});
  f.set_final(3, TropicalWeight::one());
  auto g = rm_epsilon(f);
  CHECK_FALSE(has_epsilon_arcs(g));
  CHECK(language_up_to(g, 4) == std::set<std::vector<Label>>{{kA, kB}});
}

TEST_CASE("rm_epsilon is the identity on epsilon-free machines") {
  Rng rng(34);
  for (int i = 0; i < 20; ++i) {
    auto f = fstphi::testing::random_acceptor(rng, 6, {kA, kB});
    CHECK(enumerate_language(rm_epsilon(f), 5) == enumerate_language(f, 5));
  }
}

TEST_CASE("rm_epsilon preserves the weighted language (randomized)") {
  Rng rng(35);
  for (int i = 0; i < 80; ++i) {
    auto f = fstphi::testing::random_eps_acceptor(rng, 7, {kA, kB});
    auto g = rm_epsilon(f);
    CHECK_FALSE(has_epsilon_arcs(g));
    CHECK(enumerate_language(g, 5) == enumerate_language(f, 5));
  }
}

TEST_CASE("rm_epsilon rejects weighted epsilon cycles") {
  Fst<TropicalWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kEpsilon, kEpsilon, TropicalWeight(1.0),
                                   1});
  f.add_arc(1, Arc<TropicalWeight>{kEpsilon, kEpsilon, TropicalWeight::one(),
                                   0});
  f.set_final(1, TropicalWeight::one());
  CHECK_THROWS_AS(rm_epsilon(f), FstError);
}

TEST_CASE("rm_epsilon rejects transducers") {
  Fst<TropicalWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kA, kB, TropicalWeight::one(), 1});
  f.set_final(1, TropicalWeight::one());
  CHECK_THROWS_AS(rm_epsilon(f), FstError);
}

TEST_CASE("determinize merges a two-path acceptor") {
  Fst<TropicalWeight> f;
  f.add_states(5);
  f.set_start(0);
  // two nondeterministic paths both accepting "ab"
  f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight::one(), 1});
  f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight::one(), 2});
  f.add_arc(1, Arc<TropicalWeight>{kB, kB, TropicalWeight::one(), 3});
  f.add_arc(2, Arc<TropicalWeight>{kB, kB, TropicalWeight::one(), 4});
  f.set_final(3, TropicalWeight::one());
  f.set_final(4, TropicalWeight::one());
  auto g = determinize(f);
  CHECK(is_deterministic(g));
  CHECK(g.num_states() == 3);
  CHECK(language_up_to(g, 3) == std::set<std::vector<Label>>{{kA, kB}});
}

TEST_CASE("determinize preserves the language of random NFAs") {
  Rng rng(36);
  for (int i = 0; i < 80; ++i) {
    auto f = fstphi::testing::random_acceptor(rng, 6, {kA, kB});
    auto g = determinize(f);
    CHECK(is_deterministic(g));
    CHECK(g.num_states() <= (1 << f.num_states()));
    CHECK(language_up_to(g, 6) == language_up_to(f, 6));
  }
}

TEST_CASE("determinize rejects weighted input") {
  Fst<TropicalWeight> f;
  f.add_states(2);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight(2.0), 1});
  f.set_final(1, TropicalWeight::one());
  CHECK_THROWS_AS(determinize(f), FstError);
}

TEST_CASE("minimize merges equivalent states") {
  // a DFA for {a, b} with two redundant final states
  Fst<TropicalWeight> f;
  f.add_states(3);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight::one(), 1});
  f.add_arc(0, Arc<TropicalWeight>{kB, kB, TropicalWeight::one(), 2});
  f.set_final(1, TropicalWeight::one());
  f.set_final(2, TropicalWeight::one());
  auto g = minimize(f);
  CHECK(g.num_states() == 2);
  CHECK(language_up_to(g, 3) ==
        std::set<std::vector<Label>>{{kA}, {kB}});
}

TEST_CASE("minimize leaves minimal machines at the same size") {
  auto f = linear_acceptor<TropicalWeight>({kA, kB, kA});
  auto g = minimize(f);
  CHECK(g.num_states() == f.num_states());
  CHECK(language_up_to(g, 4) == language_up_to(f, 4));
}

TEST_CASE("minimize output has pairwise distinct residuals (randomized)") {
  Rng rng(37);
  for (int i = 0; i < 40; ++i) {
    auto f = determinize(fstphi::testing::random_acceptor(rng, 5, {kA, kB}));
    auto g = minimize(f);
    CHECK(language_up_to(g, 6) == language_up_to(f, 6));
    CHECK(is_deterministic(g));
    CHECK(is_trim(g));
    for (StateId s = 0; s < g.num_states(); ++s)
      for (StateId t = s + 1; t < g.num_states(); ++t)
        CHECK(residual(g, s, g.num_states() + 2) !=
              residual(g, t, g.num_states() + 2));
  }
}

TEST_CASE("minimize rejects nondeterministic input") {
  Fst<TropicalWeight> f;
  f.add_states(3);
  f.set_start(0);
  f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight::one(), 1});
  f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight::one(), 2});
  f.set_final(1, TropicalWeight::one());
  CHECK_THROWS_AS(minimize(f), FstError);
}

TEST_CASE("connect") {
  SUBCASE("drops dangling states") {
    Fst<TropicalWeight> f;
    f.add_states(3);
    f.set_start(0);
    f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight::one(), 1});
    f.set_final(1, TropicalWeight::one());
    // state 2 is unreachable
    auto g = connect(f);
    CHECK(g.num_states() == 2);
    CHECK(is_trim(g));
  }
  SUBCASE("keeps trim machines unchanged") {
    auto f = linear_acceptor<TropicalWeight>({kA, kB});
    CHECK(connect(f) == f);
  }
  SUBCASE("an empty-language machine comes back empty") {
    Fst<TropicalWeight> f;
    f.add_states(2);
    f.set_start(0);
    f.add_arc(0, Arc<TropicalWeight>{kA, kA, TropicalWeight::one(), 1});
    // no finals at all
    auto g = connect(f);
    CHECK(g.num_states() == 0);
    CHECK_FALSE(g.start().has_value());
  }
}
