// Copyright 2026 The logrw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>
#include <string>

#include "logrw/logrw.hpp"
#include "oracles.hpp"

using namespace logrw;

namespace {

LoggedSystem completed(const char* file) {
  auto r = logged_knuth_bendix(
      LoggedSystem::from_presentation(oracle::load(file)), {});
  REQUIRE(r.complete());
  return r.system;
}

struct Order8 {
  LoggedSystem sys = completed("order8.pres");
  RuleView rules = sys.rules();
  const Alphabet& a = sys.alphabet();

  Word w(const char* text) const { return parse_word(text, a); }
  TwoCell cell(const std::string& text) const {
    return parse_cell(text, a, rules);
  }
  std::string str(const TwoCell& c) const { return format_cell(c, a, rules); }
};

std::map<std::string, int> group_sizes(const GeneratorSet& gens,
                                       const Alphabet& a) {
  std::map<std::string, int> out;
  for (const auto& g : gens.generators) {
    ++out[to_string(g.base_element, a)];
  }
  return out;
}

}  // namespace

TEST_CASE("delta of an overlap is the closed critical pair", "[endo]") {
  Order8 f;
  auto os = find_overlaps(1, 2, f.rules);
  TwoCell d = delta(critical_pair(os.front()), f.sys);
  CHECK(f.str(d) == "(r2) e . s (r3^-1)");
  CHECK(is_endorewrite(d, f.rules));
  CHECK(base_element(d, f.sys) == f.w("s e"));
  CHECK(base_element(identity({}), f.sys).empty());
}

TEST_CASE("delta of a repeated pair is trivial", "[endo]") {
  Order8 f;
  TwoCell one = f.cell("(r2)e");
  CHECK(delta(CriticalPair{one, one, std::nullopt}, f.sys).is_identity());
}

TEST_CASE("delta refuses pairs of an incomplete system", "[endo]") {
  LoggedSystem ab = LoggedSystem::from_presentation(oracle::load("ab.pres"));
  auto cp = critical_pair(find_overlaps(0, 1, ab.rules()).front());
  CHECK_THROWS_AS(delta(cp, ab), Error);
}

TEST_CASE("disjoint double redexes give trivial loops", "[endo]") {
  Order8 f;
  std::size_t count = 0;
  for (const Word& w : oracle::all_words(2, 8)) {
    auto rs = find_redexes(w, f.sys);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (std::size_t j = i + 1; j < rs.size(); ++j) {
        CriticalPair cp = critical_pair_at(w, rs[i], rs[j], f.rules);
        if (cp.origin) {
          continue;
        }
        TwoCell d = delta(cp, f.sys);
        REQUIRE(is_endorewrite(d, f.rules));
        CHECK(interchange_normalize(d, f.rules).is_identity());
        ++count;
      }
    }
  }
  CHECK(count > 1000);
}

TEST_CASE("delta commutes with whiskering", "[endo]") {
  Order8 f;
  std::mt19937 rng(17);
  for (const Overlap& o : all_overlaps(f.sys)) {
    TwoCell base = delta(critical_pair(o), f.sys);
    for (int k = 0; k < 3; ++k) {
      Word x = oracle::random_word(rng, 2, 3);
      Word z = oracle::random_word(rng, 2, 3);
      Word w = concat(x, o.superposition, z);
      CriticalPair cp = critical_pair_at(
          w, {x.size() + o.left_offset(), o.left_rule},
          {x.size() + o.right_offset(), o.right_rule}, f.rules);
      TwoCell big = whisker(x, base, z);
      // The whiskered pair loop uses the overlap loop with the same whiskers.
      LoopFiller filler(f.sys);
      auto raw = filler.pair_loop(cp.left.steps[0], cp.right.steps[0]);
      bool found = false;
      for (const RawFactor& r : raw) {
        found = found || (r.key && *r.key == key_of(o) && r.x == x && r.z == z);
      }
      CHECK(found);
      CHECK(is_endorewrite(big, f.rules));
    }
  }
}

TEST_CASE("conjugacy_reduce strips conjugating paths", "[endo]") {
  Order8 f;
  CHECK(conjugacy_reduce(identity(f.w("s e")), f.rules) ==
        identity(f.w("s e")));
  // Identities are conjugate along any path, so they move to the
  // irreducible word.
  CHECK(conjugacy_reduce(identity(f.w("s s s e")), f.rules) ==
        identity(f.w("s e")));
  TwoCell g = f.cell("(r2)e . s(r3^-1)");
  CHECK(conjugacy_reduce(g, f.rules) == g);

  std::mt19937 rng(23);
  for (int i = 0; i < 200; ++i) {
    Word w = oracle::random_word(rng, 2, 7);
    TwoCell loop = oracle::random_loop(w, f.sys, rng, 5, 9);
    TwoCell beta = oracle::random_path(w, f.sys, rng, 4, 9);
    TwoCell conj = compose(compose(invert(beta, f.rules), loop, f.rules), beta,
                           f.rules);
    TwoCell a = conjugacy_reduce(loop, f.rules);
    TwoCell b = conjugacy_reduce(conj, f.rules);
    CHECK(a == b);
    CHECK(is_endorewrite(a, f.rules));
    auto tracked = conjugacy_reduce_tracked(conj, f.rules);
    // conj = path . core . path^-1 modulo interchange.
    TwoCell back = compose(compose(tracked.path, tracked.core, f.rules),
                           invert(tracked.path, f.rules), f.rules);
    TwoCell diff = compose(invert(back, f.rules), conj, f.rules);
    CHECK(conjugacy_reduce(diff, f.rules).is_identity());
  }
}

TEST_CASE("digraph filling of the two rewrites of s s s e", "[endo]") {
  Order8 f;
  TwoCell a = f.cell("(r2)e");
  TwoCell b = f.cell("s(r3)");
  FillResult r = digraph_fill(a, b, f.sys);
  REQUIRE(r.diamonds.size() == 1);
  CHECK(f.str(r.diamonds[0]) == "(r2) e . s (r3^-1)");
  CHECK(r.digraph.base == f.w("s s s e"));
  CHECK(r.digraph.vertices.size() == 2);
  CHECK(r.digraph.edges.size() == 2);

  FillResult same = digraph_fill(a, a, f.sys);
  CHECK(same.diamonds.empty());

  CHECK_THROWS_AS(digraph_fill(a, f.cell("(r2)s"), f.sys), Error);
}

TEST_CASE("digraph filling terminates on random reduction pairs", "[endo]") {
  Order8 f;
  std::mt19937 rng(29);
  for (int i = 0; i < 500; ++i) {
    Word w = oracle::random_word(rng, 2, 10);
    TwoCell a = oracle::random_reduction(w, f.sys, rng);
    TwoCell b = oracle::random_reduction(w, f.sys, rng);
    FillResult r = digraph_fill(a, b, f.sys);
    FillResult again = digraph_fill(a, b, f.sys);
    CHECK(r.diamonds == again.diamonds);
    for (const DigraphEdge& e : r.digraph.edges) {
      CHECK(step_source(e.step, f.rules) == e.from);
      CHECK(step_target(e.step, f.rules) == e.to);
    }
    for (const TwoCell& d : r.diamonds) {
      CHECK(is_endorewrite(d, f.rules));
    }
    CHECK(r.digraph.base == w);
  }
}

TEST_CASE("generators of the order 8 monoid", "[endo]") {
  Order8 f;
  GeneratorSet gens = generate(f.sys);
  REQUIRE(gens.generators.size() == 28);
  CHECK(group_sizes(gens, f.a) ==
        std::map<std::string, int>{{"e", 7},
                                   {"s", 1},
                                   {"s s", 1},
                                   {"e s", 1},
                                   {"s e", 1},
                                   {"e s e", 17}});
  CHECK(gens.origins.size() == 28);
  for (std::size_t k = 0; k < gens.generators.size(); ++k) {
    const Generator& g = gens.generators[k];
    CHECK(g.id == "g" + std::to_string(k + 1));
    CHECK(is_endorewrite(g.cell, f.rules));
    CHECK_FALSE(interchange_normalize(g.cell, f.rules).is_identity());
    CHECK(g.base_element == normal_form(g.base_word(), f.sys));
    CHECK(g.cell.source == g.origin.superposition);
  }
  for (std::size_t k = 1; k < gens.generators.size(); ++k) {
    CHECK(compare(f.sys.order(), gens.generators[k - 1].base_element,
                  gens.generators[k].base_element) !=
          std::strong_ordering::greater);
  }
  // Every origin's loop replays from its expression.
  for (const auto& [key, entry] : gens.origins) {
    ExpressCheck c =
        check_decomposition(entry.delta, entry.expression, gens, f.sys);
    CHECK(c.ok());
  }
}

TEST_CASE("the listed endorewrites verify and express", "[endo]") {
  Order8 f;
  GeneratorSet gens = generate(f.sys);
  auto lines = oracle::lines("order8_endorewrites.txt");
  REQUIRE(lines.size() == 26);
  std::map<std::string, int> sizes;
  RuleView initial(f.rules.data(), f.sys.initial_count());
  for (const auto& line : lines) {
    TwoCell e = f.cell(line);
    INFO(line);
    REQUIRE(validate(e, initial).ok());
    REQUIRE(is_endorewrite(e, f.rules));
    ++sizes[to_string(base_element(e, f.sys), f.a)];
    Decomposition d = express(e, gens, f.sys);
    ExpressCheck c = check_decomposition(e, d, gens, f.sys);
    CHECK(c.ok());
    CHECK(c.abelian);
    CHECK(c.residual.is_identity());
    // The first step and the reversed last step leave the base word by an
    // overlap that generate recorded.
    const Step& first = e.steps.front();
    const Step& last = e.steps.back();
    REQUIRE(first.exp == 1);
    REQUIRE(last.exp == -1);
    auto o = overlap_between(e.source, {first.prefix.size(), first.rule},
                             {last.prefix.size(), last.rule}, f.rules);
    REQUIRE(o);
    CHECK(gens.origins.count(key_of(*o)) == 1);
  }
  CHECK(sizes == std::map<std::string, int>{{"e", 7},
                                            {"s", 1},
                                            {"s s", 1},
                                            {"e s", 1},
                                            {"s e", 1},
                                            {"e s e", 15}});
}

TEST_CASE("the relation between three loops holds modulo interchange",
          "[endo]") {
  Order8 f;
  TwoCell lhs = f.cell("(r2)se . s(r2^-1)e . s(r2)e . ss(r3^-1)");
  TwoCell rhs = f.cell("(r2)se . ss(r3^-1)");
  REQUIRE(is_endorewrite(lhs, f.rules));
  CHECK(cells_equal_mod_I(lhs, rhs, f.rules) == CellEquality::Equal);
  // The first part alone is the whiskered loop (r2)s . s(r2^-1).
  CHECK(compose(whisker({}, f.cell("(r2)s . s(r2^-1)"), f.w("e")),
                whisker(f.w("s"), f.cell("(r2)e . s(r3^-1)"), {}), f.rules) ==
        lhs);
}

TEST_CASE("minimization expresses the third loop by the first two", "[endo]") {
  Order8 f;
  GeneratorSet full = generate(f.sys);
  GeneratorSet small = generate(f.sys, {true});
  CHECK(small.generators.size() + small.removed == full.generators.size());
  CHECK(small.generators.size() < full.generators.size());
  for (const auto& [key, entry] : small.origins) {
    ExpressCheck c =
        check_decomposition(entry.delta, entry.expression, small, f.sys);
    CHECK(c.ok());
  }
  TwoCell e = f.cell("(r2)se . s(r2^-1)e . s(r2)e . ss(r3^-1)");
  Decomposition d = express(e, small, f.sys);
  CHECK(check_decomposition(e, d, small, f.sys).ok());
  std::set<std::string> used;
  for (const Factor& fac : d.factors) {
    if (fac.trivial()) {
      continue;
    }
    used.insert(f.str(small.generators[*fac.generator].cell));
  }
  CHECK(used == std::set<std::string>{"(r2) s . s (r2^-1)",
                                      "(r2) e . s (r3^-1)"});
}

TEST_CASE("express handles identities and random loops", "[endo][property]") {
  Order8 f;
  GeneratorSet gens = generate(f.sys);
  CHECK(express(identity(f.w("e s e")), gens, f.sys).factors.empty());
  CHECK_THROWS_AS(express(f.cell("(r2)e"), gens, f.sys), Error);

  std::mt19937 rng(31);
  for (int i = 0; i < 200; ++i) {
    Word w = oracle::random_word(rng, 2, 8);
    TwoCell loop = oracle::random_loop(w, f.sys, rng, 6, 10);
    Decomposition d = express(loop, gens, f.sys);
    ExpressCheck c = check_decomposition(loop, d, gens, f.sys);
    CHECK(c.ok());
    AbelianVector sum;
    for (const Factor& fac : d.factors) {
      const TwoCell& g =
          fac.generator ? gens.generators[*fac.generator].cell : *fac.cell;
      sum += scaled(abelianize(g), fac.exp);
    }
    CHECK(sum == abelianize(loop));
  }
}

TEST_CASE("expression content is invariant under conjugation",
          "[endo][property]") {
  Order8 f;
  GeneratorSet gens = generate(f.sys);
  std::mt19937 rng(37);
  // Net exponent of each generator.
  auto content = [&](const TwoCell& e) {
    std::map<std::size_t, int> out;
    for (const Factor& fac : express(e, gens, f.sys).factors) {
      if (fac.generator && (out[*fac.generator] += fac.exp) == 0) {
        out.erase(*fac.generator);
      }
    }
    return out;
  };
  for (int i = 0; i < 100; ++i) {
    Word w = oracle::random_word(rng, 2, 7);
    TwoCell loop = oracle::random_loop(w, f.sys, rng, 5, 9);
    TwoCell beta = oracle::random_path(w, f.sys, rng, 4, 9);
    TwoCell conj = compose(compose(invert(beta, f.rules), loop, f.rules), beta,
                           f.rules);
    CHECK(content(conj) == content(loop));
  }
}

TEST_CASE("loops of the completed ab system express", "[endo][property]") {
  LoggedSystem sys = completed("ab.pres");
  GeneratorSet gens = generate(sys);
  CHECK_FALSE(gens.generators.empty());
  for (const auto& g : gens.generators) {
    CHECK(is_endorewrite(g.cell, sys.rules()));
    RuleView initial(sys.rules().data(), sys.initial_count());
    CHECK(is_endorewrite(expand_log(g.cell, sys), initial));
  }
  std::mt19937 rng(41);
  for (int i = 0; i < 1000; ++i) {
    Word w = oracle::random_word(rng, 2, 6);
    TwoCell loop = oracle::random_loop(w, sys, rng, 6, 9);
    REQUIRE(is_endorewrite(loop, sys.rules()));
    Decomposition d = express(loop, gens, sys);
    CHECK(check_decomposition(loop, d, gens, sys).ok());
  }
}

TEST_CASE("the free monoid has no generators", "[endo]") {
  LoggedSystem sys = completed("free.pres");
  CHECK(generate(sys).generators.empty());
}

TEST_CASE("generate needs a complete system", "[endo]") {
  LoggedSystem raw = LoggedSystem::from_presentation(oracle::load("ab.pres"));
  CHECK_THROWS_AS(generate(raw), Error);
}

TEST_CASE("express rejects generators of another system", "[endo]") {
  Order8 f;
  GeneratorSet empty;
  TwoCell e = f.cell("(r2)e . s(r3^-1)");
  CHECK_THROWS_WITH(express(e, empty, f.sys),
                    Catch::Matchers::ContainsSubstring("unmatched"));
}
