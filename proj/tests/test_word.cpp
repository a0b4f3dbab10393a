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

#include <random>

#include "logrw/presentation.hpp"
#include "logrw/word.hpp"
#include "oracles.hpp"

using namespace logrw;

namespace {

const Alphabet se{{"s", "e"}};
const OrderSpec order{OrderSpec::Kind::ShortLex, 2};

Word w(const char* text) { return parse_word(text, se); }

}  // namespace

TEST_CASE("alphabet rejects duplicates and looks up names", "[word]") {
  CHECK_THROWS_AS(Alphabet({"a", "a"}), Error);
  CHECK_THROWS_AS(Alphabet({""}), Error);
  CHECK(se.letter("s") == 0);
  CHECK(se.letter("e") == 1);
  CHECK_FALSE(se.find("x"));
  CHECK_THROWS_AS(se.letter("x"), UnknownLetter);
}

TEST_CASE("shortlex puts the first declared letter highest", "[word]") {
  CHECK(greater(order, w("s"), w("e")));
  CHECK(greater(order, w("e e"), w("s")));
  CHECK(greater(order, w("s e"), w("e s")));
  CHECK(greater(order, w("s s s"), w("s")));
  CHECK(compare(order, w("e s e"), w("e s e")) == std::strong_ordering::equal);
  CHECK(greater(order, w("e"), Word{}));
  CHECK_THROWS_AS(compare(order, Word{7}, Word{}), UnknownLetter);
}

TEST_CASE("shortlex is total and admissible on short words", "[word]") {
  auto words = oracle::all_words(2, 4);
  std::mt19937 rng(7);
  for (const Word& a : words) {
    for (const Word& b : words) {
      auto c = compare(order, a, b);
      CHECK((c == std::strong_ordering::equal) == (a == b));
      if (c == std::strong_ordering::less) {
        Word x = oracle::random_word(rng, 2, 2);
        Word y = oracle::random_word(rng, 2, 2);
        CHECK(compare(order, concat(x, a, y), concat(x, b, y)) ==
              std::strong_ordering::less);
      }
    }
  }
}

TEST_CASE("words parse with or without spaces", "[word]") {
  CHECK(w("s s e") == Word{0, 0, 1});
  CHECK(w("sse") == Word{0, 0, 1});
  CHECK(w("1").empty());
  CHECK(w("").empty());
  CHECK_THROWS_AS(w("s x"), UnknownLetter);
  CHECK(to_string(w("e s e"), se) == "e s e");
  CHECK(to_string(Word{}, se) == "1");

  Alphabet multi{{"ab", "a", "b"}};
  CHECK(parse_word("aab", multi) == Word{1, 0});
  CHECK(parse_word("a ab b", multi) == Word{1, 0, 2});
}

TEST_CASE("subword and splice", "[word]") {
  Word x = w("s e s e");
  CHECK(subword(x, 1, 2) == w("e s"));
  CHECK(subword(x, 3) == w("e"));
  CHECK(occurs_at(x, 2, w("s e")));
  CHECK_FALSE(occurs_at(x, 3, w("e s")));
  CHECK(splice(x, 0, 4, w("e s e")) == w("e s e"));
  CHECK(splice(x, 1, 2, Word{}) == w("s e"));
}

TEST_CASE("presentation file parses", "[presentation]") {
  Presentation p = oracle::load("order8.pres");
  CHECK(p.alphabet.names() == std::vector<std::string>{"s", "e"});
  REQUIRE(p.relations.size() == 6);
  CHECK(p.relations[4].first == w("s e s e"));
  CHECK(p.relations[4].second == w("e s e"));
  auto rules = orient(p);
  REQUIRE(rules.size() == 6);
  CHECK(rules[0].id == "r1");
  CHECK(rules[3].lhs == w("e s s"));
  CHECK(rules[3].rhs == w("e"));
  for (const auto& r : rules) {
    CHECK(greater(p.order, r.lhs, r.rhs));
  }
}

TEST_CASE("orient flips relations and drops trivial ones", "[presentation]") {
  Presentation p = parse_presentation(
      "monoid\nletters: a b\norder: shortlex\nrules:\n"
      "b = a b\na = a\n1 = b b\n");
  std::vector<std::string> warnings;
  auto rules = orient(p, &warnings);
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].lhs == Word{0, 1});
  CHECK(rules[0].rhs == Word{1});
  CHECK(rules[1].id == "r2");
  CHECK(rules[1].lhs == Word{1, 1});
  CHECK(rules[1].rhs.empty());
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("relation 2") != std::string::npos);
}

TEST_CASE("presentation errors carry line and column", "[presentation]") {
  auto error_at = [](const char* text) {
    try {
      parse_presentation(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(error_at("monoid\nletters: a b\norder: shortlex\nrules:\na x = b\n") ==
        std::pair<std::size_t, std::size_t>{5, 3});
  CHECK(error_at("monoid\nletters: a a\n") ==
        std::pair<std::size_t, std::size_t>{2, 12});
  CHECK(error_at("monoid\nletters: a 1\n") ==
        std::pair<std::size_t, std::size_t>{2, 12});
  CHECK(error_at("monoid\nletters: a\norder: lex\n") ==
        std::pair<std::size_t, std::size_t>{3, 8});
  CHECK(error_at("monoid\nletters: a\norder: shortlex\nrules:\na = a = a\n") ==
        std::pair<std::size_t, std::size_t>{5, 7});
  CHECK(error_at("monoid\nletters: a\n").first == 3);
  CHECK(error_at("# only a comment\n").first == 1);
  CHECK(error_at("monoid\nletters: a\norder: shortlex\nrules:\na a\n") ==
        std::pair<std::size_t, std::size_t>{5, 1});
}

TEST_CASE("comments and blank lines are ignored", "[presentation]") {
  Presentation p = parse_presentation(
      "# header\n\nmonoid   # kind\nletters: x y\norder: shortlex\n"
      "rules:\n  x y = y x   # commute\n\n");
  CHECK(p.relations.size() == 1);
}
