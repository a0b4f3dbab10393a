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

#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logrw/word.hpp"

namespace logrw {

/// An oriented relation lhs -> rhs with lhs > rhs.
struct Rule {
  std::string id;
  Word lhs;
  Word rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Relation {
  Word first;
  Word second;
};

/// mon<X | R> together with the ordering used to orient R.
struct Presentation {
  Alphabet alphabet;
  std::vector<Relation> relations;
  OrderSpec order;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      out.push_back({std::string(line.substr(start, i - start)),
                     offset + start + 1});
    }
  }
  return out;
}

inline Word parse_relation_side(const std::vector<Token>& tokens,
                                const Alphabet& alphabet, std::size_t line,
                                std::size_t column_if_empty) {
  if (tokens.empty()) {
    throw ParseError(line, column_if_empty, "expected a word");
  }
  if (tokens.size() == 1 && tokens[0].text == "1" && !alphabet.find("1")) {
    return {};
  }
  Word w;
  for (const auto& t : tokens) {
    auto x = alphabet.find(t.text);
    if (!x) {
      throw ParseError(line, t.column, "unknown letter '" + t.text + "'");
    }
    w.push_back(*x);
  }
  return w;
}

}  // namespace detail

/// Reads the line-oriented presentation format:
///
///     monoid
///     letters: s e
///     order: shortlex
///     rules:
///     e e = e
///     s s s = s
///
/// `#` starts a comment. Relations keep the order in which they are written.
inline Presentation parse_presentation(std::istream& in) {
  enum class Expect { Monoid, Letters, Order, Rules, Relations };
  Expect expect = Expect::Monoid;
  Presentation p;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t last_line = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = detail::tokenize(line, 0);
    if (tokens.empty()) {
      continue;
    }
    last_line = line_no;
    const detail::Token& head = tokens.front();
    switch (expect) {
      case Expect::Monoid:
        if (head.text != "monoid" || tokens.size() != 1) {
          throw ParseError(line_no, head.column, "expected 'monoid'");
        }
        expect = Expect::Letters;
        break;
      case Expect::Letters: {
        if (head.text != "letters:") {
          throw ParseError(line_no, head.column, "expected 'letters:'");
        }
        std::vector<std::string> names;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          const auto& t = tokens[i];
          if (t.text == "=" || t.text == "1") {
            throw ParseError(line_no, t.column,
                             "reserved generator name '" + t.text + "'");
          }
          if (std::find(names.begin(), names.end(), t.text) != names.end()) {
            throw ParseError(line_no, t.column,
                             "duplicate letter '" + t.text + "'");
          }
          names.push_back(t.text);
        }
        p.alphabet = Alphabet(std::move(names));
        p.order.alphabet_size = p.alphabet.size();
        expect = Expect::Order;
        break;
      }
      case Expect::Order:
        if (head.text != "order:") {
          throw ParseError(line_no, head.column, "expected 'order:'");
        }
        if (tokens.size() != 2 || tokens[1].text != "shortlex") {
          std::size_t col = tokens.size() > 1 ? tokens[1].column
                                              : head.column + head.text.size();
          throw ParseError(line_no, col, "only 'shortlex' is supported");
        }
        expect = Expect::Rules;
        break;
      case Expect::Rules:
        if (head.text != "rules:" || tokens.size() != 1) {
          throw ParseError(line_no, head.column, "expected 'rules:'");
        }
        expect = Expect::Relations;
        break;
      case Expect::Relations: {
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
          throw ParseError(line_no, head.column, "expected '<word> = <word>'");
        }
        if (line.find('=', eq + 1) != std::string_view::npos) {
          throw ParseError(line_no, line.find('=', eq + 1) + 1,
                           "unexpected '='");
        }
        auto left = detail::tokenize(line.substr(0, eq), 0);
        auto right = detail::tokenize(line.substr(eq + 1), eq + 1);
        Relation r;
        r.first = detail::parse_relation_side(left, p.alphabet, line_no,
                                              eq + 1);
        r.second = detail::parse_relation_side(right, p.alphabet, line_no,
                                               eq + 2);
        p.relations.push_back(std::move(r));
        break;
      }
    }
  }
  if (expect != Expect::Relations) {
    static constexpr const char* missing[] = {"monoid", "letters:", "order:",
                                              "rules:"};
    throw ParseError(last_line + 1, 1,
                     std::string("unexpected end of input, expected '") +
                         missing[static_cast<int>(expect)] + "'");
  }
  return p;
}

inline Presentation parse_presentation(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_presentation(in);
}

/// Turns each relation (a, b) into max(a, b) -> min(a, b). Relations with
/// a = b are dropped and reported in `warnings`. Ids are r1, r2, ... in input
/// order over the kept relations.
inline std::vector<Rule> orient(const Presentation& p,
                                std::vector<std::string>* warnings = nullptr) {
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& [a, b] = p.relations[i];
    auto c = compare(p.order, a, b);
    if (c == std::strong_ordering::equal) {
      if (warnings != nullptr) {
        warnings->push_back("relation " + std::to_string(i + 1) + " (" +
                            to_string(a, p.alphabet) +
                            " = same) is trivial and was dropped");
      }
      continue;
    }
    Rule r;
    r.id = "r" + std::to_string(rules.size() + 1);
    if (c == std::strong_ordering::greater) {
      r.lhs = a;
      r.rhs = b;
    } else {
      r.lhs = b;
      r.rhs = a;
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

}  // namespace logrw
