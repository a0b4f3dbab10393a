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

// Rewrites as 2-cells.
//
// A 2-cell is stored as a representative in the sesquigroupoid: a source word
// and a chain of whiskered rule applications
//
//     u1 a1^e1 v1 . u2 a2^e2 v2 . ... . un an^en vn
//
// where each step rewrites the word produced by the previous one. Classes
// modulo the interchange law are never materialized; interchange_normalize
// computes a canonical representative of a sound fragment of the class.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logrw/presentation.hpp"
#include "logrw/word.hpp"

namespace logrw {

using RuleIndex = std::size_t;
using RuleView = std::span<const Rule>;

/// One whiskered rule application: prefix . rule^exp . suffix.
struct Step {
  Word prefix;
  RuleIndex rule = 0;
  int exp = 1;
  Word suffix;

  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

struct TwoCell {
  Word source;
  std::vector<Step> steps;

  bool is_identity() const noexcept { return steps.empty(); }

  friend bool operator==(const TwoCell&, const TwoCell&) = default;
};

/// Signed count of each rule over the steps of a cell. Zero entries are
/// never stored.
using AbelianVector = std::map<RuleIndex, long long>;

class ChainError : public Error {
 public:
  ChainError(std::size_t index, const std::string& what)
      : Error("step " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

inline const Word& input_side(const Rule& r, int exp) {
  return exp > 0 ? r.lhs : r.rhs;
}

inline const Word& output_side(const Rule& r, int exp) {
  return exp > 0 ? r.rhs : r.lhs;
}

inline bool is_inverse_pair(const Step& a, const Step& b) {
  return a.rule == b.rule && a.exp == -b.exp && a.prefix == b.prefix &&
         a.suffix == b.suffix;
}

/// The word a step expects to stand on.
inline Word step_source(const Step& s, RuleView rules) {
  return concat(s.prefix, input_side(rules[s.rule], s.exp), s.suffix);
}

inline Word step_target(const Step& s, RuleView rules) {
  return concat(s.prefix, output_side(rules[s.rule], s.exp), s.suffix);
}

/// Builds the step applying `rule^exp` at `pos` of `w`; throws if the input
/// side does not occur there.
inline Step step_at(const Word& w, std::size_t pos, RuleIndex rule, int exp,
                    RuleView rules) {
  if (rule >= rules.size()) {
    throw Error("no rule with index " + std::to_string(rule));
  }
  const Word& in = input_side(rules[rule], exp);
  if (!occurs_at(w, pos, in)) {
    throw Error("rule " + rules[rule].id + (exp > 0 ? "" : "^-1") +
                " does not apply at position " + std::to_string(pos));
  }
  return Step{subword(w, 0, pos), rule, exp, subword(w, pos + in.size())};
}

struct ValidationResult {
  std::optional<std::size_t> failed_step;
  std::string reason;

  bool ok() const noexcept { return !failed_step.has_value(); }
  explicit operator bool() const noexcept { return ok(); }
};

/// Checks the chaining condition at every step.
inline ValidationResult validate(const TwoCell& c, RuleView rules) {
  Word current = c.source;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const Step& s = c.steps[i];
    if (s.exp != 1 && s.exp != -1) {
      return {i, "exponent must be 1 or -1"};
    }
    if (s.rule >= rules.size()) {
      return {i, "unknown rule"};
    }
    if (step_source(s, rules) != current) {
      return {i, "step does not apply to the current word"};
    }
    current = step_target(s, rules);
  }
  return {};
}

/// Every word visited, starting with the source.
inline std::vector<Word> trace(const TwoCell& c, RuleView rules) {
  std::vector<Word> words;
  words.reserve(c.steps.size() + 1);
  words.push_back(c.source);
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const Step& s = c.steps[i];
    if (s.rule >= rules.size() || step_source(s, rules) != words.back()) {
      throw ChainError(i, "step does not apply to the current word");
    }
    words.push_back(step_target(s, rules));
  }
  return words;
}

inline Word target(const TwoCell& c, RuleView rules) {
  return trace(c, rules).back();
}

inline TwoCell identity(Word w) { return TwoCell{std::move(w), {}}; }

inline TwoCell compose(const TwoCell& a, const TwoCell& b, RuleView rules) {
  if (target(a, rules) != b.source) {
    throw Error("cannot compose: target of the first cell is not the source "
                "of the second");
  }
  TwoCell out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

inline TwoCell invert(const TwoCell& c, RuleView rules) {
  TwoCell out{target(c, rules), {}};
  out.steps.reserve(c.steps.size());
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) {
    Step s = *it;
    s.exp = -s.exp;
    out.steps.push_back(std::move(s));
  }
  return out;
}

/// u . c . v
inline TwoCell whisker(const Word& u, const TwoCell& c, const Word& v) {
  TwoCell out{concat(u, c.source, v), {}};
  out.steps.reserve(c.steps.size());
  for (const Step& s : c.steps) {
    out.steps.push_back(
        Step{concat(u, s.prefix), s.rule, s.exp, concat(s.suffix, v)});
  }
  return out;
}

/// a src(b) . tgt(a) b
inline TwoCell horizontal_compose(const TwoCell& a, const TwoCell& b,
                                  RuleView rules) {
  Word ta = target(a, rules);
  TwoCell out = whisker({}, a, b.source);
  TwoCell right = whisker(ta, b, {});
  out.steps.insert(out.steps.end(), right.steps.begin(), right.steps.end());
  return out;
}

/// Cancels adjacent mutually inverse steps until none remain.
inline TwoCell free_reduce(const TwoCell& c) {
  TwoCell out{c.source, {}};
  out.steps.reserve(c.steps.size());
  for (const Step& s : c.steps) {
    if (!out.steps.empty() && is_inverse_pair(out.steps.back(), s)) {
      out.steps.pop_back();
    } else {
      out.steps.push_back(s);
    }
  }
  return out;
}

namespace detail {

// One left-to-right bubble pass. Two adjacent steps commute when the region
// read by the second lies strictly left of the region written by the first;
// the second is then moved in front and both are re-whiskered.
inline bool interchange_pass(TwoCell& c, RuleView rules) {
  bool swapped = false;
  Word w = c.source;
  for (std::size_t i = 0; i + 1 < c.steps.size(); ++i) {
    const Step& a = c.steps[i];
    const Step& b = c.steps[i + 1];
    const std::size_t pa = a.prefix.size();
    const std::size_t pb = b.prefix.size();
    const std::size_t in_b = input_side(rules[b.rule], b.exp).size();
    const std::size_t out_b = output_side(rules[b.rule], b.exp).size();
    if (pb + in_b <= pa && pb < pa) {
      Step b2 = step_at(w, pb, b.rule, b.exp, rules);
      Word w2 = step_target(b2, rules);
      Step a2 = step_at(w2, pa - in_b + out_b, a.rule, a.exp, rules);
      c.steps[i] = std::move(b2);
      c.steps[i + 1] = std::move(a2);
      w = std::move(w2);
      swapped = true;
    } else {
      w = step_target(a, rules);
    }
  }
  return swapped;
}

}  // namespace detail

/// Pushes independent steps leftwards (leftmost region first) and cancels
/// inverse pairs, to a fixpoint. Endpoints and abelianization are preserved.
inline TwoCell interchange_normalize(const TwoCell& c, RuleView rules) {
  TwoCell cur = free_reduce(c);
  while (detail::interchange_pass(cur, rules)) {
    cur = free_reduce(cur);
  }
  return cur;
}

enum class CellEquality { Equal, Unknown };

/// Never answers "different": equality of 2-cells modulo interchange is
/// undecidable in general.
inline CellEquality cells_equal_mod_I(const TwoCell& a, const TwoCell& b,
                                      RuleView rules) {
  if (a.source != b.source) {
    return CellEquality::Unknown;
  }
  return interchange_normalize(a, rules) == interchange_normalize(b, rules)
             ? CellEquality::Equal
             : CellEquality::Unknown;
}

inline AbelianVector abelianize(const TwoCell& c) {
  AbelianVector v;
  for (const Step& s : c.steps) {
    if ((v[s.rule] += s.exp) == 0) {
      v.erase(s.rule);
    }
  }
  return v;
}

inline AbelianVector& operator+=(AbelianVector& a, const AbelianVector& b) {
  for (auto [rule, n] : b) {
    if ((a[rule] += n) == 0) {
      a.erase(rule);
    }
  }
  return a;
}

inline AbelianVector scaled(AbelianVector v, long long k) {
  if (k == 0) {
    return {};
  }
  for (auto& [rule, n] : v) {
    n *= k;
  }
  return v;
}

}  // namespace logrw
