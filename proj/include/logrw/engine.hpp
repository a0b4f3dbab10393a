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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logrw/presentation.hpp"
#include "logrw/twocell.hpp"
#include "logrw/word.hpp"

namespace logrw {

enum class Provenance { Initial, Derived };

/// Rules paired with the 2-cells that justify them. Initial rules are their
/// own justification; a derived rule carries a log from its lhs to its rhs,
/// written over earlier rules (possibly derived ones, expanded on demand).
///
/// Rules are never removed, only deactivated, so every log ever written
/// against the system stays valid.
class LoggedSystem {
 public:
  LoggedSystem() = default;

  LoggedSystem(Alphabet alphabet, OrderSpec order, std::vector<Rule> initial)
      : alphabet_(std::move(alphabet)), order_(order) {
    order_.alphabet_size = alphabet_.size();
    for (auto& r : initial) {
      check_rule(r);
      rules_.push_back(std::move(r));
      provenance_.push_back(Provenance::Initial);
      logs_.emplace_back();
      active_.push_back(true);
    }
    initial_count_ = rules_.size();
  }

  static LoggedSystem from_presentation(
      const Presentation& p, std::vector<std::string>* warnings = nullptr) {
    return LoggedSystem(p.alphabet, p.order, orient(p, warnings));
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const OrderSpec& order() const noexcept { return order_; }
  RuleView rules() const noexcept { return rules_; }
  const Rule& rule(RuleIndex i) const { return rules_.at(i); }
  std::size_t size() const noexcept { return rules_.size(); }
  std::size_t initial_count() const noexcept { return initial_count_; }
  Provenance provenance(RuleIndex i) const { return provenance_.at(i); }
  const std::optional<TwoCell>& log(RuleIndex i) const { return logs_.at(i); }
  bool active(RuleIndex i) const { return active_.at(i); }

  std::optional<RuleIndex> find_rule(std::string_view id) const {
    for (RuleIndex i = 0; i < rules_.size(); ++i) {
      if (rules_[i].id == id) {
        return i;
      }
    }
    return std::nullopt;
  }

  /// Appends a derived rule; its id continues the r1, r2, ... numbering.
  RuleIndex add_derived(Word lhs, Word rhs, TwoCell log) {
    Rule r{"r" + std::to_string(rules_.size() + 1), std::move(lhs),
           std::move(rhs)};
    check_rule(r);
    rules_.push_back(std::move(r));
    provenance_.push_back(Provenance::Derived);
    logs_.emplace_back(std::move(log));
    active_.push_back(true);
    complete_ = false;
    return rules_.size() - 1;
  }

  void deactivate(RuleIndex i) { active_.at(i) = false; }

  /// Set by completion. Only a system flagged complete may claim that two
  /// words are different.
  bool complete() const noexcept { return complete_; }
  void mark_complete(bool value) noexcept { complete_ = value; }

 private:
  void check_rule(const Rule& r) const {
    if (!alphabet_.contains(r.lhs) || !alphabet_.contains(r.rhs)) {
      throw Error("rule " + r.id + " uses a letter outside the alphabet");
    }
    if (!greater(order_, r.lhs, r.rhs)) {
      throw Error("rule " + r.id + " is not oriented: lhs must exceed rhs");
    }
  }

  Alphabet alphabet_;
  OrderSpec order_;
  std::vector<Rule> rules_;
  std::vector<Provenance> provenance_;
  std::vector<std::optional<TwoCell>> logs_;
  std::vector<bool> active_;
  std::size_t initial_count_ = 0;
  bool complete_ = false;
};

struct Redex {
  std::size_t pos = 0;
  RuleIndex rule = 0;

  friend bool operator==(const Redex&, const Redex&) = default;
  friend auto operator<=>(const Redex&, const Redex&) = default;
};

/// All occurrences of active left-hand sides, by position then rule index.
inline std::vector<Redex> find_redexes(const Word& w, const LoggedSystem& sys) {
  std::vector<Redex> out;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    for (RuleIndex r = 0; r < sys.size(); ++r) {
      if (sys.active(r) && occurs_at(w, pos, sys.rule(r).lhs)) {
        out.push_back({pos, r});
      }
    }
  }
  return out;
}

namespace detail {

inline std::optional<Redex> first_redex(const Word& w, const LoggedSystem& sys) {
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    for (RuleIndex r = 0; r < sys.size(); ++r) {
      if (sys.active(r) && occurs_at(w, pos, sys.rule(r).lhs)) {
        return Redex{pos, r};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline bool is_irreducible(const Word& w, const LoggedSystem& sys) {
  return !detail::first_redex(w, sys).has_value();
}

inline std::pair<Word, Step> apply_step(const Word& w, std::size_t pos,
                                        RuleIndex rule, int exp,
                                        const LoggedSystem& sys) {
  Step s = step_at(w, pos, rule, exp, sys.rules());
  Word out = step_target(s, sys.rules());
  return {std::move(out), std::move(s)};
}

/// Reduces to the irreducible form, always rewriting the leftmost redex and
/// among those the lowest rule index. Terminates because every rule
/// decreases words in an admissible well-order.
inline TwoCell reduce_logged(const Word& w, const LoggedSystem& sys) {
  TwoCell c{w, {}};
  Word current = w;
  while (auto redex = detail::first_redex(current, sys)) {
    auto [next, step] = apply_step(current, redex->pos, redex->rule, 1, sys);
    c.steps.push_back(std::move(step));
    current = std::move(next);
  }
  return c;
}

inline Word normal_form(const Word& w, const LoggedSystem& sys) {
  Word current = w;
  while (auto redex = detail::first_redex(current, sys)) {
    current = splice(current, redex->pos, sys.rule(redex->rule).lhs.size(),
                     sys.rule(redex->rule).rhs);
  }
  return current;
}

enum class Verdict { Equal, NotEqual, Unknown };

struct ProofResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<TwoCell> witness;  // w1 -> w2, present iff Equal
  Word normal_form_1;
  Word normal_form_2;
};

/// Decides w1 = w2. A witness is reduce(w1) . reduce(w2)^-1. Different
/// normal forms prove inequality only if the system is flagged complete.
inline ProofResult prove(const Word& w1, const Word& w2,
                         const LoggedSystem& sys) {
  ProofResult out;
  TwoCell a = reduce_logged(w1, sys);
  TwoCell b = reduce_logged(w2, sys);
  out.normal_form_1 = target(a, sys.rules());
  out.normal_form_2 = target(b, sys.rules());
  if (out.normal_form_1 == out.normal_form_2) {
    out.verdict = Verdict::Equal;
    out.witness = compose(a, invert(b, sys.rules()), sys.rules());
  } else {
    out.verdict = sys.complete() ? Verdict::NotEqual : Verdict::Unknown;
  }
  return out;
}

/// Rewrites cells over a logged system into cells over its initial rules,
/// memoizing the expansion of each derived rule.
class LogExpander {
 public:
  explicit LogExpander(const LoggedSystem& sys)
      : sys_(&sys), cache_(sys.size()) {}

  TwoCell expand(const TwoCell& c) {
    TwoCell out{c.source, {}};
    for (const Step& s : c.steps) {
      if (s.rule >= sys_->size()) {
        throw Error("no rule with index " + std::to_string(s.rule));
      }
      if (sys_->provenance(s.rule) == Provenance::Initial) {
        out.steps.push_back(s);
        continue;
      }
      const TwoCell& log = rule_log(s.rule);
      TwoCell piece = s.exp > 0 ? whisker(s.prefix, log, s.suffix)
                                : whisker(s.prefix,
                                          invert(log, sys_->rules()), s.suffix);
      out.steps.insert(out.steps.end(), piece.steps.begin(), piece.steps.end());
    }
    return out;
  }

  /// The fully expanded log of a derived rule.
  const TwoCell& rule_log(RuleIndex r) {
    if (!cache_[r]) {
      const auto& log = sys_->log(r);
      if (!log) {
        throw Error("derived rule " + sys_->rule(r).id + " has no log");
      }
      cache_[r] = expand(*log);
    }
    return *cache_[r];
  }

 private:
  const LoggedSystem* sys_;
  std::vector<std::optional<TwoCell>> cache_;
};

inline TwoCell expand_log(const TwoCell& c, const LoggedSystem& sys) {
  return LogExpander(sys).expand(c);
}

}  // namespace logrw
