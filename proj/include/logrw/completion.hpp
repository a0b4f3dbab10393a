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

// Logged Knuth-Bendix completion.
//
// Completion works exactly like the classical procedure, except that every
// new rule is stored together with the 2-cell that derives it:
//
//     gamma = beta_a^-1 . u_a a^-1 v_a . u_n n v_n . beta_n
//
// where u_a a v_a and u_n n v_n are the two sides of a critical pair and the
// beta's are the logged reductions of their targets.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "logrw/engine.hpp"
#include "logrw/twocell.hpp"
#include "logrw/word.hpp"

namespace logrw {

/// How the left-hand sides l1 (left rule) and l2 (right rule) sit in the
/// superposition.
enum class OverlapCase {
  FirstInsideSecond,  // i)   u1 l1 v1 = l2
  SecondThenFirst,    // ii)  u1 l1 = l2 v2
  FirstThenSecond,    // iii) l1 v1 = u2 l2
  SecondInsideFirst,  // iv)  l1 = u2 l2 v2
};

inline const char* case_name(OverlapCase c) {
  switch (c) {
    case OverlapCase::FirstInsideSecond: return "i";
    case OverlapCase::SecondThenFirst: return "ii";
    case OverlapCase::FirstThenSecond: return "iii";
    case OverlapCase::SecondInsideFirst: return "iv";
  }
  return "?";
}

/// Two placements of left-hand sides sharing at least one letter. For every
/// case superposition = u1 l1 v1 = u2 l2 v2, with one of u1, u2 and one of
/// v1, v2 empty.
struct Overlap {
  OverlapCase kind = OverlapCase::FirstInsideSecond;
  RuleIndex left_rule = 0;
  RuleIndex right_rule = 0;
  Word u1, v1, u2, v2;
  Word superposition;

  std::size_t left_offset() const noexcept { return u1.size(); }
  std::size_t right_offset() const noexcept { return u2.size(); }

  friend bool operator==(const Overlap&, const Overlap&) = default;
};

/// Identifies an overlap up to whiskering.
struct OverlapKey {
  RuleIndex left_rule = 0;
  RuleIndex right_rule = 0;
  std::size_t left_offset = 0;
  std::size_t right_offset = 0;

  friend bool operator==(const OverlapKey&, const OverlapKey&) = default;
  friend auto operator<=>(const OverlapKey&, const OverlapKey&) = default;
};

inline OverlapKey key_of(const Overlap& o) {
  return {o.left_rule, o.right_rule, o.left_offset(), o.right_offset()};
}

namespace detail {

inline Overlap make_overlap(OverlapCase kind, RuleIndex a, RuleIndex b,
                            std::size_t off_a, std::size_t off_b, Word sup,
                            RuleView rules) {
  Overlap o;
  o.kind = kind;
  o.left_rule = a;
  o.right_rule = b;
  const std::size_t la = rules[a].lhs.size();
  const std::size_t lb = rules[b].lhs.size();
  o.u1 = subword(sup, 0, off_a);
  o.v1 = subword(sup, off_a + la);
  o.u2 = subword(sup, 0, off_b);
  o.v2 = subword(sup, off_b + lb);
  o.superposition = std::move(sup);
  return o;
}

}  // namespace detail

/// All overlaps of rule a (left) with rule b (right). Cases ii and iii
/// between distinct rules already cover both orders, so the pair (b, a)
/// yields the mirror images of the same placements. For a = b only the
/// iii placements are kept: i and iv would be the identical placement and ii
/// mirrors iii.
inline std::vector<Overlap> find_overlaps(RuleIndex a, RuleIndex b,
                                          RuleView rules) {
  std::vector<Overlap> out;
  const Word& l1 = rules[a].lhs;
  const Word& l2 = rules[b].lhs;
  const std::size_t n1 = l1.size();
  const std::size_t n2 = l2.size();
  const bool self = a == b;

  if (!self && n1 <= n2) {
    for (std::size_t p = 0; p + n1 <= n2; ++p) {
      if (occurs_at(l2, p, l1)) {
        out.push_back(detail::make_overlap(OverlapCase::FirstInsideSecond, a,
                                           b, p, 0, l2, rules));
      }
    }
  }
  // Shared part of length k: a proper suffix of one lhs equal to a proper
  // prefix of the other. Larger k first, i.e. smaller offset first.
  auto shared = [](const Word& first, const Word& second, std::size_t k) {
    return std::equal(first.end() - static_cast<std::ptrdiff_t>(k),
                      first.end(), second.begin());
  };
  const std::size_t kmax = std::min(n1, n2);
  if (!self) {
    for (std::size_t k = kmax; k-- > 1;) {
      if (k < n1 && k < n2 && shared(l2, l1, k)) {
        Word sup = concat(subword(l2, 0, n2 - k), l1);
        out.push_back(detail::make_overlap(OverlapCase::SecondThenFirst, a, b,
                                           n2 - k, 0, std::move(sup), rules));
      }
    }
  }
  for (std::size_t k = kmax; k-- > 1;) {
    if (k < n1 && k < n2 && shared(l1, l2, k)) {
      Word sup = concat(l1, subword(l2, k));
      out.push_back(detail::make_overlap(OverlapCase::FirstThenSecond, a, b, 0,
                                         n1 - k, std::move(sup), rules));
    }
  }
  if (!self && n2 < n1) {
    for (std::size_t p = 0; p + n2 <= n1; ++p) {
      if (occurs_at(l1, p, l2)) {
        out.push_back(detail::make_overlap(OverlapCase::SecondInsideFirst, a,
                                           b, 0, p, l1, rules));
      }
    }
  }
  return out;
}

/// The canonical overlap formed by two forward redexes of `w`, or nothing if
/// their regions are disjoint (or the redexes coincide).
inline std::optional<Overlap> overlap_between(const Word& w, Redex x, Redex y,
                                              RuleView rules) {
  if (x == y) {
    return std::nullopt;
  }
  const std::size_t ex = x.pos + rules[x.rule].lhs.size();
  const std::size_t ey = y.pos + rules[y.rule].lhs.size();
  if (ex <= y.pos || ey <= x.pos) {
    return std::nullopt;
  }
  // Left rule is the older one; for a self overlap the leftmost placement.
  if (y.rule < x.rule || (y.rule == x.rule && y.pos < x.pos)) {
    std::swap(x, y);
  }
  const std::size_t lo = std::min(x.pos, y.pos);
  const std::size_t hi = std::max(x.pos + rules[x.rule].lhs.size(),
                                  y.pos + rules[y.rule].lhs.size());
  const std::size_t ox = x.pos - lo;
  const std::size_t oy = y.pos - lo;
  const std::size_t lx = rules[x.rule].lhs.size();
  const std::size_t ly = rules[y.rule].lhs.size();
  OverlapCase kind;
  if (ox >= oy && ox + lx <= oy + ly) {
    kind = OverlapCase::FirstInsideSecond;
  } else if (oy >= ox && oy + ly <= ox + lx) {
    kind = OverlapCase::SecondInsideFirst;
  } else if (oy < ox) {
    kind = OverlapCase::SecondThenFirst;
  } else {
    kind = OverlapCase::FirstThenSecond;
  }
  return detail::make_overlap(kind, x.rule, y.rule, ox, oy,
                              subword(w, lo, hi - lo), rules);
}

/// The two one-step rewrites of a common word. `origin` is empty when the
/// redexes do not overlap.
struct CriticalPair {
  TwoCell left;
  TwoCell right;
  std::optional<Overlap> origin;
};

inline CriticalPair critical_pair(const Overlap& o) {
  CriticalPair cp;
  cp.left = TwoCell{o.superposition, {Step{o.u1, o.left_rule, 1, o.v1}}};
  cp.right = TwoCell{o.superposition, {Step{o.u2, o.right_rule, 1, o.v2}}};
  cp.origin = o;
  return cp;
}

/// The pair of rewrites of `w` at two redexes.
inline CriticalPair critical_pair_at(const Word& w, Redex x, Redex y,
                                     RuleView rules) {
  CriticalPair cp;
  cp.left = TwoCell{w, {step_at(w, x.pos, x.rule, 1, rules)}};
  cp.right = TwoCell{w, {step_at(w, y.pos, y.rule, 1, rules)}};
  cp.origin = overlap_between(w, x, y, rules);
  return cp;
}

struct Resolved {
  TwoCell endorewrite;
};

struct NewRule {
  Word lhs;
  Word rhs;
  TwoCell log;
};

using Resolution = std::variant<Resolved, NewRule>;

/// Reduces both sides of the pair. If they meet, returns the endorewrite
/// left . beta_l . beta_r^-1 . right^-1 (free reduced); otherwise the new
/// logged rule between the two irreducible words.
inline Resolution resolve(const CriticalPair& cp, const LoggedSystem& sys) {
  RuleView rules = sys.rules();
  TwoCell beta_l = reduce_logged(target(cp.left, rules), sys);
  TwoCell beta_r = reduce_logged(target(cp.right, rules), sys);
  Word z_l = target(beta_l, rules);
  Word z_r = target(beta_r, rules);
  if (z_l == z_r) {
    TwoCell d = compose(compose(cp.left, beta_l, rules),
                        invert(compose(cp.right, beta_r, rules), rules), rules);
    return Resolved{free_reduce(d)};
  }
  if (greater(sys.order(), z_l, z_r)) {
    TwoCell log = compose(invert(compose(cp.left, beta_l, rules), rules),
                          compose(cp.right, beta_r, rules), rules);
    return NewRule{std::move(z_l), std::move(z_r), std::move(log)};
  }
  TwoCell log = compose(invert(compose(cp.right, beta_r, rules), rules),
                        compose(cp.left, beta_l, rules), rules);
  return NewRule{std::move(z_r), std::move(z_l), std::move(log)};
}

struct CompletionLimits {
  std::size_t max_rules = 500;
  std::size_t max_passes = 50;
  std::size_t max_word_length = 64;
};

struct CompletionResult {
  enum class Status { Complete, LimitExceeded };
  Status status = Status::Complete;
  LoggedSystem system;
  std::vector<CriticalPair> pending;
  std::size_t passes = 0;

  bool complete() const noexcept { return status == Status::Complete; }
};

namespace detail {

// Overlaps between every active rule and the rules in `fresh`, each unordered
// pair once, in (older, newer, case, offset) order.
inline std::vector<Overlap> overlaps_with(const LoggedSystem& sys,
                                          const std::vector<RuleIndex>& fresh) {
  std::vector<bool> is_fresh(sys.size(), false);
  for (RuleIndex r : fresh) {
    is_fresh[r] = true;
  }
  std::vector<std::pair<RuleIndex, RuleIndex>> pairs;
  for (RuleIndex n : fresh) {
    for (RuleIndex a = 0; a < sys.size(); ++a) {
      if (!sys.active(a) || (is_fresh[a] && a > n)) {
        continue;
      }
      pairs.emplace_back(std::min(a, n), std::max(a, n));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<Overlap> out;
  for (auto [a, b] : pairs) {
    auto found = find_overlaps(a, b, sys.rules());
    out.insert(out.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
  }
  return out;
}

inline std::vector<RuleIndex> active_rules(const LoggedSystem& sys) {
  std::vector<RuleIndex> out;
  for (RuleIndex r = 0; r < sys.size(); ++r) {
    if (sys.active(r)) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace detail

/// Every overlap among the active rules of `sys`.
inline std::vector<Overlap> all_overlaps(const LoggedSystem& sys) {
  return detail::overlaps_with(sys, detail::active_rules(sys));
}

/// Runs the logged Knuth-Bendix procedure. Rules found during a pass take
/// part in the reductions of the remaining pairs of that pass; their own
/// overlaps are searched in the next pass. On LimitExceeded the partial
/// system is returned with the critical pairs still to be examined.
inline CompletionResult logged_knuth_bendix(LoggedSystem init,
                                            const CompletionLimits& limits) {
  CompletionResult result;
  result.system = std::move(init);
  LoggedSystem& sys = result.system;
  std::vector<RuleIndex> fresh = detail::active_rules(sys);

  while (!fresh.empty()) {
    std::vector<Overlap> overlaps = detail::overlaps_with(sys, fresh);
    if (result.passes >= limits.max_passes) {
      for (const auto& o : overlaps) {
        result.pending.push_back(critical_pair(o));
      }
      result.status = CompletionResult::Status::LimitExceeded;
      sys.mark_complete(false);
      return result;
    }
    ++result.passes;
    fresh.clear();
    for (std::size_t k = 0; k < overlaps.size(); ++k) {
      CriticalPair cp = critical_pair(overlaps[k]);
      Resolution res = resolve(cp, sys);
      auto* rule = std::get_if<NewRule>(&res);
      if (rule == nullptr) {
        continue;
      }
      if (rule->lhs.size() > limits.max_word_length ||
          sys.size() >= limits.max_rules) {
        for (std::size_t j = k; j < overlaps.size(); ++j) {
          result.pending.push_back(critical_pair(overlaps[j]));
        }
        for (const auto& o : detail::overlaps_with(sys, fresh)) {
          result.pending.push_back(critical_pair(o));
        }
        result.status = CompletionResult::Status::LimitExceeded;
        sys.mark_complete(false);
        return result;
      }
      fresh.push_back(sys.add_derived(std::move(rule->lhs),
                                      std::move(rule->rhs),
                                      std::move(rule->log)));
    }
  }
  sys.mark_complete(true);
  result.status = CompletionResult::Status::Complete;
  return result;
}

struct ConfluenceReport {
  std::optional<CriticalPair> witness;

  bool complete() const noexcept { return !witness.has_value(); }
};

/// Complete iff every critical pair of the active rules resolves.
inline ConfluenceReport is_complete(const LoggedSystem& sys) {
  for (const auto& o : all_overlaps(sys)) {
    CriticalPair cp = critical_pair(o);
    if (std::holds_alternative<NewRule>(resolve(cp, sys))) {
      return {std::move(cp)};
    }
  }
  return {};
}

/// Optional clean-up of a complete system: rules whose lhs contains another
/// lhs are deactivated, and rules with a reducible rhs are replaced by a new
/// rule lhs -> nf(rhs) whose log is the old rule followed by the reduction.
/// Nothing is deleted, so existing logs stay valid.
inline LoggedSystem interreduce(const LoggedSystem& sys) {
  LoggedSystem out = sys;
  const auto active = detail::active_rules(sys);
  for (RuleIndex i : active) {
    const Word& li = sys.rule(i).lhs;
    for (RuleIndex j : active) {
      const Word& lj = sys.rule(j).lhs;
      if (i == j || lj.size() > li.size()) {
        continue;
      }
      if (lj.size() == li.size() && (lj != li || j > i)) {
        continue;
      }
      bool factor = false;
      for (std::size_t p = 0; p + lj.size() <= li.size() && !factor; ++p) {
        factor = occurs_at(li, p, lj);
      }
      if (factor) {
        out.deactivate(i);
        break;
      }
    }
  }
  const bool was_complete = sys.complete();
  for (RuleIndex i : detail::active_rules(out)) {
    const Rule rule = out.rule(i);
    if (is_irreducible(rule.rhs, out)) {
      continue;
    }
    out.deactivate(i);
    TwoCell reduction = reduce_logged(rule.rhs, out);
    TwoCell log{rule.lhs, {Step{{}, i, 1, {}}}};
    log.steps.insert(log.steps.end(), reduction.steps.begin(),
                     reduction.steps.end());
    Word rhs = target(reduction, out.rules());
    out.add_derived(rule.lhs, std::move(rhs), std::move(log));
  }
  out.mark_complete(was_complete);
  return out;
}

}  // namespace logrw
