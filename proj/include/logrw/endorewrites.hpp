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

// Endorewrites: 2-cells whose source and target coincide.
//
// Over a complete system every endorewrite is a product of conjugates of
// whiskered critical-pair loops delta(c), modulo the interchange law. This
// file builds those loops, a generating set from them, and an explicit
// decomposition of any given endorewrite.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "logrw/completion.hpp"
#include "logrw/engine.hpp"
#include "logrw/twocell.hpp"
#include "logrw/word.hpp"

namespace logrw {

namespace detail {

// Concatenation without the endpoint check; callers guarantee chaining.
inline TwoCell append(TwoCell a, const TwoCell& b) {
  a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
  return a;
}

inline Step inverse(Step s) {
  s.exp = -s.exp;
  return s;
}

inline bool disjoint(const Step& a, const Step& b, RuleView rules) {
  const std::size_t pa = a.prefix.size();
  const std::size_t pb = b.prefix.size();
  return pa + input_side(rules[a.rule], a.exp).size() <= pb ||
         pb + input_side(rules[b.rule], b.exp).size() <= pa;
}

// Step `d`, disjoint from `t` on the same word, moved onto the target of t.
inline Step carry_over(const Step& d, const Step& t, RuleView rules) {
  const std::size_t pt = t.prefix.size();
  const std::size_t in_t = input_side(rules[t.rule], t.exp).size();
  const std::size_t out_t = output_side(rules[t.rule], t.exp).size();
  std::size_t pos = d.prefix.size();
  if (pos >= pt + in_t) {
    pos = pos - in_t + out_t;
  }
  return step_at(step_target(t, rules), pos, d.rule, d.exp, rules);
}

// Shortlex on raw letter indices, for code that has no alphabet at hand.
inline const OrderSpec& index_order() {
  static const OrderSpec order{OrderSpec::Kind::ShortLex,
                               std::numeric_limits<std::size_t>::max()};
  return order;
}

}  // namespace detail

/// t1 . t2' . t1'^-1 . t2^-1 for two disjoint rewrites of one word, where the
/// primed steps are the other rewrite carried across. Trivial modulo
/// interchange.
inline TwoCell diamond(const Step& t1, const Step& t2, RuleView rules) {
  if (!detail::disjoint(t1, t2, rules)) {
    throw Error("diamond needs two disjoint rewrites");
  }
  Step d1 = detail::carry_over(t2, t1, rules);
  Step d2 = detail::carry_over(t1, t2, rules);
  return TwoCell{step_source(t1, rules),
                 {t1, d1, detail::inverse(d2), detail::inverse(t2)}};
}

/// The loop of a resolved critical pair: left . beta_l . beta_r^-1 . right^-1,
/// free reduced. Disjoint pairs close up by carrying each rewrite across the
/// other.
inline TwoCell delta(const CriticalPair& cp, const LoggedSystem& sys) {
  if (cp.left.steps.size() != 1 || cp.right.steps.size() != 1 ||
      cp.left.source != cp.right.source) {
    throw Error("a critical pair is two one-step rewrites of one word");
  }
  const Step& a = cp.left.steps.front();
  const Step& b = cp.right.steps.front();
  if (detail::disjoint(a, b, sys.rules())) {
    return free_reduce(diamond(a, b, sys.rules()));
  }
  Resolution res = resolve(cp, sys);
  if (auto* r = std::get_if<Resolved>(&res)) {
    return r->endorewrite;
  }
  throw Error("critical pair does not resolve: the system is not complete");
}

inline bool is_endorewrite(const TwoCell& c, RuleView rules) {
  if (!validate(c, rules)) {
    return false;
  }
  return target(c, rules) == c.source;
}

/// e is J-equivalent to path . core . path^-1.
struct ConjugacyReduction {
  TwoCell core;
  TwoCell path;
};

namespace detail {

inline bool cyclic_strip(ConjugacyReduction& r, RuleView rules) {
  bool any = false;
  auto& steps = r.core.steps;
  while (steps.size() >= 2 && is_inverse_pair(steps.front(), steps.back())) {
    r.path.steps.push_back(steps.front());
    r.core.source = step_target(steps.front(), rules);
    steps.pop_back();
    steps.erase(steps.begin());
    any = true;
  }
  return any;
}

// Starts the loop at its greatest visited word; ties go to the
// lexicographically smallest step sequence.
inline void canonical_rotation(ConjugacyReduction& r, RuleView rules) {
  const auto& steps = r.core.steps;
  const std::size_t n = steps.size();
  if (n == 0) {
    return;
  }
  auto words = trace(r.core, rules);
  auto rotated = [&](std::size_t k) {
    std::vector<Step> out(steps.begin() + static_cast<std::ptrdiff_t>(k),
                          steps.end());
    out.insert(out.end(), steps.begin(),
               steps.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
  };
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    auto c = compare(index_order(), words[k], words[best]);
    if (c == std::strong_ordering::greater ||
        (c == std::strong_ordering::equal && rotated(k) < rotated(best))) {
      best = k;
    }
  }
  if (best == 0) {
    return;
  }
  r.path.steps.insert(r.path.steps.end(), steps.begin(),
                      steps.begin() + static_cast<std::ptrdiff_t>(best));
  TwoCell next{words[best], rotated(best)};
  r.core = std::move(next);
}

// Leftmost reduction by every rule of the view, lowest index first.
inline TwoCell reduce_with(const Word& w, RuleView rules) {
  TwoCell out = identity(w);
  Word cur = w;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t pos = 0; pos < cur.size() && !again; ++pos) {
      for (RuleIndex r = 0; r < rules.size(); ++r) {
        if (occurs_at(cur, pos, rules[r].lhs)) {
          Step s = step_at(cur, pos, r, 1, rules);
          cur = step_target(s, rules);
          out.steps.push_back(std::move(s));
          again = true;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Cyclically reduces an endorewrite: free reduction, removal of outer
/// inverse pairs (moving the base word) and one canonical rotation, then
/// interchange normalization and stripping until the length stops falling.
/// The first phase depends only on the free conjugacy class, so conjugates
/// reduce to the same core.
///
/// Rotation is not repeated after normalization: interchange can move an
/// inverse step to the front, and rotating to the new greatest word would
/// then grow the base word forever.
///
/// All identities on one component are conjugate, so a trivial core is
/// based at the irreducible word reached by leftmost reduction.
inline ConjugacyReduction conjugacy_reduce_tracked(const TwoCell& e,
                                                   RuleView rules) {
  ConjugacyReduction r{free_reduce(e), identity(e.source)};
  detail::cyclic_strip(r, rules);
  detail::canonical_rotation(r, rules);
  while (true) {
    r.core = interchange_normalize(r.core, rules);
    if (!detail::cyclic_strip(r, rules)) {
      break;
    }
  }
  if (r.core.is_identity()) {
    TwoCell down = detail::reduce_with(r.core.source, rules);
    r.core = identity(target(down, rules));
    r.path = detail::append(std::move(r.path), down);
  }
  r.path = free_reduce(r.path);
  return r;
}

inline TwoCell conjugacy_reduce(const TwoCell& e, RuleView rules) {
  return conjugacy_reduce_tracked(e, rules).core;
}

struct DigraphEdge {
  Word from;
  Word to;
  Step step;

  friend bool operator==(const DigraphEdge&, const DigraphEdge&) = default;
};

struct ReductionDigraph {
  std::vector<Word> vertices;  // greatest first
  std::vector<DigraphEdge> edges;
  Word base;
};

struct FillResult {
  ReductionDigraph digraph;
  std::vector<TwoCell> diamonds;
};

/// Fills the region between two forward rewrite sequences with the same
/// endpoints. The greatest vertex with two different outgoing edges is
/// taken first; each consecutive pair of its edges is closed by reducing
/// both targets, which adds only smaller vertices.
inline FillResult digraph_fill(const TwoCell& a, const TwoCell& b,
                               const LoggedSystem& sys) {
  RuleView rules = sys.rules();
  if (a.source != b.source || target(a, rules) != target(b, rules)) {
    throw Error("digraph_fill needs two cells with the same endpoints");
  }
  for (const TwoCell* c : {&a, &b}) {
    for (const Step& s : c->steps) {
      if (s.exp != 1) {
        throw Error("digraph_fill needs forward rewrite sequences");
      }
    }
  }
  std::map<Word, std::set<Step>> out;
  auto add_path = [&](const TwoCell& c) {
    Word w = c.source;
    out[w];
    for (const Step& s : c.steps) {
      out[w].insert(s);
      w = step_target(s, rules);
      out[w];
    }
  };
  add_path(a);
  add_path(b);

  FillResult result;
  std::set<Word> processed;
  while (true) {
    const Word* pick = nullptr;
    for (const auto& [w, edges] : out) {
      if (edges.size() < 2 || processed.count(w) != 0) {
        continue;
      }
      if (pick == nullptr || greater(detail::index_order(), w, *pick)) {
        pick = &w;
      }
    }
    if (pick == nullptr) {
      break;
    }
    const Word v = *pick;
    processed.insert(v);
    const std::vector<Step> edges(out[v].begin(), out[v].end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      TwoCell left{v, {edges[i]}};
      TwoCell right{v, {edges[i + 1]}};
      TwoCell beta_l = reduce_logged(step_target(edges[i], rules), sys);
      TwoCell beta_r = reduce_logged(step_target(edges[i + 1], rules), sys);
      if (target(beta_l, rules) != target(beta_r, rules)) {
        throw Error("local pair does not resolve: the system is not complete");
      }
      add_path(detail::append(left, beta_l));
      add_path(detail::append(right, beta_r));
      TwoCell d = detail::append(detail::append(left, beta_l),
                                 invert(detail::append(right, beta_r), rules));
      result.diamonds.push_back(free_reduce(d));
    }
  }

  for (const auto& [w, edges] : out) {
    result.digraph.vertices.push_back(w);
    for (const Step& s : edges) {
      result.digraph.edges.push_back({w, step_target(s, rules), s});
    }
  }
  std::stable_sort(result.digraph.vertices.begin(),
                   result.digraph.vertices.end(),
                   [](const Word& x, const Word& y) {
                     return greater(detail::index_order(), x, y);
                   });
  result.digraph.base = result.digraph.vertices.front();
  return result;
}

/// A loop factor before matching against a generating set: either the
/// whiskered loop of an overlap, x delta(key) z, or a cell that is trivial
/// modulo interchange. Its contribution is conj . (x cell z)^exp . conj^-1.
struct RawFactor {
  std::optional<OverlapKey> key;
  Word x, z;
  TwoCell cell;  // only without a key
  TwoCell conjugator;
  int exp = 1;

  friend bool operator==(const RawFactor&, const RawFactor&) = default;
};

namespace detail {

inline void conjugate_all(std::vector<RawFactor>& fs, const TwoCell& path) {
  for (auto& f : fs) {
    f.conjugator = free_reduce(append(path, f.conjugator));
  }
}

inline std::vector<RawFactor> inverse_all(std::vector<RawFactor> fs) {
  std::reverse(fs.begin(), fs.end());
  for (auto& f : fs) {
    f.exp = -f.exp;
  }
  return fs;
}

template <class F>
bool cancels(const F& a, const F& b) {
  F c = b;
  c.exp = -c.exp;
  return a == c;
}

template <class F>
std::vector<F> cancel_adjacent(std::vector<F> fs) {
  std::vector<F> out;
  for (auto& f : fs) {
    if (!out.empty() && cancels(out.back(), f)) {
      out.pop_back();
    } else {
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace detail

/// Writes loops over a complete system as products of overlap loops and
/// interchange-trivial diamonds, by Noetherian induction on the base word.
///
/// With rho the logged reduction, every loop is a product of conjugates of
/// elementary loops c(t) = t . rho(y) . rho(x)^-1 for single forward steps
/// t : x -> y. Two forward steps t1, t2 out of x give
/// t1 . rho(y1) . rho(y2)^-1 . t2^-1, which is a diamond (disjoint case) or a
/// whiskered delta (overlap case) glued to elementary loops on smaller words.
class LoopFiller {
 public:
  explicit LoopFiller(const LoggedSystem& sys) : sys_(&sys) {}

  /// Factors whose product is `gamma` in the free groupoid on steps.
  std::vector<RawFactor> loop(const TwoCell& gamma) {
    RuleView rules = sys_->rules();
    TwoCell g = free_reduce(gamma);
    auto words = trace(g, rules);
    if (words.back() != g.source) {
      throw Error("not an endorewrite: source and target differ");
    }
    const TwoCell rho_w = rho(g.source);
    std::vector<RawFactor> out;
    for (std::size_t i = 0; i < g.steps.size(); ++i) {
      const Step& s = g.steps[i];
      TwoCell back = free_reduce(
          detail::append(rho_w, invert(rho(words[i]), rules)));
      std::vector<RawFactor> fs;
      if (s.exp > 0) {
        fs = elementary(s);
      } else {
        fs = detail::inverse_all(elementary(detail::inverse(s)));
        detail::conjugate_all(fs, TwoCell{words[i], {s}});
      }
      detail::conjugate_all(fs, back);
      out.insert(out.end(), fs.begin(), fs.end());
    }
    return detail::cancel_adjacent(std::move(out));
  }

  /// t1 . rho(y1) . rho(y2)^-1 . t2^-1 for forward steps out of one word.
  std::vector<RawFactor> pair_loop(const Step& t1, const Step& t2) {
    RuleView rules = sys_->rules();
    if (t1 == t2) {
      return {};
    }
    const Word x = step_source(t1, rules);
    if (detail::disjoint(t1, t2, rules)) {
      Step d1 = detail::carry_over(t2, t1, rules);
      Step d2 = detail::carry_over(t1, t2, rules);
      auto left = detail::inverse_all(elementary(d1));
      detail::conjugate_all(left, TwoCell{x, {t1}});
      auto right = elementary(d2);
      detail::conjugate_all(right, TwoCell{x, {t2}});
      RawFactor mid;
      mid.cell = diamond(t1, t2, rules);
      mid.conjugator = identity(x);
      left.push_back(std::move(mid));
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
    auto ov = overlap_between(x, Redex{t1.prefix.size(), t1.rule},
                              Redex{t2.prefix.size(), t2.rule}, rules);
    const std::size_t lo = std::min(t1.prefix.size(), t2.prefix.size());
    const Word& sup = ov->superposition;
    const Word X = subword(x, 0, lo);
    const Word Z = subword(x, lo + sup.size());
    const bool t1_left =
        ov->left_rule == t1.rule && ov->left_offset() == t1.prefix.size() - lo;

    Step left_s{ov->u1, ov->left_rule, 1, ov->v1};
    Step right_s{ov->u2, ov->right_rule, 1, ov->v2};
    TwoCell beta_l = rho(step_target(left_s, rules));
    TwoCell beta_r = rho(step_target(right_s, rules));
    if (target(beta_l, rules) != target(beta_r, rules)) {
      throw Error("critical pair does not resolve: the system is not complete");
    }
    TwoCell p1 = whisker(X, t1_left ? beta_l : beta_r, Z);
    TwoCell p2 = whisker(X, t1_left ? beta_r : beta_l, Z);

    auto out = detail::inverse_all(path_loop(p1));
    detail::conjugate_all(out, TwoCell{x, {t1}});
    RawFactor mid;
    mid.key = key_of(*ov);
    mid.x = X;
    mid.z = Z;
    mid.conjugator = identity(x);
    mid.exp = t1_left ? 1 : -1;
    out.push_back(std::move(mid));
    auto right = path_loop(p2);
    detail::conjugate_all(right, TwoCell{x, {t2}});
    out.insert(out.end(), right.begin(), right.end());
    return out;
  }

  const TwoCell& rho(const Word& w) {
    auto it = rho_.find(w);
    if (it == rho_.end()) {
      it = rho_.emplace(w, reduce_logged(w, *sys_)).first;
    }
    return it->second;
  }

 private:
  // c(t) = t . rho(y) . rho(x)^-1 for a forward step t : x -> y.
  std::vector<RawFactor> elementary(const Step& t) {
    if (auto it = elem_.find(t); it != elem_.end()) {
      return it->second;
    }
    const Word x = step_source(t, sys_->rules());
    const TwoCell& rx = rho(x);
    if (rx.steps.empty()) {
      throw Error("word is irreducible but a rule applies to it");
    }
    const Step first = rx.steps.front();
    std::vector<RawFactor> out;
    if (first != t) {
      out = pair_loop(t, first);
    }
    return elem_.emplace(t, std::move(out)).first->second;
  }

  // P . rho(end) . rho(start)^-1 for a forward path P.
  std::vector<RawFactor> path_loop(const TwoCell& p) {
    RuleView rules = sys_->rules();
    auto words = trace(p, rules);
    const TwoCell rho0 = rho(p.source);
    std::vector<RawFactor> out;
    for (std::size_t k = 0; k < p.steps.size(); ++k) {
      auto fs = elementary(p.steps[k]);
      TwoCell back =
          free_reduce(detail::append(rho0, invert(rho(words[k]), rules)));
      detail::conjugate_all(fs, back);
      out.insert(out.end(), fs.begin(), fs.end());
    }
    return out;
  }

  const LoggedSystem* sys_;
  std::map<Word, TwoCell> rho_;
  std::map<Step, std::vector<RawFactor>> elem_;
};

/// One factor of a decomposition: conjugator . (x g z)^exp . conjugator^-1,
/// where g is a generator or, for a trivial factor, the stored cell.
struct Factor {
  std::optional<std::size_t> generator;
  Word x, z;
  TwoCell conjugator;
  int exp = 1;
  std::optional<TwoCell> cell;

  bool trivial() const noexcept { return !generator.has_value(); }

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Decomposition {
  Word base;
  std::vector<Factor> factors;
};

struct Generator {
  std::string id;
  Overlap origin;
  TwoCell cell;
  Word base_element;

  const Word& base_word() const noexcept { return cell.source; }
};

/// Every overlap of the union system with its loop and the loop's
/// expression over the generators.
struct OriginEntry {
  Overlap overlap;
  TwoCell delta;
  Decomposition expression;
};

struct GeneratorSet {
  std::vector<Generator> generators;
  std::map<OverlapKey, OriginEntry> origins;
  std::size_t removed = 0;  // by minimization
};

struct GenerateOptions {
  bool minimize = false;
};

/// Normal form of the base word.
inline Word base_element(const TwoCell& e, const LoggedSystem& sys) {
  return normal_form(e.source, sys);
}

namespace detail {

// expr whiskered by (x, z), raised to exp and conjugated by conj.
inline std::vector<Factor> substitute(const Decomposition& expr, const Word& x,
                                      const Word& z, const TwoCell& conj,
                                      int exp) {
  std::vector<Factor> out;
  for (const Factor& f : expr.factors) {
    Factor n;
    n.generator = f.generator;
    n.x = concat(x, f.x);
    n.z = concat(f.z, z);
    n.conjugator = free_reduce(append(conj, whisker(x, f.conjugator, z)));
    n.exp = exp * f.exp;
    n.cell = f.cell;
    out.push_back(std::move(n));
  }
  if (exp < 0) {
    std::reverse(out.begin(), out.end());
  }
  return out;
}

inline std::vector<Factor> resolve_raw(
    const std::vector<RawFactor>& raw,
    const std::map<OverlapKey, OriginEntry>& origins) {
  std::vector<Factor> out;
  for (const RawFactor& r : raw) {
    if (!r.key) {
      out.push_back(Factor{std::nullopt, r.x, r.z, r.conjugator, r.exp, r.cell});
      continue;
    }
    auto it = origins.find(*r.key);
    if (it == origins.end()) {
      throw Error("unmatched diamond: no generator for overlap of rules " +
                  std::to_string(r.key->left_rule + 1) + " and " +
                  std::to_string(r.key->right_rule + 1));
    }
    auto fs = substitute(it->second.expression, r.x, r.z, r.conjugator, r.exp);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return cancel_adjacent(std::move(out));
}

inline bool references(const Decomposition& d, std::size_t g) {
  return std::any_of(d.factors.begin(), d.factors.end(),
                     [g](const Factor& f) { return f.generator == g; });
}

// Replaces every factor on generator g by g's expression.
inline void eliminate(Decomposition& d, std::size_t g,
                      const Decomposition& expr) {
  std::vector<Factor> out;
  for (const Factor& f : d.factors) {
    if (f.generator != g) {
      out.push_back(f);
      continue;
    }
    auto fs = substitute(expr, f.x, f.z, f.conjugator, f.exp);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  d.factors = cancel_adjacent(std::move(out));
}

// Rank over the rationals.
inline std::size_t rank(std::vector<std::vector<double>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (std::abs(rows[i][c]) > std::abs(rows[pivot][c])) {
        pivot = i;
      }
    }
    if (std::abs(rows[pivot][c]) < 1e-9) {
      continue;
    }
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) {
        continue;
      }
      const double k = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) {
        rows[i][j] -= k * rows[r][j];
      }
    }
    ++r;
  }
  return r;
}

}  // namespace detail

/// Rules taking part in generation: the active ones plus all initial ones.
inline std::vector<RuleIndex> union_rules(const LoggedSystem& sys) {
  std::vector<RuleIndex> out;
  for (RuleIndex r = 0; r < sys.size(); ++r) {
    if (sys.active(r) || r < sys.initial_count()) {
      out.push_back(r);
    }
  }
  return out;
}

/// Loops of all overlaps of the union system. Identity loops (after
/// conjugacy reduction) are dropped and loops conjugate to an earlier one or
/// its inverse are merged into it. Generators are ordered by base element,
/// then by discovery.
///
/// With `minimize`, a generator whose superposition has a third redex c is
/// split as loop(a, c) . loop(c, b) and dropped if that product avoids it.
/// This is a heuristic; the result need not be minimal.
inline GeneratorSet generate(const LoggedSystem& sys,
                             const GenerateOptions& options = {}) {
  if (!sys.complete()) {
    throw Error("generating endorewrites needs a complete system");
  }
  RuleView rules = sys.rules();
  const auto used = union_rules(sys);
  std::vector<Overlap> overlaps;
  for (std::size_t i = 0; i < used.size(); ++i) {
    for (std::size_t j = i; j < used.size(); ++j) {
      auto found = find_overlaps(used[i], used[j], rules);
      overlaps.insert(overlaps.end(), found.begin(), found.end());
    }
  }

  struct Candidate {
    Overlap origin;
    TwoCell cell;
    ConjugacyReduction forward;
    ConjugacyReduction backward;
  };
  std::vector<Candidate> found;
  std::map<OverlapKey, OriginEntry> origins;

  for (const Overlap& o : overlaps) {
    OriginEntry entry;
    entry.overlap = o;
    entry.delta = delta(critical_pair(o), sys);
    entry.expression.base = o.superposition;
    auto fwd = conjugacy_reduce_tracked(entry.delta, rules);
    if (fwd.core.is_identity()) {
      entry.expression.factors.push_back(
          Factor{std::nullopt, {}, {}, identity(o.superposition), 1,
                 entry.delta});
      origins.emplace(key_of(o), std::move(entry));
      continue;
    }
    std::optional<Factor> alias;
    for (std::size_t h = 0; h < found.size() && !alias; ++h) {
      const Candidate& c = found[h];
      if (fwd.core == c.forward.core) {
        alias = Factor{h, {}, {},
                       free_reduce(detail::append(
                           fwd.path, invert(c.forward.path, rules))),
                       1, std::nullopt};
      } else if (fwd.core == c.backward.core) {
        alias = Factor{h, {}, {},
                       free_reduce(detail::append(
                           fwd.path, invert(c.backward.path, rules))),
                       -1, std::nullopt};
      }
    }
    if (alias) {
      entry.expression.factors.push_back(std::move(*alias));
    } else {
      entry.expression.factors.push_back(
          Factor{found.size(), {}, {}, identity(o.superposition), 1,
                 std::nullopt});
      found.push_back({o, entry.delta, std::move(fwd),
                       conjugacy_reduce_tracked(invert(entry.delta, rules),
                                                rules)});
    }
    origins.emplace(key_of(o), std::move(entry));
  }

  std::vector<bool> removed(found.size(), false);
  if (options.minimize) {
    LoopFiller filler(sys);
    auto abelian_rows = [&](std::optional<std::size_t> skip) {
      std::vector<std::vector<double>> rows;
      for (std::size_t h = 0; h < found.size(); ++h) {
        if (removed[h] || h == skip) {
          continue;
        }
        std::vector<double> row(sys.size(), 0.0);
        for (auto [r, n] : abelianize(found[h].cell)) {
          row[r] = static_cast<double>(n);
        }
        rows.push_back(std::move(row));
      }
      return rows;
    };
    for (std::size_t g = found.size(); g-- > 0;) {
      if (detail::rank(abelian_rows(std::nullopt)) !=
          detail::rank(abelian_rows(g))) {
        continue;
      }
      const Overlap& o = found[g].origin;
      const Word& sup = o.superposition;
      const Step a{o.u1, o.left_rule, 1, o.v1};
      const Step b{o.u2, o.right_rule, 1, o.v2};
      for (const Redex& r : find_redexes(sup, sys)) {
        Step c = step_at(sup, r.pos, r.rule, 1, rules);
        if (c == a || c == b) {
          continue;
        }
        auto raw = filler.pair_loop(a, c);
        auto rest = filler.pair_loop(c, b);
        raw.insert(raw.end(), rest.begin(), rest.end());
        Decomposition expr{sup, {}};
        try {
          expr.factors = detail::resolve_raw(raw, origins);
        } catch (const Error&) {
          continue;
        }
        if (detail::references(expr, g)) {
          continue;
        }
        removed[g] = true;
        for (auto& [key, entry] : origins) {
          if (detail::references(entry.expression, g)) {
            detail::eliminate(entry.expression, g, expr);
          }
        }
        break;
      }
    }
  }

  // Final order and ids.
  std::vector<std::size_t> order;
  std::vector<Word> elements(found.size());
  for (std::size_t h = 0; h < found.size(); ++h) {
    elements[h] = base_element(found[h].cell, sys);
    if (!removed[h]) {
      order.push_back(h);
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return compare(sys.order(), elements[x], elements[y]) ==
                            std::strong_ordering::less;
                   });
  std::vector<std::size_t> remap(found.size(), 0);
  GeneratorSet out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t h = order[k];
    remap[h] = k;
    out.generators.push_back(Generator{"g" + std::to_string(k + 1),
                                       found[h].origin, found[h].cell,
                                       elements[h]});
  }
  for (auto& [key, entry] : origins) {
    for (Factor& f : entry.expression.factors) {
      if (f.generator) {
        f.generator = remap[*f.generator];
      }
    }
  }
  out.origins = std::move(origins);
  out.removed = static_cast<std::size_t>(
      std::count(removed.begin(), removed.end(), true));
  return out;
}

/// Writes an endorewrite as a product of conjugated, whiskered generators
/// and interchange-trivial diamonds, at its own base word.
inline Decomposition express(const TwoCell& e, const GeneratorSet& gens,
                             const LoggedSystem& sys) {
  if (auto v = validate(e, sys.rules()); !v) {
    throw ChainError(*v.failed_step, v.reason);
  }
  LoopFiller filler(sys);
  Decomposition d{e.source, {}};
  d.factors = detail::resolve_raw(filler.loop(e), gens.origins);
  return d;
}

/// The product the decomposition stands for, as a cell on its base word.
inline TwoCell recompose(const Decomposition& d, const GeneratorSet& gens,
                         RuleView rules) {
  TwoCell out = identity(d.base);
  for (const Factor& f : d.factors) {
    const TwoCell& g =
        f.generator ? gens.generators.at(*f.generator).cell : f.cell.value();
    TwoCell piece = whisker(f.x, g, f.z);
    if (f.exp < 0) {
      piece = invert(piece, rules);
    }
    out = detail::append(std::move(out), f.conjugator);
    out = detail::append(std::move(out), piece);
    out = detail::append(std::move(out), invert(f.conjugator, rules));
  }
  return out;
}

struct ExpressCheck {
  bool valid = false;
  bool endpoints = false;
  bool abelian = false;
  bool exact = false;  // equal to e after free reduction alone
  TwoCell residual;    // conjugacy-reduced recomposition^-1 . e

  bool ok() const noexcept {
    return valid && endpoints && abelian && residual.is_identity();
  }
};

/// Replays a decomposition against the endorewrite it claims to express.
/// Abelianizations are compared over initial rules.
inline ExpressCheck check_decomposition(const TwoCell& e,
                                        const Decomposition& d,
                                        const GeneratorSet& gens,
                                        const LoggedSystem& sys) {
  RuleView rules = sys.rules();
  ExpressCheck out;
  TwoCell r = recompose(d, gens, rules);
  out.valid = validate(r, rules).ok();
  if (!out.valid) {
    return out;
  }
  out.endpoints = r.source == e.source && target(r, rules) == e.source;
  if (!out.endpoints) {
    return out;
  }
  LogExpander expander(sys);
  out.abelian = abelianize(expander.expand(r)) == abelianize(expander.expand(e));
  out.exact = free_reduce(r) == free_reduce(e);
  out.residual = out.exact ? identity(e.source)
                           : conjugacy_reduce(
                                 detail::append(invert(r, rules), e), rules);
  return out;
}

}  // namespace logrw
