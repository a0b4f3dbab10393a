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

// JSON records and the compact text notation for cells.
//
// Cells print as steps joined by " . ", each step as prefix (rule) suffix:
//
//     (r2) e . s (r3^-1)
//
// The parser also accepts runs of letters without spaces, e.g. "(r2)e.s(r3^-1)".

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "logrw/completion.hpp"
#include "logrw/endorewrites.hpp"
#include "logrw/engine.hpp"
#include "logrw/twocell.hpp"
#include "logrw/word.hpp"

namespace logrw {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string rule_id(RuleIndex r, RuleView rules) {
  if (r >= rules.size()) {
    throw Error("no rule with index " + std::to_string(r));
  }
  return rules[r].id;
}

inline RuleIndex rule_by_id(std::string_view id, RuleView rules) {
  for (RuleIndex r = 0; r < rules.size(); ++r) {
    if (rules[r].id == id) {
      return r;
    }
  }
  throw Error("unknown rule '" + std::string(id) + "'");
}

inline std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

inline Word word_field(const json& j, const char* name,
                       const Alphabet& alphabet) {
  const json& v = field(j, name);
  if (!v.is_string()) {
    throw Error(std::string("field '") + name + "' must be a string");
  }
  return parse_word(v.get<std::string>(), alphabet);
}

}  // namespace detail

inline json to_json(const TwoCell& c, const Alphabet& alphabet,
                    RuleView rules) {
  json steps = json::array();
  for (const Step& s : c.steps) {
    steps.push_back({{"prefix", to_string(s.prefix, alphabet)},
                     {"rule", detail::rule_id(s.rule, rules)},
                     {"exp", s.exp},
                     {"suffix", to_string(s.suffix, alphabet)}});
  }
  return {{"source", to_string(c.source, alphabet)}, {"steps", steps}};
}

/// Reads a TwoCell record. Rule ids are resolved against `rules`; the cell is
/// not validated.
inline TwoCell cell_from_json(const json& j, const Alphabet& alphabet,
                              RuleView rules) {
  TwoCell c;
  c.source = detail::word_field(j, "source", alphabet);
  const json& steps = detail::field(j, "steps");
  if (!steps.is_array()) {
    throw Error("field 'steps' must be an array");
  }
  for (const json& s : steps) {
    Step step;
    step.prefix = detail::word_field(s, "prefix", alphabet);
    step.suffix = detail::word_field(s, "suffix", alphabet);
    const json& rule = detail::field(s, "rule");
    if (!rule.is_string()) {
      throw Error("field 'rule' must be a string");
    }
    step.rule = detail::rule_by_id(rule.get<std::string>(), rules);
    const json& exp = detail::field(s, "exp");
    if (!exp.is_number_integer() ||
        (exp.get<int>() != 1 && exp.get<int>() != -1)) {
      throw Error("field 'exp' must be 1 or -1");
    }
    step.exp = exp.get<int>();
    c.steps.push_back(std::move(step));
  }
  return c;
}

inline std::string format_step(const Step& s, const Alphabet& alphabet,
                               RuleView rules) {
  std::string out;
  if (!s.prefix.empty()) {
    out += to_string(s.prefix, alphabet) + ' ';
  }
  out += '(' + detail::rule_id(s.rule, rules) + (s.exp < 0 ? "^-1" : "") + ')';
  if (!s.suffix.empty()) {
    out += ' ' + to_string(s.suffix, alphabet);
  }
  return out;
}

/// Compact notation; identities print as "1_<word>".
inline std::string format_cell(const TwoCell& c, const Alphabet& alphabet,
                               RuleView rules) {
  if (c.steps.empty()) {
    return "1_" + to_string(c.source, alphabet);
  }
  std::string out;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    if (i != 0) {
      out += " . ";
    }
    out += format_step(c.steps[i], alphabet, rules);
  }
  return out;
}

/// Inverse of format_cell. The source is the input side of the first step.
inline TwoCell parse_cell(std::string_view text, const Alphabet& alphabet,
                          RuleView rules) {
  std::string t = detail::trim(text);
  if (t.rfind("1_", 0) == 0) {
    return identity(parse_word(t.substr(2), alphabet));
  }
  TwoCell c;
  std::size_t start = 0;
  while (start <= t.size()) {
    std::size_t dot = t.find('.', start);
    std::string part = detail::trim(
        t.substr(start, dot == std::string::npos ? std::string::npos
                                                 : dot - start));
    std::size_t open = part.find('(');
    std::size_t close = part.find(')');
    if (open == std::string::npos || close == std::string::npos ||
        close < open) {
      throw Error("expected '(rule)' in step '" + part + "'");
    }
    std::string inner = detail::trim(part.substr(open + 1, close - open - 1));
    Step s;
    if (inner.size() > 3 && inner.compare(inner.size() - 3, 3, "^-1") == 0) {
      s.exp = -1;
      inner = detail::trim(inner.substr(0, inner.size() - 3));
    }
    s.rule = detail::rule_by_id(inner, rules);
    s.prefix = parse_word(part.substr(0, open), alphabet);
    s.suffix = parse_word(part.substr(close + 1), alphabet);
    c.steps.push_back(std::move(s));
    if (dot == std::string::npos) {
      break;
    }
    start = dot + 1;
  }
  c.source = step_source(c.steps.front(), rules);
  return c;
}

inline const char* provenance_name(Provenance p) {
  return p == Provenance::Initial ? "initial" : "derived";
}

/// Completed-system record. Extra fields: "active" per rule and the pending
/// critical pairs of an interrupted run.
inline json to_json(const LoggedSystem& sys, bool complete,
                    const std::vector<CriticalPair>& pending = {},
                    bool expand = false) {
  const Alphabet& a = sys.alphabet();
  RuleView rules = sys.rules();
  LogExpander expander(sys);
  json rs = json::array();
  for (RuleIndex r = 0; r < sys.size(); ++r) {
    json entry = {{"id", rules[r].id},
                  {"lhs", to_string(rules[r].lhs, a)},
                  {"rhs", to_string(rules[r].rhs, a)},
                  {"provenance", provenance_name(sys.provenance(r))}};
    if (sys.provenance(r) == Provenance::Initial) {
      entry["log"] = nullptr;
    } else {
      entry["log"] = to_json(expand ? expander.rule_log(r) : *sys.log(r), a,
                             rules);
    }
    entry["active"] = sys.active(r);
    rs.push_back(std::move(entry));
  }
  json out = {{"rules", rs}, {"status", complete ? "complete" : "limit"}};
  if (!pending.empty()) {
    json ps = json::array();
    for (const auto& cp : pending) {
      ps.push_back({{"left", to_json(cp.left, a, rules)},
                    {"right", to_json(cp.right, a, rules)}});
    }
    out["pending"] = std::move(ps);
  }
  return out;
}

inline json to_json(const Overlap& o, const Alphabet& a, RuleView rules) {
  return {{"left_rule", rules[o.left_rule].id},
          {"right_rule", rules[o.right_rule].id},
          {"case", case_name(o.kind)},
          {"u1", to_string(o.u1, a)},
          {"v1", to_string(o.v1, a)},
          {"u2", to_string(o.u2, a)},
          {"v2", to_string(o.v2, a)}};
}

inline json to_json(const GeneratorSet& gens, const LoggedSystem& sys) {
  const Alphabet& a = sys.alphabet();
  RuleView rules = sys.rules();
  json gs = json::array();
  for (const Generator& g : gens.generators) {
    gs.push_back({{"id", g.id},
                  {"base_word", to_string(g.base_word(), a)},
                  {"base_element", to_string(g.base_element, a)},
                  {"origin", to_json(g.origin, a, rules)},
                  {"cell", to_json(g.cell, a, rules)}});
  }
  return {{"generators", gs}};
}

inline json to_json(const Decomposition& d, const GeneratorSet& gens,
                    const LoggedSystem& sys) {
  const Alphabet& a = sys.alphabet();
  RuleView rules = sys.rules();
  json fs = json::array();
  for (const Factor& f : d.factors) {
    json entry = {
        {"gen", f.generator ? gens.generators.at(*f.generator).id : "trivial"},
        {"x", to_string(f.x, a)},
        {"z", to_string(f.z, a)},
        {"conjugator", to_json(f.conjugator, a, rules)},
        {"exp", f.exp}};
    if (f.cell) {
      entry["cell"] = to_json(*f.cell, a, rules);
    }
    fs.push_back(std::move(entry));
  }
  return {{"base", to_string(d.base, a)}, {"factors", fs}};
}

/// Generators grouped by base element, one "Endorewrites of <w>:" block per
/// element.
inline std::string format_generators(const GeneratorSet& gens,
                                     const LoggedSystem& sys) {
  const Alphabet& a = sys.alphabet();
  std::string out;
  const Word* current = nullptr;
  for (const Generator& g : gens.generators) {
    if (current == nullptr || *current != g.base_element) {
      current = &g.base_element;
      out += "Endorewrites of " + to_string(g.base_element, a) + ":\n";
    }
    out += "  " + g.id + " on " + to_string(g.base_word(), a) + ": " +
           format_cell(g.cell, a, sys.rules()) + '\n';
  }
  return out;
}

}  // namespace logrw
