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

// The logrw command line. run() is the whole program; main() only forwards
// argv, which keeps every command testable in-process.

#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logrw/completion.hpp"
#include "logrw/endorewrites.hpp"
#include "logrw/engine.hpp"
#include "logrw/io.hpp"
#include "logrw/presentation.hpp"

namespace logrw::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kLimit = 2,
  kNotEqual = 3,
  kInvalid = 4,
};

namespace detail {

// Raised inside commands to leave with a given status.
struct Exit {
  int code;
  std::string message;
};

inline std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) {
    throw Exit{kUsage, "cannot open '" + path + "'"};
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline Presentation load(const std::string& path) {
  std::string text = read_text(path);
  try {
    return parse_presentation(text);
  } catch (const ParseError& e) {
    throw Exit{kUsage, path + ": " + e.what()};
  }
}

inline Word word_arg(const std::string& text, const Alphabet& a) {
  try {
    return parse_word(text, a);
  } catch (const Error& e) {
    throw Exit{kUsage, e.what()};
  }
}

// A certificate argument: inline JSON, a file, or "-" for stdin. The text is
// a TwoCell record (optionally under "witness" or "cell") or cell notation.
inline TwoCell load_cell(const std::string& arg, const Alphabet& a,
                         RuleView rules) {
  std::string text = arg;
  std::string trimmed = logrw::detail::trim(arg);
  if (trimmed.empty() || (trimmed.front() != '{' && trimmed.find('(') ==
                                                        std::string::npos)) {
    text = read_text(arg);
  }
  text = logrw::detail::trim(text);
  try {
    if (!text.empty() && text.front() == '{') {
      json j = json::parse(text);
      if (j.contains("witness")) {
        return cell_from_json(j.at("witness"), a, rules);
      }
      if (j.contains("cell")) {
        return cell_from_json(j.at("cell"), a, rules);
      }
      return cell_from_json(j, a, rules);
    }
    return parse_cell(text, a, rules);
  } catch (const json::exception& e) {
    throw Exit{kInvalid, std::string("malformed certificate: ") + e.what()};
  } catch (const Error& e) {
    throw Exit{kInvalid, std::string("malformed certificate: ") + e.what()};
  }
}

struct Common {
  bool json = false;
  bool interreduce = false;
  bool minimize = false;
  bool expand = false;
  std::string limits;
  CompletionLimits parsed;
};

inline CompletionLimits parse_limits(const Common& c) {
  CompletionLimits l = c.parsed;
  if (c.limits.empty()) {
    return l;
  }
  std::vector<std::size_t> v;
  std::stringstream ss(c.limits);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      v.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw Exit{kUsage, "--limits expects R,P,L"};
    }
  }
  if (v.size() != 3) {
    throw Exit{kUsage, "--limits expects R,P,L"};
  }
  l.max_rules = v[0];
  l.max_passes = v[1];
  l.max_word_length = v[2];
  return l;
}

inline CompletionResult run_completion(const Presentation& p, const Common& c,
                                       std::ostream& err) {
  std::vector<std::string> warnings;
  LoggedSystem init = LoggedSystem::from_presentation(p, &warnings);
  for (const auto& w : warnings) {
    err << "warning: " << w << '\n';
  }
  CompletionResult r = logged_knuth_bendix(std::move(init), parse_limits(c));
  if (r.complete() && c.interreduce) {
    r.system = interreduce(r.system);
  }
  return r;
}

// Completion for commands that need a complete system.
inline LoggedSystem complete_or_exit(const Presentation& p, const Common& c,
                                     std::ostream& err) {
  CompletionResult r = run_completion(p, c, err);
  if (!r.complete()) {
    throw Exit{kLimit, "completion stopped at a limit after " +
                           std::to_string(r.system.size()) + " rules"};
  }
  return std::move(r.system);
}

inline void print_json(std::ostream& out, const json& j) {
  out << j.dump(2) << '\n';
}

inline int cmd_complete(const std::string& file, const Common& c,
                        std::ostream& out, std::ostream& err) {
  Presentation p = load(file);
  CompletionResult r = run_completion(p, c, err);
  const LoggedSystem& sys = r.system;
  if (c.json) {
    print_json(out, to_json(sys, r.complete(), r.pending, c.expand));
  } else {
    LogExpander expander(sys);
    for (RuleIndex i = 0; i < sys.size(); ++i) {
      const Rule& rule = sys.rule(i);
      out << rule.id << ": " << to_string(rule.lhs, sys.alphabet()) << " -> "
          << to_string(rule.rhs, sys.alphabet()) << "  ("
          << provenance_name(sys.provenance(i))
          << (sys.active(i) ? "" : ", inactive") << ")\n";
      if (sys.log(i)) {
        const TwoCell& log = c.expand ? expander.rule_log(i) : *sys.log(i);
        out << "    log: " << format_cell(log, sys.alphabet(), sys.rules())
            << '\n';
      }
    }
    out << "status: " << (r.complete() ? "complete" : "limit") << " after "
        << r.passes << (r.passes == 1 ? " pass" : " passes") << '\n';
    if (!r.pending.empty()) {
      out << "pending critical pairs: " << r.pending.size() << '\n';
    }
  }
  return r.complete() ? kOk : kLimit;
}

inline int cmd_reduce(const std::string& file, const std::string& word,
                      const Common& c, std::ostream& out, std::ostream& err) {
  Presentation p = load(file);
  LoggedSystem sys = complete_or_exit(p, c, err);
  Word w = word_arg(word, sys.alphabet());
  TwoCell log = reduce_logged(w, sys);
  if (c.expand) {
    log = expand_log(log, sys);
  }
  Word nf = target(log, sys.rules());
  if (c.json) {
    print_json(out, {{"word", to_string(w, sys.alphabet())},
                     {"normal_form", to_string(nf, sys.alphabet())},
                     {"log", to_json(log, sys.alphabet(), sys.rules())}});
  } else {
    out << to_string(nf, sys.alphabet()) << '\n'
        << "log: " << format_cell(log, sys.alphabet(), sys.rules()) << '\n';
  }
  return kOk;
}

inline int cmd_nf(const std::string& file,
                  const std::vector<std::string>& words, const Common& c,
                  std::ostream& out, std::ostream& err) {
  Presentation p = load(file);
  LoggedSystem sys = complete_or_exit(p, c, err);
  json arr = json::array();
  for (const auto& text : words) {
    Word w = word_arg(text, sys.alphabet());
    Word nf = normal_form(w, sys);
    if (c.json) {
      arr.push_back({{"word", to_string(w, sys.alphabet())},
                     {"normal_form", to_string(nf, sys.alphabet())}});
    } else {
      out << to_string(nf, sys.alphabet()) << '\n';
    }
  }
  if (c.json) {
    print_json(out, arr);
  }
  return kOk;
}

inline int cmd_prove(const std::string& file, const std::string& w1,
                     const std::string& w2, const Common& c,
                     std::ostream& out, std::ostream& err) {
  Presentation p = load(file);
  LoggedSystem sys = complete_or_exit(p, c, err);
  const Alphabet& a = sys.alphabet();
  ProofResult r = prove(word_arg(w1, a), word_arg(w2, a), sys);
  if (r.witness && c.expand) {
    r.witness = expand_log(*r.witness, sys);
  }
  const char* verdict = r.verdict == Verdict::Equal      ? "equal"
                        : r.verdict == Verdict::NotEqual ? "not_equal"
                                                         : "unknown";
  if (c.json) {
    json j = {{"verdict", verdict},
              {"normal_forms",
               {to_string(r.normal_form_1, a), to_string(r.normal_form_2, a)}}};
    if (r.witness) {
      j["witness"] = to_json(*r.witness, a, sys.rules());
    }
    print_json(out, j);
  } else {
    out << verdict << '\n';
    if (r.witness) {
      out << "witness: " << format_cell(*r.witness, a, sys.rules()) << '\n';
    } else {
      out << "normal forms: " << to_string(r.normal_form_1, a) << " and "
          << to_string(r.normal_form_2, a) << '\n';
    }
  }
  return r.verdict == Verdict::Equal ? kOk : kNotEqual;
}

struct VerifyOptions {
  std::string source;
  std::string target;
  bool endo = false;
};

inline int cmd_verify(const std::string& file, const std::string& cert,
                      const VerifyOptions& v, const Common& c,
                      std::ostream& out, std::ostream& err) {
  Presentation p = load(file);
  // By default only the relations of the file are trusted. With --expand,
  // derived rules are allowed and replaced by their expanded logs first.
  LoggedSystem sys = c.expand ? complete_or_exit(p, c, err)
                              : LoggedSystem::from_presentation(p);
  const Alphabet& a = sys.alphabet();
  TwoCell cell = load_cell(cert, a, sys.rules());
  if (c.expand) {
    try {
      cell = expand_log(cell, sys);
    } catch (const Error& e) {
      throw Exit{kInvalid, std::string("invalid: ") + e.what()};
    }
  }
  RuleView rules(sys.rules().data(), sys.initial_count());
  ValidationResult r = validate(cell, rules);
  if (!r) {
    throw Exit{kInvalid, "invalid: step " + std::to_string(*r.failed_step) +
                             ": " + r.reason};
  }
  Word tgt = target(cell, rules);
  auto mismatch = [&](const char* which, const std::string& expected,
                      const Word& actual) {
    Word e = word_arg(expected, a);
    if (e != actual) {
      throw Exit{kInvalid, std::string("invalid: ") + which + " is " +
                               to_string(actual, a) + ", expected " +
                               to_string(e, a)};
    }
  };
  if (!v.source.empty()) {
    mismatch("source", v.source, cell.source);
  }
  if (!v.target.empty()) {
    mismatch("target", v.target, tgt);
  }
  if (v.endo && tgt != cell.source) {
    throw Exit{kInvalid, "invalid: not an endorewrite (" +
                             to_string(cell.source, a) + " -> " +
                             to_string(tgt, a) + ")"};
  }
  if (c.json) {
    print_json(out, {{"valid", true},
                     {"source", to_string(cell.source, a)},
                     {"target", to_string(tgt, a)},
                     {"steps", cell.steps.size()}});
  } else {
    out << "valid: " << to_string(cell.source, a) << " -> "
        << to_string(tgt, a) << " in " << cell.steps.size()
        << (cell.steps.size() == 1 ? " step" : " steps") << '\n';
  }
  return kOk;
}

inline int cmd_endos(const std::string& file, const Common& c,
                     std::ostream& out, std::ostream& err) {
  Presentation p = load(file);
  LoggedSystem sys = complete_or_exit(p, c, err);
  GeneratorSet gens = generate(sys, {c.minimize});
  if (c.json) {
    print_json(out, to_json(gens, sys));
  } else {
    out << format_generators(gens, sys);
    out << gens.generators.size() << " generators";
    if (c.minimize) {
      out << " (" << gens.removed << " removed)";
    }
    out << '\n';
  }
  return kOk;
}

inline int cmd_express(const std::string& file, const std::string& cell_arg,
                       const Common& c, std::ostream& out,
                       std::ostream& err) {
  Presentation p = load(file);
  LoggedSystem sys = complete_or_exit(p, c, err);
  const Alphabet& a = sys.alphabet();
  RuleView rules = sys.rules();
  TwoCell e = load_cell(cell_arg, a, rules);
  if (auto r = validate(e, rules); !r) {
    throw Exit{kInvalid, "invalid: step " + std::to_string(*r.failed_step) +
                             ": " + r.reason};
  }
  if (target(e, rules) != e.source) {
    throw Exit{kInvalid, "invalid: not an endorewrite"};
  }
  GeneratorSet gens = generate(sys, {c.minimize});
  Decomposition d = express(e, gens, sys);
  ExpressCheck check = check_decomposition(e, d, gens, sys);
  if (c.json) {
    json j = to_json(d, gens, sys);
    j["check"] = {{"abelian", check.abelian},
                  {"exact", check.exact},
                  {"residual", to_json(check.residual, a, rules)}};
    print_json(out, j);
  } else {
    out << "base: " << to_string(d.base, a) << '\n';
    for (const Factor& f : d.factors) {
      out << "  "
          << (f.generator ? gens.generators.at(*f.generator).id : "trivial")
          << (f.exp < 0 ? "^-1" : "") << "  x=" << to_string(f.x, a)
          << " z=" << to_string(f.z, a)
          << "  conjugator: " << format_cell(f.conjugator, a, rules) << '\n';
    }
    out << d.factors.size() << " factors; residual "
        << format_cell(check.residual, a, rules) << '\n';
  }
  if (!check.ok()) {
    err << "error: decomposition does not replay to the input\n";
    return kInvalid;
  }
  return kOk;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Logged string rewriting: completion, proofs, endorewrites",
               "logrw"};
  app.require_subcommand(1);
  detail::Common common;
  detail::VerifyOptions vopt;
  std::string file, w1, w2, cert;
  std::vector<std::string> words;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Emit JSON");
    sub->add_option("--limits", common.limits,
                    "Completion limits as MAX_RULES,MAX_PASSES,MAX_LENGTH");
    sub->add_option("--max-rules", common.parsed.max_rules);
    sub->add_option("--max-passes", common.parsed.max_passes);
    sub->add_option("--max-length", common.parsed.max_word_length);
    sub->add_flag("--interreduce", common.interreduce,
                  "Interreduce the completed system");
    sub->add_option("file", file, "Presentation file")->required();
  };

  auto* complete = app.add_subcommand("complete", "Run logged completion");
  add_common(complete);
  complete->add_flag("--expand", common.expand,
                     "Print logs over the initial rules only");

  auto* reduce = app.add_subcommand("reduce", "Reduce a word with its log");
  add_common(reduce);
  reduce->add_option("word", w1)->required();
  reduce->add_flag("--expand", common.expand);

  auto* nf = app.add_subcommand("nf", "Normal forms of words");
  add_common(nf);
  nf->add_option("words", words)->required();

  auto* prv = app.add_subcommand("prove", "Decide w1 = w2 with a witness");
  add_common(prv);
  prv->add_option("w1", w1)->required();
  prv->add_option("w2", w2)->required();
  prv->add_flag("--expand", common.expand,
                "Witness over the initial rules only");

  auto* verify = app.add_subcommand("verify", "Replay a certificate");
  add_common(verify);
  verify->add_option("certificate", cert,
                     "JSON or cell notation, inline, a file, or -")
      ->required();
  verify->add_option("--source", vopt.source, "Expected source word");
  verify->add_option("--target", vopt.target, "Expected target word");
  verify->add_flag("--endo", vopt.endo, "Require source = target");
  verify->add_flag("--expand", common.expand,
                   "Accept derived rules, expanding them first");

  auto* endos = app.add_subcommand("endos", "Generating endorewrites");
  add_common(endos);
  endos->add_flag("--minimize", common.minimize,
                  "Drop generators expressible by the others (heuristic)");

  auto* expr = app.add_subcommand("express",
                                  "Write an endorewrite in the generators");
  add_common(expr);
  expr->add_option("endorewrite", cert,
                   "JSON or cell notation, inline, a file, or -")
      ->required();
  expr->add_flag("--minimize", common.minimize);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (complete->parsed()) {
      return detail::cmd_complete(file, common, out, err);
    }
    if (reduce->parsed()) {
      return detail::cmd_reduce(file, w1, common, out, err);
    }
    if (nf->parsed()) {
      return detail::cmd_nf(file, words, common, out, err);
    }
    if (prv->parsed()) {
      return detail::cmd_prove(file, w1, w2, common, out, err);
    }
    if (verify->parsed()) {
      return detail::cmd_verify(file, cert, vopt, common, out, err);
    }
    if (endos->parsed()) {
      return detail::cmd_endos(file, common, out, err);
    }
    if (expr->parsed()) {
      return detail::cmd_express(file, cert, common, out, err);
    }
  } catch (const detail::Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace logrw::cli
