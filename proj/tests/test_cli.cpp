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

#include <sstream>

#include "logrw/cli.hpp"
#include "oracles.hpp"

using namespace logrw;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return oracle::data_path(name); }

}  // namespace

TEST_CASE("complete reports status through the exit code", "[cli]") {
  Run ok = run({"complete", data("order8.pres")});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("status: complete after 1 pass") != std::string::npos);

  Run ab = run({"complete", "--json", data("ab.pres")});
  CHECK(ab.code == cli::kOk);
  json j = json::parse(ab.out);
  CHECK(j["rules"].size() == 4);

  Run limit = run({"complete", "--limits", "5,3,10",
                   data("nonterminating.pres")});
  CHECK(limit.code == cli::kLimit);
  CHECK(limit.out.find("pending critical pairs") != std::string::npos);

  Run flags = run({"complete", "--max-rules", "3", data("nonterminating.pres")});
  CHECK(flags.code == cli::kLimit);

  CHECK(run({"complete", "--limits", "5,3", data("ab.pres")}).code ==
        cli::kUsage);
  CHECK(run({"complete", "missing.pres"}).code == cli::kUsage);
  CHECK(run({"complete"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate", data("ab.pres")}).code == cli::kUsage);
}

TEST_CASE("reduce, nf and prove", "[cli]") {
  Run r = run({"reduce", data("order8.pres"), "s s s e"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "s e\nlog: (r2) e\n");

  Run nf = run({"nf", "--json", data("order8.pres"), "s s s e", "e e"});
  CHECK(nf.code == cli::kOk);
  json j = json::parse(nf.out);
  CHECK(j[0]["normal_form"] == "s e");
  CHECK(j[1]["normal_form"] == "e");

  Run eq = run({"prove", data("order8.pres"), "s s s e", "s e"});
  CHECK(eq.code == cli::kOk);
  CHECK(eq.out == "equal\nwitness: (r2) e\n");

  Run ne = run({"prove", data("order8.pres"), "e", "s"});
  CHECK(ne.code == cli::kNotEqual);

  CHECK(run({"prove", data("order8.pres"), "e", "x"}).code == cli::kUsage);
  CHECK(run({"prove", "--limits", "5,3,10", data("nonterminating.pres"), "a",
             "b"})
            .code == cli::kLimit);
}

TEST_CASE("verify replays certificates", "[cli]") {
  std::string pres = data("order8.pres");
  for (const auto& line : oracle::lines("order8_endorewrites.txt")) {
    INFO(line);
    CHECK(run({"verify", "--endo", pres, line}).code == cli::kOk);
  }
  Run proof = run({"prove", "--json", "--expand", data("ab.pres"), "b b",
                   "b"});
  REQUIRE(proof.code == cli::kOk);
  CHECK(run({"verify", "--source", "b b", "--target", "b", data("ab.pres"),
             proof.out})
            .code == cli::kOk);
  CHECK(run({"verify", "--target", "a", data("ab.pres"), proof.out}).code ==
        cli::kInvalid);

  Run derived = run({"prove", "--json", data("ab.pres"), "b b", "b"});
  REQUIRE(derived.code == cli::kOk);
  CHECK(run({"verify", data("ab.pres"), derived.out}).code == cli::kInvalid);
  CHECK(run({"verify", "--expand", data("ab.pres"), derived.out}).code ==
        cli::kOk);

  Run bad = run({"verify", pres, "(r2)e . (r3^-1)"});
  CHECK(bad.code == cli::kInvalid);
  CHECK(bad.err.find("step 1") != std::string::npos);
  CHECK(run({"verify", "--endo", pres, "(r2)e"}).code == cli::kInvalid);
  CHECK(run({"verify", pres, "{\"source\": 3}"}).code == cli::kInvalid);
  CHECK(run({"verify", pres, "no-such-file.json"}).code == cli::kUsage);
}

TEST_CASE("endos and express", "[cli]") {
  std::string pres = data("order8.pres");
  Run endos = run({"endos", pres});
  CHECK(endos.code == cli::kOk);
  CHECK(endos.out.find("28 generators") != std::string::npos);

  Run small = run({"endos", "--minimize", "--json", pres});
  CHECK(small.code == cli::kOk);
  CHECK(json::parse(small.out)["generators"].size() < 28);

  Run ex = run({"express", "--json", pres, "(r2)se . ss(r3^-1)"});
  CHECK(ex.code == cli::kOk);
  json j = json::parse(ex.out);
  CHECK(j["base"] == "s s s s e");
  CHECK(j["check"]["residual"]["steps"].empty());

  CHECK(run({"express", pres, "(r2)e"}).code == cli::kInvalid);
  CHECK(run({"express", pres, "(r2)e . (r3)"}).code == cli::kInvalid);
  CHECK(run({"endos", data("free.pres")}).out == "0 generators\n");
  CHECK(run({"endos", "--limits", "5,3,10", data("nonterminating.pres")})
            .code == cli::kLimit);
}
