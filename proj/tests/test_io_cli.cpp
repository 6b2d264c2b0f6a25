/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exco/cli.hpp"
#include "exco/io.hpp"

#include "oracles.hpp"

#include <fstream>
#include <sstream>

using namespace exco;
using nlohmann::json;

namespace {

const std::string kRoot = EXCO_SOURCE_DIR;

std::string fx(const std::string& rel) { return kRoot + "/fixtures/" + rel; }

struct Run {
  int code;
  std::string text;
  json report;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  json j;
  if (!out.str().empty()) j = json::parse(out.str());
  return {code, out.str(), j};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "exco_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("category files round-trip") {
  const json j = read_json_file(fx("chain3.cat.json"));
  const CategoryFile a = category_from_json(j);
  REQUIRE(check_category(*a.category).ok());
  const json back = category_to_json(*a.category);
  CHECK(category_to_json(*category_from_json(back).category) == back);
  CHECK(a.category->objects().size() == 3);
}

TEST_CASE("unknown keys are rejected") {
  json j = read_json_file(fx("chain3.cat.json"));
  j["colour"] = "blue";
  CHECK_THROWS_AS(static_cast<void>(category_from_json(j)), InputError);
  json d = read_json_file(fx("F0.doc.json"));
  d["extra"] = 1;
  CHECK_THROWS_AS(static_cast<void>(doctrine_from_json(d, kRoot + "/fixtures")), InputError);
}

TEST_CASE("doctrine files round-trip and agree with the builtins") {
  const Fixture f = load_doctrine(fx("F1.doc.json"));
  const json once = doctrine_to_json(f);
  const Fixture g = doctrine_from_json(once, kRoot + "/fixtures");
  CHECK(doctrine_to_json(g) == once);
  CHECK(check_primary(*f.doctrine).ok());

  const Fixture b = fixture_f1();
  for (ObjectId a : b.category->objects())
    CHECK(f.doctrine->fiber(a).size() == b.doctrine->fiber(a).size());
}

TEST_CASE("missing files and malformed JSON are input errors") {
  CHECK_THROWS_AS(static_cast<void>(read_json_file(fx("nope.json"))), InputError);
  const auto bad = scratch("bad.doc.json");
  write(bad, "{\"category\": ");
  CHECK_THROWS_AS(static_cast<void>(read_json_file(bad)), InputError);
  CHECK(run({"check", bad.string()}).code == cli::kInputError);
  CHECK(run({"check", fx("nope.doc.json")}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
}

TEST_CASE("check command") {
  const Run r = run({"check", "builtin:F2", "--primary", "--existential", "--elementary"});
  CHECK(r.code == cli::kPass);
  CHECK(r.report["schema_version"] == cli::kSchemaVersion);
  CHECK(r.report["status"] == "pass");

  const Run m = run({"check", fx("mutants/broken_functoriality.doc.json")});
  CHECK(m.code == cli::kViolation);
  const json& ce = m.report["first_counterexample"];
  CHECK(ce["law"] == "functoriality");
  CHECK(ce["counterexample"].contains("f"));
  CHECK(ce["counterexample"].contains("g"));
}

TEST_CASE("complete command on the one-object fixture keeps the fibers") {
  const auto out = scratch("f0.cmp.json");
  CHECK(run({"complete", fx("F0.doc.json"), "--out", out.string()}).code == cli::kPass);
  const json dump = read_json_file(out);
  const Fixture f = load_doctrine(fx("F0.doc.json"));
  const auto& c = *f.category;
  for (ObjectId a : c.objects())
    CHECK(dump["objects"][c.object_name(a)]["classes"].size() == f.doctrine->fiber(a).size());
}

TEST_CASE("complete command on the chain matches the oracle quotient") {
  const auto out = scratch("f1.cmp.json");
  REQUIRE(run({"complete", fx("F1.doc.json"), "--out", out.string()}).code == cli::kPass);
  const json dump = read_json_file(out);
  const Fixture f = load_doctrine(fx("F1.doc.json"));
  const Category& c = *f.category;
  for (ObjectId a : c.objects()) {
    const oracle::Quotient q = oracle::quotient(*f.doctrine, projection_class(c), a);
    const json& o = dump["objects"][c.object_name(a)];
    REQUIRE(o["classes"].size() == q.reps.size());
    std::vector<std::size_t> to_oracle;
    for (const json& cls : o["classes"]) {
      std::size_t found = q.reps.size();
      for (std::size_t i = 0; i < q.raw.size(); ++i) {
        const auto& p = q.raw[i];
        if (c.arrow_name(p.witness) == cls["witness"] &&
            f.doctrine->fiber(p.witness.src).name(p.payload) == cls["payload"])
          found = q.class_of[i];
      }
      REQUIRE(found < q.reps.size());
      to_oracle.push_back(found);
    }
    for (std::size_t x = 0; x < to_oracle.size(); ++x)
      for (std::size_t y = 0; y < to_oracle.size(); ++y) {
        CHECK((o["order"][x][y] == 1) == q.order[to_oracle[x]][to_oracle[y]]);
        CHECK(to_oracle[o["meet"][x][y].get<std::size_t>()] == q.meet[to_oracle[x]][to_oracle[y]]);
      }
  }
}

TEST_CASE("double completion of the powerset fixture is a resource error") {
  CHECK(run({"complete", "builtin:F2", "--twice"}).code == cli::kResourceError);
}

TEST_CASE("laws command") {
  CHECK(run({"laws", "builtin:F2", "--suite", "adjunction"}).code == cli::kPass);
  const Run kz = run({"laws", fx("F1.pair.json"), "--suite", "kz"});
  CHECK(kz.code == cli::kPass);
  REQUIRE(kz.report["result"].contains("uniqueness"));
  for (const json& u : kz.report["result"]["uniqueness"]) CHECK(u["satisfying_all"] == 1);
  const Run top = run({"laws", "builtin:F2", "--suite", "algebra", "--action", "top"});
  CHECK(top.code == cli::kViolation);
  CHECK(top.report["first_counterexample"]["law"] == "algebra unit");
  CHECK(run({"laws", "builtin:F2", "--suite", "nonsense"}).code == cli::kInputError);
}

TEST_CASE("cq command") {
  const Run yes = run({"cq", fx("cq/graph.sig.json"), fx("cq/contained.query.json")});
  CHECK(yes.code == cli::kPass);
  CHECK(yes.report["result"]["contained"] == true);
  CHECK(yes.report["result"].contains("witness"));
  const Run no = run({"cq", fx("cq/graph.sig.json"), fx("cq/reverse.query.json")});
  CHECK(no.code == cli::kPass);
  CHECK(no.report["result"]["contained"] == false);
  CHECK(no.report["result"]["countermodel"]["relations"]["E"] == json::parse("[[0,1]]"));
  const Run bad = run({"cq", fx("cq/graph.sig.json"), fx("cq/bad_syntax.query.json")});
  CHECK(bad.code == cli::kInputError);
  CHECK(bad.report["error"].get<std::string>().find("at position") != std::string::npos);
  CHECK(run({"cq", fx("cq/unary.sig.json"), "--compare-completion", fx("cq/tiny.bounds.json")})
            .code == cli::kPass);
}

TEST_CASE("exact command") {
  const auto out = scratch("diag.xct.json");
  const Run ok = run({"exact", "builtin:F2", fx("diagonal.per.json"), "--verify-laws", "--out",
                      out.string()});
  CHECK(ok.code == cli::kPass);
  const json dump = read_json_file(out);
  CHECK(dump["objects"].size() == 2);
  CHECK_FALSE(dump["composition"].empty());
  const Run sym = run({"exact", "builtin:F2", fx("mutants/non_symmetric.per.json")});
  CHECK(sym.code == cli::kViolation);
  CHECK(sym.report["first_counterexample"]["law"] == "object clause 1");
  CHECK(run({"exact", "builtin:F2", fx("diagonal.per.json"), "--verify-laws", "--budget", "0"})
            .code == cli::kResourceError);
}

TEST_CASE("reports replay and are deterministic") {
  const std::vector<std::string> args{"check", fx("mutants/broken_frobenius.doc.json")};
  const Run first = run(args);
  const Run second = run(args);
  CHECK(first.code == cli::kViolation);
  CHECK(first.text == second.text);
  const auto saved = scratch("frobenius.report.json");
  write(saved, first.text);
  const Run replay = run({"--replay", saved.string()});
  CHECK(replay.code == cli::kViolation);
  CHECK(replay.report["reproduced"] == true);
}
