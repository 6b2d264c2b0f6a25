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

#include "exco/cli.hpp"

#include "exco/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace exco::cli {

using nlohmann::json;

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::size_t budget = 0;  // 0: command default
  bool budget_given = false;
  std::string out;
  std::string replay;
  // check
  bool primary = false, elementary = false, existential = false;
  // complete
  std::string lambda = "projections";
  bool twice = false;
  // laws
  std::string suite;
  std::string action = "zeta";
  // cq
  std::string compare;
  // exact
  bool verify_laws = false;
  std::vector<std::string> inputs;
};

// Collects named checks; the first failure decides the exit code.
class Run {
 public:
  Run(std::string command, std::vector<std::string> args, std::ostream& err)
      : command_(std::move(command)), args_(std::move(args)), err_(err) {}

  bool add(const std::string& name, const Report& r) {
    json j = r.to_json();
    j["name"] = name;
    checks_.push_back(j);
    err_ << "  " << name << ": " << (r.ok() ? "pass" : "FAIL " + r.law + ": " + r.message)
         << "\n";
    if (!r.ok() && exit_ == kPass) exit_ = kViolation;
    return r.ok();
  }
  void set(const std::string& key, json value) { result_[key] = std::move(value); }
  void resource(const std::string& what) {
    checks_.push_back({{"name", "resource"}, {"status", "resource-error"}, {"message", what}});
    err_ << "  resource error: " << what << "\n";
    exit_ = kResourceError;
  }
  void input(const std::string& what) {
    error_ = what;
    err_ << "  input error: " << what << "\n";
    exit_ = kInputError;
  }
  [[nodiscard]] int exit_code() const { return exit_; }

  [[nodiscard]] json to_json() const {
    static const char* names[] = {"pass", "fail", "input-error", "resource-error"};
    json j{{"schema_version", kSchemaVersion},
           {"command", {{"name", command_}, {"args", args_}}},
           {"status", names[exit_]},
           {"exit_code", exit_},
           {"checks", checks_}};
    if (!result_.empty()) j["result"] = result_;
    if (!error_.empty()) j["error"] = error_;
    for (const auto& c : checks_)
      if (c.value("status", "") == "fail") {
        j["first_counterexample"] = c;
        break;
      }
    return j;
  }

 private:
  std::string command_;
  std::vector<std::string> args_;
  std::ostream& err_;
  json checks_ = json::array();
  json result_ = json::object();
  std::string error_;
  int exit_ = kPass;
};

void write_file(const std::string& path, const json& j) {
  std::ofstream o(path);
  if (!o) throw InputError("cannot write '" + path + "'");
  o << j.dump(2) << "\n";
}

ArrowClass lambda_option(const Options& o, const Fixture& f) {
  if (o.lambda == "projections") return f.exists.lambda;
  const json j = read_json_file(o.lambda);
  if (!j.is_array()) throw InputError("lambda file: expected a list of arrow names");
  std::set<Arrow> members;
  for (const auto& n : j) members.insert(f.category->arrow_by_name(n.get<std::string>()));
  return ArrowClass([members](const Arrow& g) { return members.count(g) > 0; }, "listed arrows");
}

void cmd_check(const Options& o, Run& run) {
  const Fixture f = load_doctrine(o.inputs.at(0));
  const bool all = !o.primary && !o.elementary && !o.existential;
  const Category& c = *f.category;
  if (!run.add("category", check_category(c))) return;
  if (!run.add("products", check_products(c))) return;
  if (all || o.primary)
    if (!run.add("primary", check_primary(*f.doctrine))) return;
  if (all || o.existential) {
    if (!run.add("lambda", check_arrow_class(c, f.exists.lambda))) return;
    if (!run.add("existential", check_existential(*f.doctrine, f.exists))) return;
  }
  if (o.elementary && !f.delta) throw InputError("doctrine has no equality predicates");
  if ((all || o.elementary) && f.delta) run.add("elementary", check_elementary(*f.doctrine, *f.delta));
}

void cmd_complete(const Options& o, Run& run) {
  const Fixture f = load_doctrine(o.inputs.at(0));
  const std::size_t budget = o.budget_given ? o.budget : kDefaultCompletionBudget;
  auto pe = complete(f.doctrine, lambda_option(o, f), budget);
  json sizes = json::object();
  for (ObjectId a : f.category->objects())
    sizes[f.category->object_name(a)] = pe->completion_fiber(a).size();
  run.set("classes", sizes);
  if (!run.add("completion", check_completion(*pe))) return;
  if (!run.add("primary", check_primary(*pe))) return;
  if (!run.add("existential", check_existential(*pe, pe->existential_structure()))) return;
  if (!o.out.empty()) write_file(o.out, completion_dump(*pe));
  if (o.twice) {
    auto pee = complete(pe, projection_class(*f.category), budget);
    json second = json::object();
    for (ObjectId a : f.category->objects())
      second[f.category->object_name(a)] = pee->completion_fiber(a).size();
    run.set("double_classes", second);
    run.add("double completion", check_completion(*pee));
  }
}

void laws_on_doctrine(const Options& o, const Fixture& f, Run& run, std::size_t budget) {
  auto pe = complete(f.doctrine, f.exists.lambda, budget);
  if (o.suite == "adjunction") {
    if (!run.add("zeta . iota = id", check_unit_counit(*pe, f.exists))) return;
    if (!run.add("zeta well-defined", check_counit_well_defined(*pe, f.exists))) return;
    if (!run.add("iota morphism", check_morphism(MorphismKind::Primary, unit(*pe)))) return;
    auto pee = complete(pe, f.exists.lambda, budget);
    run.add("eps . eta^e = id", check_triangle(*pe, *pee));
  } else if (o.suite == "monad") {
    auto pee = complete(pe, f.exists.lambda, budget);
    run.add("monad", check_monad_laws(*pe, *pee));
  } else if (o.suite == "algebra") {
    if (o.action == "zeta") {
      const DoctrineMorphism z = counit(*pe, f.exists);
      if (!run.add("algebra", check_algebra(*pe, z))) return;
      const ExistentialStructure back = existential_from_algebra(*pe, z);
      Report r;
      const Category& c = *f.category;
      for (const Arrow& g : f.exists.lambda.members(c)) {
        if (!c.is_listed(g.src) || !c.is_listed(g.tgt)) continue;
        for (Elem x : f.doctrine->elements(g.src))
          if (back.exists(g, x) != f.exists.exists(g, x) && r.ok())
            r = Report::fail("round trip", "extracted quantifier differs",
                             {{"arrow", c.arrow_name(g)}, {"element", f.doctrine->element_name(g.src, x)}});
      }
      run.add("round trip", r);
    } else if (o.action == "top") {
      run.add("algebra", check_algebra(*pe, constant_top_morphism(*pe, *f.doctrine)));
    } else {
      throw InputError("unknown action '" + o.action + "'");
    }
  } else if (o.suite == "kz") {
    auto pee = complete(pe, f.exists.lambda, budget);
    const KzResult k = check_kz_comparison(*pe, *pee);
    run.set("kz_checked", k.checked);
    run.set("kz_strict", k.strict);
    run.add("kz", k.report);
  } else if (o.suite == "elementary") {
    if (!f.delta) throw InputError("doctrine has no equality predicates");
    if (!run.add("elementary", check_elementary(*f.doctrine, *f.delta))) return;
    const ElementaryStructure de = elementary_completion(*pe, *f.delta);
    if (!run.add("elementary completion structure", check_elementary(*pe, de))) return;
    run.add("elementary completion identity", check_elementary_completion(*pe, *f.delta));
  } else {
    throw InputError("unknown suite '" + o.suite + "'");
  }
}

void cmd_laws(const Options& o, Run& run) {
  const std::size_t budget = o.budget_given ? o.budget : kDefaultCompletionBudget;
  const std::string& ref = o.inputs.at(0);
  if (ref.rfind("builtin:", 0) != 0) {
    const json j = read_json_file(ref);
    if (j.is_object() && j.contains("source")) {
      if (o.suite != "kz") throw InputError("pair files need --suite kz");
      const PairFile pf = pair_from_json(j, std::filesystem::path(ref).parent_path());
      auto ps = complete(pf.source.doctrine, pf.source.exists.lambda, budget);
      auto pt = pf.target.doctrine == pf.source.doctrine
                    ? ps
                    : complete(pf.target.doctrine, pf.target.exists.lambda, budget);
      json counts = json::array();
      for (const auto& [name, map] : pf.morphisms) {
        const DoctrineMorphism m = pair_morphism(*pf.source.doctrine, *pf.target.doctrine, map);
        const auto r = check_lax_idempotent_instance(*ps, pf.source.exists, *pt, pf.target.exists,
                                                     m, o.budget_given ? o.budget : 1u << 20);
        counts.push_back({{"morphism", name},
                          {"candidates", r.candidates},
                          {"satisfying_cell", r.satisfying_cell},
                          {"satisfying_all", r.satisfying_all}});
        run.add("lax " + name, r.report);
      }
      run.set("uniqueness", counts);
      auto pss = complete(ps, pf.source.exists.lambda, budget);
      run.add("kz", check_kz_comparison(*ps, *pss).report);
      return;
    }
  }
  laws_on_doctrine(o, load_doctrine(ref), run, budget);
}

json witness_json(const ExistentialFormula& lhs, const ExistentialFormula& rhs,
                  const std::vector<unsigned>& w) {
  json j = json::object();
  auto name = [](const ExistentialFormula& f, unsigned v) {
    return v < f.context.size() ? f.context[v] : "y" + std::to_string(v - f.context.size() + 1);
  };
  for (unsigned v = 0; v < w.size(); ++v) j[name(rhs, v)] = name(lhs, w[v]);
  return j;
}

void cmd_cq(const Options& o, Run& run) {
  const Signature sig = Signature::from_json(read_json_file(o.inputs.at(0)));
  if (!o.compare.empty()) {
    const json bj = o.compare.front() == '{' ? json::parse(o.compare) : read_json_file(o.compare);
    FragmentBounds b;
    b.signature = sig;
    b.seed = o.seed;
    for (const auto& [k, v] : bj.items()) {
      if (k == "max_context") b.max_context = v.get<unsigned>();
      else if (k == "max_bound") b.max_bound = v.get<unsigned>();
      else if (k == "max_atoms") b.max_atoms = v.get<unsigned>();
      else if (k == "sample") b.sample = v.get<std::size_t>();
      else throw InputError("bounds: unknown key '" + k + "'");
    }
    if (o.budget_given) b.budget = o.budget;
    const ComparisonResult r = compare_with_completion(b);
    run.set("formulas", r.formulas);
    run.set("pairs", r.pairs);
    run.set("contained", r.contained);
    run.set("classes", r.classes);
    run.add("completion vs containment", r.report);
    return;
  }
  if (o.inputs.size() < 2) throw InputError("cq needs a query file or --compare-completion");
  const Query q = query_from_json(read_json_file(o.inputs.at(1)));
  const ExistentialFormula lhs = parse_formula(sig, q.lhs, q.context);
  const ExistentialFormula rhs = parse_formula(sig, q.rhs, q.context);
  const Containment c = cq_contains(sig, lhs, rhs);
  run.set("lhs", print_formula(sig, lhs));
  run.set("rhs", print_formula(sig, rhs));
  run.set("contained", c.contained);
  if (c.contained) run.set("witness", witness_json(lhs, rhs, c.witness));
  if (c.countermodel) run.set("countermodel", c.countermodel->to_json(sig));
}

void cmd_exact(const Options& o, Run& run) {
  if (o.inputs.size() < 2) throw InputError("exact needs a doctrine and a candidates file");
  if (o.budget_given && o.budget == 0) throw ResourceError("candidate budget is 0");
  const Fixture f = load_doctrine(o.inputs.at(0));
  if (!f.delta) throw InputError("exact completion needs equality predicates");
  const ExactCompletion ex(f.doctrine, *f.delta);
  CandidateFile cf = candidates_from_json(ex, read_json_file(o.inputs.at(1)));
  for (auto& obj : cf.objects)
    if (!run.add("object " + obj.name, ex.check_object(obj))) return;
  for (const auto& m : cf.morphisms) {
    if (!run.add("morphism " + m.source.name + "->" + m.target.name, ex.check_morphism(m))) return;
    if (m.e == *f.category->terminal())
      if (!run.add("completion reading " + m.source.name + "->" + m.target.name,
                   ex.check_completion_reading(m)))
        return;
  }
  if (!o.verify_laws) return;
  const ExactCategoryResult r =
      verify_category(ex, cf.objects, cf.parameters, o.budget_given ? o.budget : 100000);
  const json dump = to_json(ex, r);
  run.set("hom_counts", dump.at("hom_counts"));
  run.set("classes", r.morphisms.size());
  run.set("candidates", r.candidates);
  run.set("composition", r.composition);
  run.add("category laws", r.report);
  if (!o.out.empty()) write_file(o.out, dump);
}

int execute(const std::string& command, const Options& o, const std::vector<std::string>& args,
            std::ostream& out, std::ostream& err, json* report = nullptr) {
  Run run(command, args, err);
  const auto t0 = std::chrono::steady_clock::now();
  err << "exco " << command << "\n";
  try {
    if (command == "check") cmd_check(o, run);
    else if (command == "complete") cmd_complete(o, run);
    else if (command == "laws") cmd_laws(o, run);
    else if (command == "cq") cmd_cq(o, run);
    else if (command == "exact") cmd_exact(o, run);
  } catch (const ResourceError& e) {
    run.resource(e.what());
  } catch (const InputError& e) {
    run.input(e.what());
  } catch (const json::exception& e) {
    run.input(std::string("malformed input: ") + e.what());
  } catch (const std::out_of_range& e) {
    run.input(std::string("missing input: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  err << "exit " << run.exit_code() << ", " << secs << " s\n";
  const json j = run.to_json();
  if (report) *report = j;
  out << j.dump(2) << "\n";
  return run.exit_code();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exco: finite doctrines, their existential completion and exact completion"};
  app.require_subcommand(0, 1);
  Options o;
  app.add_option("--replay", o.replay, "Re-run the command recorded in a report");

  auto common = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "Seed for sampled suites")->capture_default_str();
    s->add_option("--budget", o.budget, "Size budget (0 trips immediately)")
        ->each([&](const std::string&) { o.budget_given = true; });
    s->add_option("--out", o.out, "Dump file");
  };
  auto* check = app.add_subcommand("check", "Check doctrine axioms");
  check->add_option("doctrine", o.inputs, "Doctrine file or builtin:NAME")->required();
  check->add_flag("--primary", o.primary);
  check->add_flag("--elementary", o.elementary);
  check->add_flag("--existential", o.existential);
  auto* comp = app.add_subcommand("complete", "Build the existential completion");
  comp->add_option("doctrine", o.inputs)->required();
  comp->add_option("--lambda", o.lambda, "projections or a file listing arrows");
  comp->add_flag("--twice", o.twice, "Also complete the completion");
  auto* laws = app.add_subcommand("laws", "Run a law suite");
  laws->add_option("doctrine", o.inputs, "Doctrine or pair file")->required();
  laws->add_option("--suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"monad", "adjunction", "algebra", "kz", "elementary"}));
  laws->add_option("--action", o.action)->check(CLI::IsMember({"zeta", "top"}));
  auto* cq = app.add_subcommand("cq", "Conjunctive query containment");
  cq->add_option("files", o.inputs, "Signature file, then query file")->required();
  cq->add_option("--compare-completion", o.compare, "Bounds file or inline JSON");
  auto* exact = app.add_subcommand("exact", "Exact completion objects and morphisms");
  exact->add_option("files", o.inputs, "Doctrine, then candidates file")->required();
  exact->add_flag("--verify-laws", o.verify_laws);
  for (auto* s : {check, comp, laws, cq, exact}) common(s);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    Run r("", args, err);
    r.input(e.what());
    out << r.to_json().dump(2) << "\n";
    return kInputError;
  }

  if (!o.replay.empty()) {
    json recorded;
    try {
      recorded = read_json_file(o.replay);
      const auto& cmd = recorded.at("command");
      std::vector<std::string> again = cmd.at("args").get<std::vector<std::string>>();
      std::ostringstream sink;
      err << "replaying " << cmd.at("name").get<std::string>() << "\n";
      const int code = run(again, sink, err);
      json now = json::parse(sink.str());
      const bool same = now.value("first_counterexample", json()) ==
                            recorded.value("first_counterexample", json()) &&
                        now.at("exit_code") == recorded.at("exit_code");
      json rep{{"schema_version", kSchemaVersion},
               {"command", {{"name", "replay"}, {"args", args}}},
               {"replayed", cmd},
               {"reproduced", same},
               {"exit_code", code},
               {"report", now}};
      out << rep.dump(2) << "\n";
      return same ? code : kInputError;
    } catch (const std::exception& e) {
      Run r("replay", args, err);
      r.input(e.what());
      out << r.to_json().dump(2) << "\n";
      return kInputError;
    }
  }
  for (auto* s : app.get_subcommands()) return execute(s->get_name(), o, args, out, err);
  out << app.help();
  return kInputError;
}

}  // namespace exco::cli
