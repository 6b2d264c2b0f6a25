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

#include "exco/syntactic.hpp"

#include "oracles.hpp"

#include <algorithm>

using namespace exco;

namespace {

Signature sig(std::map<std::string, unsigned> preds) {
  Signature s;
  s.predicates = std::move(preds);
  return s;
}

std::vector<std::string> names(unsigned n) {
  std::vector<std::string> out;
  for (unsigned i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

Arrow random_substitution(const ContextCategory& c, unsigned src, unsigned tgt,
                          std::mt19937_64& rng) {
  std::vector<unsigned> images(tgt);
  for (unsigned& v : images) v = static_cast<unsigned>(rng() % src);
  return c.from_images(src, images);
}

// Atomwise replacement, written out independently of the engine.
ExistentialFormula substitute(const ContextCategory& c, const Arrow& f,
                              const ExistentialFormula& phi) {
  ExistentialFormula out;
  out.context = names(f.src);
  for (const Atom& a : phi.atoms) {
    Atom b{a.pred, {}};
    for (unsigned v : a.args) b.args.push_back(c.image(f, v));
    out.atoms.push_back(b);
  }
  std::sort(out.atoms.begin(), out.atoms.end());
  out.atoms.erase(std::unique(out.atoms.begin(), out.atoms.end()), out.atoms.end());
  return out;
}

}  // namespace

TEST_CASE("parsing") {
  const Signature s = sig({{"E", 2}, {"R", 1}});
  const auto t = parse_formula(s, "T", {"x"});
  CHECK(t.atoms.empty());
  CHECK(t.bound == 0);

  const auto f = parse_formula(s, "E(x,y) & E(y,y)", {"x", "y"});
  REQUIRE(f.atoms.size() == 2);
  CHECK(f.atoms[0] == Atom{s.index("E"), {0, 1}});
  CHECK(f.atoms[1] == Atom{s.index("E"), {1, 1}});

  const auto g = parse_formula(s, "exists y. E(x,y) & R(y)", {"x"});
  CHECK(g.bound == 1);
  CHECK(g.atoms.size() == 2);
  CHECK(print_formula(s, parse_formula(s, print_formula(s, g), {"x"})) == print_formula(s, g));

  CHECK_THROWS_AS(static_cast<void>(parse_formula(s, "E(x,", {"x"})), ParseError);
  CHECK_THROWS_AS(static_cast<void>(parse_formula(s, "Q(x)", {"x"})), InputError);
  CHECK_THROWS_AS(static_cast<void>(parse_formula(s, "R(x,x)", {"x"})), InputError);
}

TEST_CASE("parse errors carry the offset") {
  const Signature s = sig({{"E", 2}});
  try {
    static_cast<void>(parse_formula(s, "E(x,y) & ", {"x", "y"}));
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 9);
  }
}

TEST_CASE("conjunctive entailment is atom inclusion") {
  const Signature s = sig({{"R", 1}, {"S", 1}});
  const auto rs = parse_formula(s, "R(x) & S(x)", {"x"});
  const auto r = parse_formula(s, "R(x)", {"x"});
  const auto sx = parse_formula(s, "S(x)", {"x"});
  const auto top = parse_formula(s, "T", {"x"});
  CHECK(entails_conj(rs, r));
  CHECK(entails_conj(r, top));
  CHECK(entails_conj(top, top));
  CHECK_FALSE(entails_conj(r, sx));
  // countermodel R = {0}, S empty
  oracle::Structure m{1, {{{0}}, {}}};
  CHECK(oracle::satisfies(r, m, {0}));
  CHECK_FALSE(oracle::satisfies(sx, m, {0}));
  CHECK_THROWS_AS(static_cast<void>(entails_conj(r, parse_formula(s, "R(y)", {"y"}))),
                  InputError);
}

TEST_CASE("substitution") {
  const Signature s = sig({{"E", 2}});
  const ContextCategory c(3, 4);
  const auto exy = parse_formula(s, "E(x,y)", {"x", "y"});
  CHECK(reindex_syntactic(c, c.identity(2), exy, {"x", "y"}) == exy);
  const std::vector<unsigned> xx{0, 0};
  const auto r = reindex_syntactic(c, c.from_images(1, xx), exy, {"x"});
  CHECK(r == parse_formula(s, "E(x,x)", {"x"}));
}

TEST_CASE("substitution agrees with atomwise replacement and is functorial") {
  const Signature s = sig({{"E", 2}, {"R", 1}});
  const ContextCategory c(4, 4);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const unsigned k = 1 + static_cast<unsigned>(rng() % 3);
    const unsigned m = 1 + static_cast<unsigned>(rng() % 3);
    const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
    ExistentialFormula phi = random_formula(s, k, k, 3, rng);
    phi.context = names(k);
    const Arrow sigma = random_substitution(c, m, k, rng);
    const Arrow tau = random_substitution(c, n, m, rng);
    const auto once = reindex_syntactic(c, c.compose(sigma, tau), phi, names(n));
    const auto twice =
        reindex_syntactic(c, tau, reindex_syntactic(c, sigma, phi, names(m)), names(n));
    CHECK(once == twice);
    CHECK(reindex_syntactic(c, sigma, phi, names(m)) == substitute(c, sigma, phi));
  }
}

TEST_CASE("containment examples") {
  const Signature s = sig({{"E", 2}});
  const auto small = parse_formula(s, "exists y. E(x,y) & E(y,y)", {"x"});
  const auto big = parse_formula(s, "exists z. E(x,z)", {"x"});
  CHECK(cq_contains(s, small, small).contained);
  CHECK(cq_contains(s, big, big).contained);

  const Containment yes = cq_contains(s, small, big);
  REQUIRE(yes.contained);
  REQUIRE(yes.witness.size() == 2);
  CHECK(yes.witness[0] == 0);
  CHECK(yes.witness[1] == 1);

  const Containment no = cq_contains(s, big, small);
  CHECK_FALSE(no.contained);
  REQUIRE(no.countermodel.has_value());
  const Model& m = *no.countermodel;
  CHECK(m.size == 2);
  CHECK(eval_on_model(big, m, {0}));
  CHECK_FALSE(eval_on_model(small, m, {0}));
  CHECK(oracle::contained_in_small_models(s, small, big, 3));
  CHECK_FALSE(oracle::contained_in_small_models(s, big, small, 3));
}

TEST_CASE("evaluation") {
  const Signature s = sig({{"E", 2}});
  const Model m = Model::from_json(s, nlohmann::json::parse(R"({"size":2,"relations":{"E":[[0,1]]}})"));
  const auto f = parse_formula(s, "exists y. E(x,y)", {"x"});
  CHECK(eval_on_model(f, m, {0}));
  CHECK_FALSE(eval_on_model(f, m, {1}));
  CHECK(eval_on_model(parse_formula(s, "T", {"x"}), m, {1}));
  CHECK(eval_on_model(parse_formula(s, "T", {}), Model::empty(s, 0), {}));
  CHECK_THROWS_AS(static_cast<void>(eval_on_model(f, m, {})), InputError);
}

TEST_CASE("containment is sound and complete on random pairs") {
  const Signature s = sig({{"E", 2}, {"R", 1}});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const unsigned ctx = static_cast<unsigned>(rng() % 2);
    ExistentialFormula lhs = random_formula(s, ctx, 3, 3, rng);
    ExistentialFormula rhs = i % 2 == 0 ? random_weakening(lhs, 3, rng)
                                        : random_formula(s, ctx, 3, 2, rng);
    const Containment r = cq_contains(s, lhs, rhs);
    INFO(print_formula(s, lhs) << "  vs  " << print_formula(s, rhs));
    CHECK(r.contained == oracle::contained_in_small_models(s, lhs, rhs, 3));
    if (i % 2 == 0) CHECK(r.contained);
    if (!r.contained) {
      REQUIRE(r.countermodel.has_value());
      std::vector<unsigned> env(ctx);
      for (unsigned v = 0; v < ctx; ++v) env[v] = v;
      CHECK(eval_on_model(lhs, *r.countermodel, env));
      CHECK_FALSE(eval_on_model(rhs, *r.countermodel, env));
    }
  }
}

TEST_CASE("containment is a preorder") {
  const Signature s = sig({{"E", 2}});
  FragmentBounds b{s, 1, 1, 2};
  const auto fs = enumerate_fragment(b, 1);
  for (const auto& x : fs) {
    CHECK(cq_contains(s, x, x).contained);
    for (const auto& y : fs)
      if (cq_contains(s, x, y).contained)
        for (const auto& z : fs)
          if (cq_contains(s, y, z).contained) CHECK(cq_contains(s, x, z).contained);
  }
}

TEST_CASE("syntactic doctrine is primary") {
  const Signature s = sig({{"R", 1}});
  auto c = std::make_shared<const ContextCategory>(2, 2);
  const SyntacticDoctrine p(s, c);
  CHECK(check_primary(p).ok());
  CHECK(p.atom_count(1) == 1);
  CHECK(p.atom_count(2) == 2);
}

TEST_CASE("completion order agrees with containment on the unary fragment") {
  const ComparisonResult r = compare_with_completion({sig({{"R", 1}}), 2, 1, 2});
  CHECK(r.report.ok());
  CHECK(r.pairs > 0);
}

TEST_CASE("empty signature leaves one class per nonempty context") {
  const Signature s = sig({});
  const ComparisonResult r = compare_with_completion({s, 2, 1, 2});
  CHECK(r.report.ok());
  REQUIRE(r.classes.size() == 3);
  CHECK(r.classes[1] == 1);
  CHECK(r.classes[2] == 1);
  // no substitution 0 -> 1, and exists y. T fails in the empty model
  CHECK(r.classes[0] == 2);
  const auto t = parse_formula(s, "T", {});
  const auto e = parse_formula(s, "exists y. T", {});
  CHECK(cq_contains(s, t, e).contained == oracle::contained_in_small_models(s, t, e, 3));
  CHECK_FALSE(cq_contains(s, t, e).contained);
  CHECK(cq_contains(s, e, t).contained);
}

TEST_CASE("sampled agreement on the binary fragment") {
  FragmentBounds b{sig({{"E", 2}}), 1, 2, 3};
  b.sample = 200;
  b.seed = 5;
  const ComparisonResult r = compare_with_completion(b);
  CHECK(r.report.ok());
  CHECK(r.pairs == 200);
}

TEST_CASE("oversized fragments trip the budget") {
  FragmentBounds b{sig({{"E", 2}}), 2, 2, 3};
  b.budget = 10;
  CHECK_THROWS_AS(static_cast<void>(compare_with_completion(b)), ResourceError);
}
