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

#include "exco/exactcomp.hpp"
#include "exco/fixtures.hpp"

#include "oracles.hpp"

using namespace exco;

namespace {

struct Setup {
  Fixture f = fixture_f2();
  const SetCategory& c = dynamic_cast<const SetCategory&>(*f.category);
  ExactCompletion ex{f.doctrine, *f.delta};
  ObjectId one = *c.terminal();
  ObjectId x = c.object_by_name("X");

  // Subset of A x B x 1 given as a predicate on coordinates.
  Elem relation(ObjectId a, ObjectId b, const std::function<bool(unsigned, unsigned)>& in) const {
    const std::vector<ObjectId> factors{a, b, one};
    const NaryProduct n = nary_product(c, factors);
    Elem out = 0;
    for (unsigned pt = 0; pt < c.points(n.object); ++pt)
      if (in(SetCategory::apply(n.projections[0], pt), SetCategory::apply(n.projections[1], pt)))
        out |= Elem{1} << pt;
    return out;
  }

  // Single-valued and total, read off the points.
  bool functional(ObjectId a, ObjectId b, Elem phi) const {
    const std::vector<ObjectId> factors{a, b, one};
    const NaryProduct n = nary_product(c, factors);
    std::vector<unsigned> hits(c.points(a), 0);
    for (unsigned pt = 0; pt < c.points(n.object); ++pt)
      if (phi >> pt & 1U) ++hits[SetCategory::apply(n.projections[0], pt)];
    for (unsigned h : hits)
      if (h != 1) return false;
    return true;
  }
};

}  // namespace

TEST_CASE("diagonal and terminal objects are partial equivalence relations") {
  Setup s;
  PerObject d = s.ex.diagonal_object(s.x, "X");
  PerObject t = s.ex.terminal_object("1");
  CHECK(s.ex.check_object(d).ok());
  CHECK(s.ex.check_object(t).ok());
  CHECK(d.rho == s.relation(s.x, s.x, [](unsigned i, unsigned j) { return i == j; }));
  CHECK(s.ex.check_object_completion_reading(d).ok());
}

TEST_CASE("non-symmetric relation fails the first object clause") {
  Setup s;
  PerObject o{"X", s.x, s.one, s.relation(s.x, s.x, [](unsigned i, unsigned j) { return i == 0 && j == 1; })};
  const Report r = s.ex.check_object(o);
  REQUIRE_FALSE(r.ok());
  CHECK(r.law == "object clause 1");
}

TEST_CASE("transitivity failure is reported") {
  Setup s;
  PerObject o{"X", s.x, s.one,
              s.relation(s.x, s.x, [](unsigned i, unsigned j) { return i != j; })};
  const Report r = s.ex.check_object(o);
  REQUIRE_FALSE(r.ok());
  CHECK(r.law == "object clause 2");
}

TEST_CASE("valid morphisms between diagonal objects are exactly the functional relations") {
  Setup s;
  PerObject d = s.ex.diagonal_object(s.x, "X");
  PerObject t = s.ex.terminal_object("1");
  REQUIRE(s.ex.check_object(d).ok());
  REQUIRE(s.ex.check_object(t).ok());
  for (const auto& [src, tgt] : std::vector<std::pair<PerObject, PerObject>>{{d, d}, {t, d}, {d, t}, {t, t}}) {
    const std::vector<ObjectId> factors{src.a, tgt.a, s.one};
    const NaryProduct n = nary_product(s.c, factors);
    std::size_t valid = 0;
    for (Elem phi : s.f.doctrine->elements(n.object)) {
      const PerMorphism m{src, tgt, s.one, phi};
      const bool ok = s.ex.check_morphism(m).ok();
      CHECK(ok == s.functional(src.a, tgt.a, phi));
      CHECK(ok == s.ex.check_completion_reading(m).ok());
      valid += ok;
    }
    CHECK(valid == oracle::functional_relations(s.c, src.a, tgt.a));
  }
}

TEST_CASE("identities") {
  Setup s;
  PerObject d = s.ex.diagonal_object(s.x, "X");
  PerObject t = s.ex.terminal_object("1");
  REQUIRE(s.ex.check_object(d).ok());
  REQUIRE(s.ex.check_object(t).ok());
  CHECK(s.ex.identity(t).phi == s.f.doctrine->fiber(s.ex.identity(t).e == s.one
                                                         ? nary_product(s.c, std::vector<ObjectId>{s.one, s.one, s.one}).object
                                                         : s.one).top());
  const PerMorphism id = s.ex.identity(d);
  CHECK(s.ex.check_morphism(id).ok());
  CHECK(s.ex.equal(s.ex.compose(id, id), id));
}

TEST_CASE("top relation into a two-point object is not single-valued") {
  Setup s;
  PerObject d = s.ex.diagonal_object(s.x, "X");
  REQUIRE(s.ex.check_object(d).ok());
  const PerMorphism m{d, d, s.one, s.relation(s.x, s.x, [](unsigned, unsigned) { return true; })};
  const Report r = s.ex.check_morphism(m);
  REQUIRE_FALSE(r.ok());
  CHECK(r.law == "morphism clause 4");
}

TEST_CASE("graphs of base arrows are morphisms and compose like the arrows") {
  Setup s;
  PerObject d = s.ex.diagonal_object(s.x, "X");
  REQUIRE(s.ex.check_object(d).ok());
  std::vector<Arrow> arrows;
  s.c.for_each_arrow(s.x, s.x, [&](const Arrow& u) {
    arrows.push_back(u);
    return true;
  });
  REQUIRE(arrows.size() == 4);
  for (const Arrow& u : arrows) {
    const PerMorphism g = s.ex.graph(u, d, d);
    CHECK(s.ex.check_morphism(g).ok());
    CHECK(g.phi == s.relation(s.x, s.x, [&](unsigned i, unsigned j) {
      return SetCategory::apply(u, i) == j;
    }));
  }
  for (const Arrow& u : arrows)
    for (const Arrow& v : arrows)
      CHECK(s.ex.equal(s.ex.compose(s.ex.graph(u, d, d), s.ex.graph(v, d, d)),
                       s.ex.graph(s.c.compose(v, u), d, d)));
}

TEST_CASE("unit and associativity laws on representatives") {
  Setup s;
  PerObject d = s.ex.diagonal_object(s.x, "X");
  REQUIRE(s.ex.check_object(d).ok());
  std::vector<PerMorphism> ms;
  s.c.for_each_arrow(s.x, s.x, [&](const Arrow& u) {
    ms.push_back(s.ex.graph(u, d, d));
    return true;
  });
  const PerMorphism id = s.ex.identity(d);
  for (const auto& m : ms) {
    CHECK(s.ex.equal(s.ex.compose(id, m), m));
    CHECK(s.ex.equal(s.ex.compose(m, id), m));
    CHECK(s.ex.check_morphism(s.ex.compose(m, m)).ok());
  }
  for (const auto& a : ms)
    for (const auto& b : ms)
      for (const auto& c : ms)
        CHECK(s.ex.equal(s.ex.compose(s.ex.compose(a, b), c), s.ex.compose(a, s.ex.compose(b, c))));
}

TEST_CASE("terminal object alone has one morphism class") {
  Setup s;
  const auto r = verify_category(s.ex, {s.ex.terminal_object("1")}, {s.one}, 1000);
  CHECK(r.report.ok());
  CHECK(r.morphisms.size() == 1);
}

TEST_CASE("category on the terminal and diagonal objects") {
  Setup s;
  const std::vector<PerObject> objs{s.ex.terminal_object("1"), s.ex.diagonal_object(s.x, "X")};
  const auto r = verify_category(s.ex, objs, {s.one}, 100000);
  INFO(r.report.message);
  CHECK(r.report.ok());
  for (std::size_t i = 0; i < objs.size(); ++i)
    for (std::size_t j = 0; j < objs.size(); ++j) {
      std::size_t count = 0;
      for (const auto& e : r.ends) count += e.first == i && e.second == j;
      CHECK(count == oracle::functional_relations(s.c, objs[i].a, objs[j].a));
    }
  CHECK(r.cross_checked > 0);
  CHECK(r.identities.size() == 2);
}

TEST_CASE("two-point parameters exceed the witness search") {
  Setup s;
  const std::vector<PerObject> objs{s.ex.terminal_object("1"), s.ex.diagonal_object(s.x, "X")};
  CHECK_THROWS_AS(static_cast<void>(verify_category(s.ex, objs, {s.one, s.x}, 100000)),
                  ResourceError);
}

TEST_CASE("mutated composition is detected") {
  Setup s;
  const std::vector<PerObject> objs{s.ex.terminal_object("1"), s.ex.diagonal_object(s.x, "X")};
  const auto r = verify_category(s.ex, objs, {s.one}, 100000, CompositionRule::DropRight);
  CHECK_FALSE(r.report.ok());
}

TEST_CASE("zero budget is a resource error") {
  Setup s;
  CHECK_THROWS_AS(static_cast<void>(verify_category(s.ex, {s.ex.terminal_object("1")}, {s.one}, 0)),
                  ResourceError);
}

TEST_CASE("constant chain: every object has the single class") {
  const Fixture f = fixture_f1();
  const ExactCompletion ex(f.doctrine, *f.delta);
  const ObjectId top = *f.category->terminal();
  const auto r = verify_category(ex, {ex.terminal_object("1")}, {top}, 1000);
  CHECK(r.report.ok());
}
