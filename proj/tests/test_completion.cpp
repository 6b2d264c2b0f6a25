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

#include "exco/fixtures.hpp"

#include "oracles.hpp"

using namespace exco;

namespace {

std::shared_ptr<CompletedDoctrine> completed(const Fixture& f) {
  return complete(f.doctrine, f.exists.lambda);
}

// Constant chain of the given height over the category of `f`.
Fixture rebased_chain(const Fixture& f, std::size_t height) {
  auto c = std::dynamic_pointer_cast<const TableCategory>(f.category);
  auto p = std::make_shared<const TableDoctrine>(
      TableDoctrine::constant(c, TableLattice::chain(height)));
  return {"chain" + std::to_string(height), c, p, {f.exists.lambda, f.exists.exists}, f.delta};
}

}  // namespace

TEST_CASE("order on identity witnesses is the fiber order") {
  const Fixture f = fixture_f2();
  const Completion raw(f.doctrine, f.exists.lambda);
  const Category& c = *f.category;
  const ObjectId x = c.object_by_name("X");
  for (Elem a : f.doctrine->elements(x))
    for (Elem b : f.doctrine->elements(x))
      CHECK(raw.leq({c.identity(x), a}, {c.identity(x), b}).has_value() ==
            f.doctrine->fiber(x).leq(a, b));
}

TEST_CASE("mediating arrow search on the powerset fixture") {
  const Fixture f = fixture_f2();
  const Completion raw(f.doctrine, f.exists.lambda);
  const Category& c = *f.category;
  const ObjectId x = c.object_by_name("X");
  const Product xx = c.require_product(x, x);
  const Lattice& l2 = f.doctrine->fiber(xx.object);
  Elem p01 = 0;
  for (Elem e : l2.elements())
    if (l2.name(e) == "{01}") p01 = e;
  const CompletionElement lhs{xx.pr1, p01};
  const auto w = raw.leq(lhs, {c.identity(x), f.doctrine->fiber(x).top()});
  REQUIRE(w.has_value());
  CHECK(*w == xx.pr1);
  CHECK(oracle::pair_leq(*f.doctrine, lhs, {c.identity(x), f.doctrine->fiber(x).top()}));
  const CompletionElement zero{c.identity(x), f.doctrine->fiber(x).parse("{0}")};
  CHECK_FALSE(raw.leq(zero, {xx.pr1, 0}).has_value());
  CHECK_FALSE(oracle::pair_leq(*f.doctrine, zero, {xx.pr1, 0}));
}

TEST_CASE("one-object completion has the original fibers") {
  const Fixture f = fixture_f0();
  auto pe = completed(f);
  const Lattice& l = f.doctrine->fiber(0);
  REQUIRE(pe->fiber(0).size() == l.size());
  for (Elem a : l.elements())
    for (Elem b : l.elements())
      CHECK(pe->fiber(0).leq(pe->embed(0, a), pe->embed(0, b)) == l.leq(a, b));
}

TEST_CASE("completion fibers match the brute-force quotient") {
  for (const Fixture& f : {fixture_f0(), fixture_f1(), fixture_f1(3), fixture_f2(), fixture_monoid()}) {
    auto pe = completed(f);
    for (ObjectId a : f.category->objects()) {
      INFO(f.name << " over " << f.category->object_name(a));
      CHECK(oracle::compare_fiber(*pe, a) == "");
    }
  }
}

TEST_CASE("top is the class of the identity with top payload") {
  for (const Fixture& f : {fixture_f0(), fixture_f1(), fixture_f2()}) {
    auto pe = completed(f);
    for (ObjectId a : f.category->objects())
      CHECK(pe->fiber(a).top() ==
            pe->classify(a, {f.category->identity(a), f.doctrine->fiber(a).top()}));
  }
}

TEST_CASE("completion passes its own structural checks") {
  for (const Fixture& f : {fixture_f0(), fixture_f1(), fixture_f2(), fixture_monoid()}) {
    auto pe = completed(f);
    INFO(f.name);
    CHECK(check_completion(*pe).ok());
    CHECK(check_primary(*pe).ok());
    CHECK(check_existential(*pe, pe->existential_structure()).ok());
  }
}

TEST_CASE("unit sends top to top, is injective and natural") {
  const Fixture f = fixture_f2();
  auto pe = completed(f);
  const DoctrineMorphism i = unit(*pe);
  const Category& c = *f.category;
  for (ObjectId a : c.objects()) {
    CHECK(i.b(a, f.doctrine->fiber(a).top()) == pe->fiber(a).top());
    std::set<Elem> seen;
    for (Elem x : f.doctrine->elements(a)) seen.insert(i.b(a, x));
    CHECK(seen.size() == f.doctrine->fiber(a).size());
  }
  for (ObjectId a : c.objects())
    for (ObjectId b : c.objects())
      c.for_each_arrow(a, b, [&](const Arrow& g) {
        for (Elem y : f.doctrine->elements(b))
          CHECK(i.b(a, f.doctrine->reindex(g, y)) == pe->reindex(g, i.b(b, y)));
        return true;
      });
  CHECK(check_morphism(MorphismKind::Primary, i).ok());
}

TEST_CASE("counit evaluates the quantifier") {
  const Fixture f = fixture_f2();
  auto pe = completed(f);
  const DoctrineMorphism z = counit(*pe, f.exists);
  const Category& c = *f.category;
  const ObjectId x = c.object_by_name("X");
  const Product xx = c.require_product(x, x);
  const Lattice& l2 = f.doctrine->fiber(xx.object);
  for (Elem a : f.doctrine->elements(x)) CHECK(z.b(x, pe->embed(x, a)) == a);
  const Elem p01 = l2.parse("{01}");
  CHECK(z.b(x, pe->classify(x, {xx.pr1, p01})) == f.doctrine->fiber(x).parse("{0}"));
  CHECK(check_counit_well_defined(*pe, f.exists).ok());
}

TEST_CASE("zeta after iota is the identity on every fixture") {
  for (const Fixture& f : {fixture_f0(), fixture_f1(), fixture_f2(), fixture_monoid()}) {
    auto pe = completed(f);
    const DoctrineMorphism i = unit(*pe);
    const DoctrineMorphism z = counit(*pe, f.exists);
    for (ObjectId a : f.category->objects())
      for (Elem x : f.doctrine->elements(a)) CHECK(z.b(a, i.b(a, x)) == x);
    CHECK(check_unit_counit(*pe, f.exists).ok());
  }
}

TEST_CASE("triangle identity on the completion") {
  for (const Fixture& f : {fixture_f0(), fixture_f1()}) {
    auto pe = completed(f);
    auto pee = complete(pe, f.exists.lambda);
    CHECK(check_triangle(*pe, *pee).ok());
  }
}

TEST_CASE("E preserves identities, composition and 2-cells") {
  const Fixture base = fixture_f1();
  const Fixture c3 = rebased_chain(base, 3);
  auto p2 = completed(base);
  auto p3 = completed(c3);
  const DoctrineMorphism id = identity_morphism(*base.doctrine);
  const DoctrineMorphism eid = map_E(id, *p2, *p2);
  for (ObjectId a : base.category->objects())
    for (Elem x : p2->elements(a)) CHECK(eid.b(a, x) == x);

  const DoctrineMorphism m = uniform_morphism(*base.doctrine, *c3.doctrine, {0, 2});
  const DoctrineMorphism n = uniform_morphism(*c3.doctrine, *c3.doctrine, {0, 2, 2});
  const DoctrineMorphism em = map_E(m, *p2, *p3);
  const DoctrineMorphism en = map_E(n, *p3, *p3);
  const DoctrineMorphism enm = map_E(compose_morphisms(n, m), *p2, *p3);
  for (ObjectId a : base.category->objects())
    for (Elem x : p2->elements(a)) CHECK(enm.b(a, x) == en.b(a, em.b(a, x)));

  const DoctrineMorphism m2 = uniform_morphism(*base.doctrine, *c3.doctrine, {1, 2});
  const TwoCell cell{&m, &m2, identity_transformation(m.functor)};
  REQUIRE(check_two_cell(cell).ok());
  const DoctrineMorphism em2 = map_E(m2, *p2, *p3);
  const TwoCell lifted{&em, &em2, identity_transformation(em.functor)};
  CHECK(check_two_cell(lifted).ok());
}

TEST_CASE("monad laws") {
  for (const Fixture& f : {fixture_f0(), fixture_f1()}) {
    auto pe = completed(f);
    auto pee = complete(pe, f.exists.lambda);
    INFO(f.name);
    CHECK(check_monad_laws(*pe, *pee).ok());
    // mu after the unit of the second completion is the identity
    const DoctrineMorphism m = mu(*pe, *pee);
    for (ObjectId a : f.category->objects())
      for (Elem x : pe->elements(a)) CHECK(m.b(a, pee->embed(a, x)) == x);
  }
}

TEST_CASE("algebras") {
  const Fixture f2 = fixture_f2();
  auto pe = completed(f2);
  CHECK(check_algebra(*pe, counit(*pe, f2.exists)).ok());
  const Report top = check_algebra(*pe, constant_top_morphism(*pe, *f2.doctrine));
  REQUIRE_FALSE(top.ok());
  CHECK(top.law == "algebra unit");

  const Fixture f0 = fixture_f0();
  auto p0 = completed(f0);
  CHECK(check_algebra(*p0, counit(*p0, f0.exists)).ok());
}

TEST_CASE("quantifier extracted from the counit algebra is the image") {
  const Fixture f = fixture_f2();
  auto pe = completed(f);
  const ExistentialStructure back = existential_from_algebra(*pe, counit(*pe, f.exists));
  const auto& c = dynamic_cast<const SetCategory&>(*f.category);
  for (const Arrow& g : f.exists.lambda.members(c)) {
    if (!c.is_listed(g.src)) continue;
    for (Elem x : f.doctrine->elements(g.src))
      CHECK(back.exists(g, x) == oracle::image(g, x, c.points(g.src)));
  }
  const ObjectId x = c.object_by_name("X");
  for (Elem a : f.doctrine->elements(x)) CHECK(back.exists(c.identity(x), a) == a);
  CHECK(check_existential(*f.doctrine, back).ok());
}

TEST_CASE("lax idempotence: the identity 2-cell is the unique coherent one") {
  const Fixture f2 = fixture_f2();
  auto pe2 = completed(f2);
  const auto r = check_lax_idempotent_instance(*pe2, f2.exists, *pe2, f2.exists,
                                               identity_morphism(*f2.doctrine));
  CHECK(r.report.ok());
  CHECK(r.satisfying_all == 1);

  const Fixture base = fixture_f1();
  const Fixture c3 = rebased_chain(base, 3);
  auto p2 = completed(base);
  auto p3 = completed(c3);
  const auto s = check_lax_idempotent_instance(
      *p2, base.exists, *p3, c3.exists, uniform_morphism(*base.doctrine, *c3.doctrine, {0, 2}));
  CHECK(s.report.ok());
  CHECK(s.satisfying_all == 1);

  // s swaps the two points: theta = s satisfies the cell but not unit coherence
  const Fixture mo = fixture_monoid();
  auto pm = completed(mo);
  const auto t = check_lax_idempotent_instance(*pm, mo.exists, *pm, mo.exists,
                                               constant_top_morphism(*mo.doctrine, *mo.doctrine));
  CHECK(t.report.ok());
  CHECK(t.candidates == 2);
  CHECK(t.satisfying_cell == 2);
  CHECK(t.satisfying_all == 1);
}

TEST_CASE("comparison into the double completion") {
  const Fixture f0 = fixture_f0();
  auto p0 = completed(f0);
  auto p00 = complete(p0, f0.exists.lambda);
  const KzResult k0 = check_kz_comparison(*p0, *p00);
  CHECK(k0.report.ok());
  CHECK(k0.strict == 0);

  const Fixture f1 = fixture_f1();
  auto p1 = completed(f1);
  auto p11 = complete(p1, f1.exists.lambda);
  const KzResult k1 = check_kz_comparison(*p1, *p11);
  CHECK(k1.report.ok());
  CHECK(k1.checked > 0);
  CHECK(k1.strict >= 1);
}

TEST_CASE("equality on the completion of the powerset doctrine") {
  const Fixture f = fixture_f2();
  auto pe = completed(f);
  const auto& p = dynamic_cast<const PowersetDoctrine&>(*f.doctrine);
  const Category& c = *f.category;
  const ObjectId x = c.object_by_name("X");
  const ObjectId xx = c.require_product(x, x).object;
  const ElementaryStructure de = elementary_completion(*pe, *f.delta);
  CHECK(de.delta(x) == pe->classify(xx, {c.identity(xx), p.diagonal(x)}));
  CHECK(check_elementary(*pe, de).ok());
  CHECK(check_elementary_completion(*pe, *f.delta).ok());
}

TEST_CASE("equality on the completion of the chain is top") {
  const Fixture f = fixture_f1();
  auto pe = completed(f);
  const ElementaryStructure de = elementary_completion(*pe, *f.delta);
  for (ObjectId a : f.category->objects()) CHECK(de.delta(a) == pe->fiber(a).top());
}

TEST_CASE("double completion of the powerset fixture trips the budget") {
  const Fixture f = fixture_f2();
  auto pe = completed(f);
  auto pee = complete(pe, f.exists.lambda);
  CHECK_THROWS_AS(static_cast<void>(check_completion(*pee)), ResourceError);
}
