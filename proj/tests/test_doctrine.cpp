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
#include "exco/io.hpp"

#include "oracles.hpp"

using namespace exco;

namespace {

struct F2 {
  Fixture f = fixture_f2();
  const SetCategory& c = dynamic_cast<const SetCategory&>(*f.category);
  const PowersetDoctrine& p = dynamic_cast<const PowersetDoctrine&>(*f.doctrine);
  ObjectId x = c.object_by_name("X");
  Product xx = c.require_product(x, x);

  // Points of X x X with the given coordinates, by applying the projections.
  [[nodiscard]] Elem pairs(std::initializer_list<std::pair<unsigned, unsigned>> ps) const {
    Elem out = 0;
    for (unsigned pt = 0; pt < 4; ++pt)
      for (auto [a, b] : ps)
        if (SetCategory::apply(xx.pr1, pt) == a && SetCategory::apply(xx.pr2, pt) == b)
          out |= Elem{1} << pt;
    return out;
  }
};

// Least beta with alpha <= P_f(beta), by enumeration.
std::optional<Elem> least_over(const Doctrine& p, const Arrow& f, Elem alpha) {
  std::optional<Elem> best;
  for (Elem b : p.elements(f.tgt))
    if (p.fiber(f.src).leq(alpha, p.reindex(f, b)) &&
        (!best || p.fiber(f.tgt).leq(b, *best)))
      best = b;
  return best;
}

}  // namespace

TEST_CASE("powerset doctrine is primary") {
  F2 t;
  CHECK(check_primary(*t.f.doctrine).ok());
  CHECK(t.p.fiber(t.xx.object).size() == 16);
}

TEST_CASE("constant doctrine on the chain is primary") {
  CHECK(check_primary(*fixture_f1().doctrine).ok());
}

TEST_CASE("broken functoriality names the arrows") {
  Fixture f = fixture_f1(3);
  nlohmann::json j = doctrine_to_json(f);
  j["reindex"]["0<=2"] = {{"0", "0"}, {"1", "0"}, {"2", "2"}};
  const Fixture bad = doctrine_from_json(j, ".");
  const Report r = check_primary(*bad.doctrine);
  REQUIRE_FALSE(r.ok());
  CHECK(r.law == "functoriality");
  CHECK(r.counterexample.contains("f"));
  CHECK(r.counterexample.contains("g"));
}

TEST_CASE("reindexing along a projection is preimage") {
  F2 t;
  const Elem zero = t.p.fiber(t.x).parse("{0}");
  CHECK(t.p.reindex(t.xx.pr1, zero) == t.pairs({{0, 0}, {0, 1}}));
  CHECK(t.p.diagonal(t.x) == t.pairs({{0, 0}, {1, 1}}));
}

TEST_CASE("left adjoint along the first projection") {
  F2 t;
  const auto l = find_left_adjoint(*t.f.doctrine, t.xx.pr1);
  REQUIRE(l.has_value());
  const Elem alpha = t.pairs({{0, 0}, {0, 1}});
  CHECK(l->at(alpha) == t.p.fiber(t.x).parse("{0}"));
  for (Elem a : t.p.elements(t.xx.object))
    CHECK(l->at(a) == *least_over(*t.f.doctrine, t.xx.pr1, a));
}

TEST_CASE("left adjoint of an identity is the identity") {
  F2 t;
  const auto l = find_left_adjoint(*t.f.doctrine, t.c.identity(t.x));
  REQUIRE(l.has_value());
  for (Elem a : t.p.elements(t.x)) CHECK(l->at(a) == a);
}

TEST_CASE("top along X -> 1 goes to top") {
  F2 t;
  const auto l = find_left_adjoint(*t.f.doctrine, t.c.to_terminal(t.x));
  REQUIRE(l.has_value());
  CHECK(l->at(t.p.fiber(t.x).top()) == t.p.fiber(0).top());
}

TEST_CASE("image along projections is an existential structure") {
  F2 t;
  CHECK(check_existential(*t.f.doctrine, t.f.exists).ok());
  const SetCategory& c = t.c;
  for (const Arrow& g : t.f.exists.lambda.members(c))
    for (Elem a : t.p.elements(g.src))
      CHECK(t.f.exists.exists(g, a) == oracle::image(g, a, c.points(g.src)));
}

TEST_CASE("one-object doctrine with identity class is existential") {
  const Fixture f = fixture_f0();
  CHECK(check_existential(*f.doctrine, f.exists).ok());
}

TEST_CASE("constant top quantifier fails the adjunction") {
  F2 t;
  const PowersetDoctrine& p = t.p;
  const ExistentialStructure bad{t.f.exists.lambda,
                                 [&p](const Arrow& g, Elem) { return p.fiber(g.tgt).top(); }};
  const Report r = check_existential(*t.f.doctrine, bad);
  CHECK_FALSE(r.ok());
}

TEST_CASE("Frobenius mutant is caught, adjunction alone holds") {
  const Fixture f = fixture_frobenius_mutant();
  const Arrow g = f.category->arrow_by_name("0<=1");
  CHECK(check_adjunction(*f.doctrine, g, [&](Elem x) { return f.exists.exists(g, x); }).ok());
  const Report r = check_existential(*f.doctrine, f.exists);
  REQUIRE_FALSE(r.ok());
  CHECK(r.law == "Frobenius");
}

TEST_CASE("diagonal is fibered equality on the powerset doctrine") {
  F2 t;
  CHECK(check_elementary(*t.f.doctrine, *t.f.delta).ok());
}

TEST_CASE("top as equality on the chain") {
  const Fixture f = fixture_f1();
  CHECK(check_elementary(*f.doctrine, *f.delta).ok());
}

TEST_CASE("top as equality on the powerset doctrine fails condition (i)") {
  F2 t;
  const PowersetDoctrine& p = t.p;
  const ElementaryStructure bad{[&p, &t](ObjectId a) {
    return p.fiber(t.c.require_product(a, a).object).top();
  }};
  const Report r = check_elementary(*t.f.doctrine, bad);
  REQUIRE_FALSE(r.ok());
  CHECK(r.law == "elementary (i)");
}

TEST_CASE("quantifier computed from equality") {
  F2 t;
  // along a projection it agrees with the declared image
  const ElemMap d = derived_exists(*t.f.doctrine, t.f.exists, *t.f.delta, t.xx.pr1);
  for (Elem a : t.p.elements(t.xx.object)) CHECK(d.at(a) == t.f.exists.exists(t.xx.pr1, a));
  const ElemMap id = derived_exists(*t.f.doctrine, t.f.exists, *t.f.delta, t.c.identity(t.x));
  for (Elem a : t.p.elements(t.x)) CHECK(id.at(a) == a);
  // along the point 0: top goes to {0}, matching the brute-force adjoint
  const Arrow zero = t.c.arrow_by_name("1->X:0");
  const ElemMap z = derived_exists(*t.f.doctrine, t.f.exists, *t.f.delta, zero);
  CHECK(z.at(t.p.fiber(0).top()) == t.p.fiber(t.x).parse("{0}"));
  CHECK(z.at(t.p.fiber(0).top()) == *least_over(*t.f.doctrine, zero, t.p.fiber(0).top()));
}

TEST_CASE("identity morphism and identity 2-cell") {
  F2 t;
  const DoctrineMorphism id = identity_morphism(*t.f.doctrine);
  const MorphismStructure s{&t.f.exists, &t.f.exists, &*t.f.delta, &*t.f.delta};
  CHECK(check_morphism(MorphismKind::Primary, id, s).ok());
  CHECK(check_morphism(MorphismKind::Existential, id, s).ok());
  CHECK(check_morphism(MorphismKind::Elementary, id, s).ok());
  CHECK(check_two_cell(identity_two_cell(id)).ok());
}

TEST_CASE("constant top on a nontrivial fiber does not preserve equality") {
  F2 t;
  const DoctrineMorphism top = constant_top_morphism(*t.f.doctrine, *t.f.doctrine);
  CHECK(check_morphism(MorphismKind::Primary, top).ok());
  const MorphismStructure s{&t.f.exists, &t.f.exists, &*t.f.delta, &*t.f.delta};
  CHECK_FALSE(check_morphism(MorphismKind::Elementary, top, s).ok());
}

TEST_CASE("a map that is not monotone fails as a primary morphism") {
  const Fixture f = fixture_f1();
  const DoctrineMorphism swap = uniform_morphism(*f.doctrine, *f.doctrine, {1, 0});
  CHECK_FALSE(check_morphism(MorphismKind::Primary, swap).ok());
}
