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

#include "exco/fincat.hpp"

#include <set>

using namespace exco;

namespace {

// Oracle: the universal property by enumerating every span into the cospan.
bool brute_force_pullback(const Category& c, const Arrow& g, const Arrow& f, const Pullback& s) {
  if (c.compose(g, s.other_leg) != c.compose(f, s.lambda_leg)) return false;
  bool ok = true;
  for (ObjectId t : c.objects())
    c.for_each_arrow(t, f.src, [&](const Arrow& x) {
      c.for_each_arrow(t, g.src, [&](const Arrow& y) {
        if (c.compose(f, x) != c.compose(g, y)) return true;
        int mediators = 0;
        c.for_each_arrow(t, s.apex, [&](const Arrow& m) {
          mediators += c.compose(s.lambda_leg, m) == x && c.compose(s.other_leg, m) == y;
          return true;
        });
        ok = ok && mediators == 1;
        return ok;
      });
      return ok;
    });
  return ok;
}

}  // namespace

TEST_CASE("identity-only category satisfies the category laws") {
  CHECK(check_category(TableCategory::one_object()).ok());
}

TEST_CASE("three-element chain satisfies the category laws") {
  const TableCategory c = TableCategory::chain(3);
  CHECK(check_category(c).ok());
  CHECK(check_products(c).ok());
}

TEST_CASE("injected non-associative composite is named") {
  const TableCategory m = TableCategory::monoid({"e", "a", "b"}, {{0, 1, 2}, {1, 2, 0}, {2, 1, 1}});
  const Report r = check_category(m);
  REQUIRE_FALSE(r.ok());
  CHECK(r.law == "associativity");
  CHECK(r.counterexample.contains("g"));
  CHECK(r.counterexample.contains("f"));
  CHECK(r.counterexample.contains("h"));
}

TEST_CASE("cartesian fixture: pullback of a projection along the identity") {
  const SetCategory c(2, 2, 4);
  const ObjectId x = c.object_by_name("X");
  const Product xx = c.require_product(x, x);
  const Pullback p = canonical_projection_pullback(c, xx.pr1, c.identity(x));
  CHECK(p.apex == xx.object);
  CHECK(p.lambda_leg == xx.pr1);
  CHECK(p.other_leg == c.identity(xx.object));
  CHECK(brute_force_pullback(c, xx.pr1, c.identity(x), p));
}

TEST_CASE("cartesian fixture: pullback of X -> 1 along 1 -> 1") {
  const SetCategory c(2, 2, 4);
  const ObjectId x = c.object_by_name("X");
  const Arrow pr = c.to_terminal(x);
  const Pullback p = canonical_projection_pullback(c, pr, c.identity(0));
  CHECK(p.apex == x);
  CHECK(p.other_leg == c.identity(x));
  CHECK(p.lambda_leg == pr);
}

TEST_CASE("cartesian fixture: pullback along a point has apex X") {
  const SetCategory c(2, 2, 4);
  const ObjectId x = c.object_by_name("X");
  const Product xx = c.require_product(x, x);
  const Arrow zero = c.arrow_by_name("1->X:0");
  const Pullback p = canonical_projection_pullback(c, xx.pr1, zero);
  CHECK(p.apex == x);
  CHECK(brute_force_pullback(c, xx.pr1, zero, p));
  // the fiber over 0: both points of the apex land on first coordinate 0
  for (unsigned pt = 0; pt < 2; ++pt)
    CHECK(SetCategory::apply(c.compose(xx.pr1, p.other_leg), pt) == 0);
}

TEST_CASE("projection class of the one-object category is the identity") {
  const TableCategory c = TableCategory::one_object();
  const auto members = projection_class(c).members(c);
  REQUIRE(members.size() == 1);
  CHECK(members[0] == c.identity(0));
}

TEST_CASE("projection class of the chain is every arrow") {
  const TableCategory c = TableCategory::chain(3);
  const ArrowClass l = projection_class(c);
  std::set<Arrow> all;
  for (const Arrow& f : c.arrows()) all.insert(f);
  const auto members = l.members(c);
  CHECK(std::set<Arrow>(members.begin(), members.end()) == all);
  CHECK(check_arrow_class(c, l).ok());
}

TEST_CASE("projection class of the cartesian fixture") {
  const SetCategory c(2, 2, 4);
  const ArrowClass l = projection_class(c);
  const ObjectId x = c.object_by_name("X"), x2 = c.object_by_name("X2");
  const Product xx = c.require_product(x, x);
  // oracle: closure of identities and the designated projections
  std::set<Arrow> expected{c.identity(0),  c.identity(x),      c.identity(x2),
                           xx.pr1,         xx.pr2,             c.to_terminal(x),
                           c.to_terminal(x2)};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Arrow& g : std::set<Arrow>(expected))
      for (const Arrow& f : std::set<Arrow>(expected))
        if (f.tgt == g.src && expected.insert(c.compose(g, f)).second) grew = true;
  }
  std::set<Arrow> got;
  for (ObjectId a : c.objects())
    for (ObjectId b : c.objects())
      c.for_each_arrow(a, b, [&](const Arrow& f) {
        if (l.contains(f)) got.insert(f);
        return true;
      });
  CHECK(got == expected);
  CHECK_FALSE(l.contains(c.arrow_by_name("1->X:0")));
  CHECK(check_arrow_class(c, l).ok());
}

TEST_CASE("identity functor and identity transformation") {
  const TableCategory c = TableCategory::chain(3);
  const Functor id = identity_functor(c);
  CHECK(check_functor(id).ok());
  CHECK(check_nattrans(identity_transformation(id)).ok());
  CHECK(check_product_preserving(id).ok());
}

TEST_CASE("constant functor with a broken identity is rejected") {
  const TableCategory c = TableCategory::chain(3);
  const Arrow up = c.arrow_by_name("1<=2");
  const Functor bad{&c, &c, [](ObjectId) { return ObjectId{1}; },
                    [up](const Arrow&) { return up; }};
  CHECK_FALSE(check_functor(bad).ok());
}

TEST_CASE("brute-force pullback search agrees with the chooser on the chain") {
  const TableCategory c = TableCategory::chain(3);
  for (const Arrow& g : c.arrows())
    for (const Arrow& f : c.arrows()) {
      if (f.tgt != g.tgt) continue;
      const auto p = c.choose_pullback(g, f);
      REQUIRE(p.has_value());
      CHECK(brute_force_pullback(c, g, f, *p));
      CHECK(is_pullback(c, g, f, *p));
    }
}

TEST_CASE("missing product fails fast with a name") {
  const TableCategory m = TableCategory::monoid({"id", "s"}, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(static_cast<void>(m.require_product(0, 0)), InputError);
}

TEST_CASE("products beyond the cap are reported as missing") {
  const SetCategory c(2, 2, 4);
  CHECK_THROWS_WITH_AS(static_cast<void>(c.require_product(3, 2)), "missing product X3 x X2",
                       InputError);
}
