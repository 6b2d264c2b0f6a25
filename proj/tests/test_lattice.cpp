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
#include "exco/lattice.hpp"

using namespace exco;

TEST_CASE("two-chain order") {
  const TableLattice l = TableLattice::chain(2);
  CHECK(l.leq(0, 1));
  CHECK_FALSE(l.leq(1, 0));
  CHECK(check_semilattice(l).ok());
}

TEST_CASE("top is the maximum") {
  const TableLattice l = TableLattice::chain(4);
  for (Elem a : l.elements()) CHECK(l.leq(a, l.top()));
}

TEST_CASE("singletons of a two-point powerset are incomparable") {
  const PowersetLattice p(2);
  CHECK_FALSE(p.leq(p.parse("{0}"), p.parse("{1}")));
  CHECK(check_semilattice(p).ok());
}

TEST_CASE("order is reflexive, antisymmetric and transitive") {
  const PowersetLattice p(3);
  const auto els = p.elements();
  for (Elem a : els)
    for (Elem b : els) {
      CHECK(p.leq(a, a));
      if (p.leq(a, b) && p.leq(b, a)) CHECK(a == b);
      for (Elem c : els)
        if (p.leq(a, b) && p.leq(b, c)) CHECK(p.leq(a, c));
    }
}

TEST_CASE("names round trip, including nested parentheses") {
  const PowersetLattice p(2, false, {"E(x1,x2)", "R(x1)"});
  for (Elem a : p.elements()) CHECK(p.parse(p.name(a)) == a);
  CHECK(p.parse("{E(x1,x2),R(x1)}") == 3);
  CHECK_THROWS_AS(static_cast<void>(p.parse("{S(x1)}")), InputError);
}

TEST_CASE("reversed powerset has the empty set on top") {
  const PowersetLattice r(2, true);
  CHECK(r.top() == 0);
  CHECK(r.leq(3, 1));
  CHECK(check_semilattice(r).ok());
}

TEST_CASE("broken meet table is reported") {
  // a ^ b = a but b ^ a = b
  const TableLattice bad({"a", "b", "t"}, 2, {0, 0, 0, 1, 1, 1, 0, 1, 2});
  CHECK_FALSE(check_semilattice(bad).ok());
}

TEST_CASE("preimage map between powersets is a semilattice map") {
  const PowersetLattice src(2), tgt(4);
  // preimage along the first projection {0,1}^2 -> {0,1}, point code i = 2*b + a
  const SemilatticeMap pre{&src, &tgt, [](Elem s) {
                             Elem out = 0;
                             for (unsigned i = 0; i < 4; ++i)
                               if (s >> (i & 1U) & 1U) out |= Elem{1} << i;
                             return out;
                           }};
  CHECK(check_map(pre).ok());
}

TEST_CASE("direct image along a non-injective function breaks meets") {
  const PowersetLattice src(2), tgt(1);
  const SemilatticeMap img{&src, &tgt, [](Elem s) { return s ? Elem{1} : Elem{0}; }};
  // oracle: the two singletons meet to empty but both images are full
  CHECK(src.meet(1, 2) == 0);
  CHECK(img.apply(1) == 1);
  CHECK(img.apply(2) == 1);
  const Report r = check_map(img);
  CHECK_FALSE(r.ok());
  CHECK(r.law == "meet preservation");
}

TEST_CASE("foreign elements are rejected") {
  const TableLattice l = TableLattice::chain(2);
  CHECK_THROWS_AS(static_cast<void>(exco::leq(l, 0, 7)), InputError);
}
