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

#include "exco/fixtures.hpp"

namespace exco {

namespace {

ExistentialStructure identity_exists(ArrowClass lambda) {
  return {std::move(lambda), [](const Arrow&, Elem x) { return x; }};
}

ElementaryStructure top_delta(std::shared_ptr<const Doctrine> p) {
  return {[p](ObjectId a) {
    const Category& c = p->base();
    return p->fiber(c.require_product(a, a).object).top();
  }};
}

}  // namespace

Fixture fixture_f0() {
  auto c = std::make_shared<const TableCategory>(TableCategory::one_object());
  auto p = std::make_shared<const TableDoctrine>(
      TableDoctrine::constant(c, TableLattice::chain(2)));
  return {"F0", c, p, identity_exists(projection_class(*c)), top_delta(p)};
}

Fixture fixture_f1(std::size_t fiber_height) {
  auto c = std::make_shared<const TableCategory>(TableCategory::chain(3));
  auto p = std::make_shared<const TableDoctrine>(
      TableDoctrine::constant(c, TableLattice::chain(fiber_height)));
  const std::string name = fiber_height == 2 ? "F1" : "F1c" + std::to_string(fiber_height);
  return {name, c, p, identity_exists(projection_class(*c)), top_delta(p)};
}

Fixture fixture_f2() {
  auto c = std::make_shared<const SetCategory>(2, 2, 4);
  auto p = std::make_shared<const PowersetDoctrine>(c);
  ExistentialStructure e{projection_class(*c),
                         [p](const Arrow& f, Elem x) { return p->image(f, x); }};
  ElementaryStructure d{[p](ObjectId a) { return p->diagonal(a); }};
  return {"F2", c, p, std::move(e), std::move(d)};
}

Fixture fixture_monoid() {
  auto c = std::make_shared<const TableCategory>(
      TableCategory::monoid({"id", "s"}, {{0, 1}, {1, 0}}));
  std::vector<Elem> meet(16);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) meet[a * 4 + b] = a & b;
  TableLattice fiber({"{}", "{0}", "{1}", "{0,1}"}, 3, meet);
  std::map<Arrow, std::vector<Elem>> reindex;
  reindex[c->arrow(0)] = {0, 1, 2, 3};
  reindex[c->arrow(1)] = {0, 2, 1, 3};
  auto p = std::make_shared<const TableDoctrine>(c, std::vector<TableLattice>{fiber}, reindex);
  return {"monoid", c, p, identity_exists(identity_class(*c)), std::nullopt};
}

Fixture fixture_frobenius_mutant() {
  auto c = std::make_shared<const TableCategory>(TableCategory::chain(2));
  std::vector<TableLattice> fibers{TableLattice::chain(2), TableLattice::chain(3)};
  std::map<Arrow, std::vector<Elem>> reindex;
  const Arrow f = c->arrow_by_name("0<=1");
  reindex[c->identity(0)] = {0, 1};
  reindex[c->identity(1)] = {0, 1, 2};
  reindex[f] = {0, 0, 1};
  auto p = std::make_shared<const TableDoctrine>(c, std::move(fibers), std::move(reindex));
  ExistentialStructure e{projection_class(*c), [f](const Arrow& g, Elem x) -> Elem {
                           if (g == f) return x == 0 ? 0 : 2;
                           return x;
                         }};
  return {"frobenius-mutant", c, p, std::move(e), std::nullopt};
}

std::vector<std::string> builtin_fixture_names() { return {"F0", "F1", "F1c3", "F2", "monoid"}; }

Fixture fixture_by_name(const std::string& name) {
  if (name == "F0") return fixture_f0();
  if (name == "F1") return fixture_f1(2);
  if (name == "F1c3") return fixture_f1(3);
  if (name == "F2") return fixture_f2();
  if (name == "monoid") return fixture_monoid();
  throw InputError("unknown builtin fixture '" + name + "'");
}

DoctrineMorphism constant_top_morphism(const Doctrine& source, const Doctrine& target) {
  return {&source, &target, identity_functor(source.base()),
          [&target](ObjectId a, Elem) { return target.fiber(a).top(); }};
}

DoctrineMorphism uniform_morphism(const Doctrine& source, const Doctrine& target,
                                  std::vector<Elem> map) {
  if (&source.base() != &target.base())
    throw InputError("uniform morphism needs a shared base category");
  return {&source, &target, identity_functor(source.base()),
          [map = std::move(map)](ObjectId, Elem x) { return map.at(x); }};
}

}  // namespace exco
