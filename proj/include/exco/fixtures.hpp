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

#ifndef EXCO_FIXTURES_HPP
#define EXCO_FIXTURES_HPP

#include "exco/doctrine.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace exco {

/// A doctrine with its quantifier structure over a class of arrows and,
/// when present, fibered equality.
struct Fixture {
  std::string name;
  std::shared_ptr<const Category> category;
  std::shared_ptr<const Doctrine> doctrine;
  ExistentialStructure exists;
  std::optional<ElementaryStructure> delta;
};

/// One object, identity only, 2-chain fiber.
Fixture fixture_f0();
/// Chain 0 <= 1 <= 2 with constant chain fibers of the given height.
Fixture fixture_f1(std::size_t fiber_height = 2);
/// Powerset doctrine on 1, X, X^2 with X = {0,1}; products up to X^4.
Fixture fixture_f2();
/// One-object monoid {id, s}, s.s = id, fiber P({0,1}), P_s swapping points.
Fixture fixture_monoid();
/// Chain 0 <= 1 with fibers 2-chain over 0 and 3-chain over 1; the
/// quantifier along 0 <= 1 is a left adjoint but Frobenius fails.
Fixture fixture_frobenius_mutant();

/// Builtin names accepted by `fixture_by_name`: F0, F1, F1c3, F2, monoid.
std::vector<std::string> builtin_fixture_names();
Fixture fixture_by_name(const std::string& name);

/// PD 1-cell with identity functor and every b_A constant at top.
DoctrineMorphism constant_top_morphism(const Doctrine& source, const Doctrine& target);
/// PD 1-cell between doctrines on the same base with the identity functor
/// and one map of fiber elements used at every object.
DoctrineMorphism uniform_morphism(const Doctrine& source, const Doctrine& target,
                                  std::vector<Elem> map);

}  // namespace exco

#endif  // EXCO_FIXTURES_HPP
