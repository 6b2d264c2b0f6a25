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

#ifndef EXCO_EXACTCOMP_HPP
#define EXCO_EXACTCOMP_HPP

#include "exco/completion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exco {

/// (A, rho) with rho in P(A x A x C).
struct PerObject {
  std::string name;
  ObjectId a = 0;
  ObjectId c = 0;
  Elem rho = 0;
  std::optional<Arrow> symmetry;      // f: A x A x C -> C
  std::optional<Arrow> transitivity;  // g: A x A x A x C -> C
};

/// phi in P(A x B x E) between two objects.
struct PerMorphism {
  PerObject source;
  PerObject target;
  ObjectId e = 0;
  Elem phi = 0;
};

/// Witnesses found for the five morphism clauses.
struct MorphismWitnesses {
  Arrow f1, f2, h, k, l, g1, g2;
};

enum class CompositionRule {
  Standard,
  /// Mutant that keeps only the first relation (testing).
  DropRight,
};

class ExactCompletion {
 public:
  ExactCompletion(std::shared_ptr<const Doctrine> p, ElementaryStructure delta);

  [[nodiscard]] const Doctrine& doctrine() const { return *p_; }
  [[nodiscard]] const Category& base() const { return p_->base(); }
  [[nodiscard]] const Completion& completion() const { return raw_; }

  /// (A, delta_A) with trivial parameter.
  [[nodiscard]] PerObject diagonal_object(ObjectId a, const std::string& name) const;
  /// (1, top) with trivial parameter.
  [[nodiscard]] PerObject terminal_object(const std::string& name) const;

  /// Both object conditions; fills the witnesses on success.
  Report check_object(PerObject& o) const;
  /// Clauses 1-5 in order; the first failing clause is reported.
  Report check_morphism(const PerMorphism& m, MorphismWitnesses* found = nullptr) const;

  [[nodiscard]] PerMorphism identity(const PerObject& o) const;
  /// psi . phi with parameter B x E x E'.
  [[nodiscard]] PerMorphism compose(const PerMorphism& phi, const PerMorphism& psi,
                                    CompositionRule rule = CompositionRule::Standard) const;
  /// The pair (A x B x E -> A x B, phi).
  [[nodiscard]] CompletionElement packaged(const PerMorphism& m) const;
  /// Mutual order in the completion over A x B.
  [[nodiscard]] bool equal(const PerMorphism& x, const PerMorphism& y) const;
  /// Graph of u: A -> B between diagonal objects.
  [[nodiscard]] PerMorphism graph(const Arrow& u, const PerObject& source,
                                  const PerObject& target) const;

  /// The same conditions read in the completion: strict, compatible,
  /// single-valued and entire relation between the packaged objects.
  Report check_completion_reading(const PerMorphism& m) const;
  /// Symmetry and transitivity of the packaged relation in the completion.
  Report check_object_completion_reading(const PerObject& o) const;

 private:
  std::shared_ptr<const Doctrine> p_;
  ElementaryStructure delta_;
  Completion raw_;
};

struct ExactCategoryResult {
  Report report;
  std::vector<PerObject> objects;
  /// Class representatives, with their source and target object indices.
  std::vector<PerMorphism> morphisms;
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  /// (g, f, g.f) by morphism index.
  std::vector<std::array<std::size_t, 3>> composition;
  std::vector<std::size_t> identities;
  std::size_t candidates = 0;
  std::size_t cross_checked = 0;
};

/// Enumerates every phi over the listed parameters between the listed
/// objects, keeps those passing clauses 1-5, quotients by `equal`, and checks
/// the category laws and the completion reading.
ExactCategoryResult verify_category(const ExactCompletion& ex, std::vector<PerObject> objects,
                                    const std::vector<ObjectId>& parameters, std::size_t budget,
                                    CompositionRule rule = CompositionRule::Standard);

nlohmann::json to_json(const ExactCompletion& ex, const ExactCategoryResult& r);

}  // namespace exco

#endif  // EXCO_EXACTCOMP_HPP
