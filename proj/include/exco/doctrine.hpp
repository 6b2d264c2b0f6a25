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

#ifndef EXCO_DOCTRINE_HPP
#define EXCO_DOCTRINE_HPP

#include "exco/fincat.hpp"
#include "exco/lattice.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace exco {

using ElemMap = std::map<Elem, Elem>;

/// Primary doctrine: a fiber lattice per object and a reindexing map
/// P_f: P(tgt f) -> P(src f) per arrow.
class Doctrine {
 public:
  virtual ~Doctrine() = default;

  [[nodiscard]] virtual const Category& base() const = 0;
  [[nodiscard]] virtual bool has_fiber(ObjectId a) const { return base().is_listed(a); }
  [[nodiscard]] virtual const Lattice& fiber(ObjectId a) const = 0;
  [[nodiscard]] virtual Elem reindex(const Arrow& f, Elem beta) const = 0;

  /// Some w: src h -> src f with f . w == h and alpha <= P_w(gamma); the
  /// default enumerates hom(src h, src f).
  [[nodiscard]] virtual std::optional<Arrow> find_mediator(const Arrow& h, Elem alpha,
                                                           const Arrow& f, Elem gamma) const;

  [[nodiscard]] std::vector<Elem> elements(ObjectId a) const { return fiber(a).elements(); }
  [[nodiscard]] std::string element_name(ObjectId a, Elem x) const { return fiber(a).name(x); }
};

/// Left adjoints along the arrows of a class.
struct ExistentialStructure {
  ArrowClass lambda;
  std::function<Elem(const Arrow&, Elem)> exists;
};

/// delta(A) is an element of P(A x A) for the designated product.
struct ElementaryStructure {
  std::function<Elem(ObjectId)> delta;
};

/// Fibers given as explicit lattices, reindexing as explicit tables.
class TableDoctrine final : public Doctrine {
 public:
  /// `fibers[a]` for each listed object; `reindex[f]` lists P_f(y) for the
  /// elements y of P(tgt f) in element order.
  TableDoctrine(std::shared_ptr<const Category> base, std::vector<TableLattice> fibers,
                std::map<Arrow, std::vector<Elem>> reindex);

  [[nodiscard]] const Category& base() const override { return *base_; }
  [[nodiscard]] const Lattice& fiber(ObjectId a) const override;
  [[nodiscard]] Elem reindex(const Arrow& f, Elem beta) const override;

  [[nodiscard]] std::shared_ptr<const Category> base_ptr() const { return base_; }
  [[nodiscard]] const std::map<Arrow, std::vector<Elem>>& tables() const { return reindex_; }
  /// Copy with one reindexing entry replaced (mutation testing).
  [[nodiscard]] TableDoctrine with_entry(const Arrow& f, Elem beta, Elem value) const;

  /// Same lattice at every object, every reindexing the identity.
  static TableDoctrine constant(std::shared_ptr<const Category> base, const TableLattice& fiber);

 private:
  std::shared_ptr<const Category> base_;
  std::vector<TableLattice> fibers_;
  std::map<Arrow, std::vector<Elem>> reindex_;
};

/// Subsets of each power of a finite set; reindexing is preimage.
class PowersetDoctrine final : public Doctrine {
 public:
  explicit PowersetDoctrine(std::shared_ptr<const SetCategory> base);

  [[nodiscard]] const Category& base() const override { return *base_; }
  [[nodiscard]] bool has_fiber(ObjectId a) const override { return a <= base_->cap(); }
  [[nodiscard]] const Lattice& fiber(ObjectId a) const override;
  [[nodiscard]] Elem reindex(const Arrow& f, Elem beta) const override;
  /// Pointwise choice: for each point the least admissible preimage.
  [[nodiscard]] std::optional<Arrow> find_mediator(const Arrow& h, Elem alpha, const Arrow& f,
                                                   Elem gamma) const override;

  [[nodiscard]] Elem image(const Arrow& f, Elem alpha) const;
  [[nodiscard]] Elem diagonal(ObjectId a) const;
  [[nodiscard]] const SetCategory& sets() const { return *base_; }
  [[nodiscard]] std::shared_ptr<const SetCategory> base_ptr() const { return base_; }

 private:
  std::shared_ptr<const SetCategory> base_;
  std::vector<PowersetLattice> fibers_;
};

/// Doctrine morphism (F, b): P -> R.
struct DoctrineMorphism {
  const Doctrine* source = nullptr;
  const Doctrine* target = nullptr;
  Functor functor;
  std::function<Elem(ObjectId, Elem)> b;
};

DoctrineMorphism identity_morphism(const Doctrine& p);
DoctrineMorphism compose_morphisms(const DoctrineMorphism& n, const DoctrineMorphism& m);

/// theta: F => G with b_A(alpha) <= R_{theta_A}(c_A(alpha)).
struct TwoCell {
  const DoctrineMorphism* from = nullptr;
  const DoctrineMorphism* to = nullptr;
  NatTransformation theta;
};

TwoCell identity_two_cell(const DoctrineMorphism& m);
/// Vertical composite: first `inner` (m => n), then `outer` (n => k).
TwoCell vertical_compose(const TwoCell& outer, const TwoCell& inner);

enum class MorphismKind { Primary, Existential, Elementary };

/// Optional structure carried by the two ends of a morphism.
struct MorphismStructure {
  const ExistentialStructure* source_exists = nullptr;
  const ExistentialStructure* target_exists = nullptr;
  const ElementaryStructure* source_delta = nullptr;
  const ElementaryStructure* target_delta = nullptr;
};

Report check_primary(const Doctrine& p);
/// Least-preimage left adjoint of P_f, when one exists for every element.
std::optional<ElemMap> find_left_adjoint(const Doctrine& p, const Arrow& f);
Report check_existential(const Doctrine& p, const ExistentialStructure& e);
Report check_elementary(const Doctrine& p, const ElementaryStructure& d);
/// exists_{pr2}(P_{f x id}(delta_B) ^ P_{pr1}(alpha)) for every alpha in P(A).
ElemMap derived_exists(const Doctrine& p, const ExistentialStructure& e,
                       const ElementaryStructure& d, const Arrow& f);
Report check_morphism(MorphismKind kind, const DoctrineMorphism& m,
                      const MorphismStructure& structure = {});
Report check_two_cell(const TwoCell& t);

/// Adjunction exists_f(a) <= b iff a <= P_f(b) for one arrow.
Report check_adjunction(const Doctrine& p, const Arrow& f,
                        const std::function<Elem(Elem)>& left);

}  // namespace exco

#endif  // EXCO_DOCTRINE_HPP
