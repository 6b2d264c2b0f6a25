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

#ifndef EXCO_COMPLETION_HPP
#define EXCO_COMPLETION_HPP

#include "exco/doctrine.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace exco {

inline constexpr std::size_t kDefaultCompletionBudget = 20000;

/// A pair (g: B -> A in the class, alpha in P(B)).
struct CompletionElement {
  Arrow witness;
  Elem payload = 0;

  friend auto operator<=>(const CompletionElement&, const CompletionElement&) = default;
};

/// Operations on unquotiented pairs.
class Completion {
 public:
  Completion(std::shared_ptr<const Doctrine> p, ArrowClass lambda);

  [[nodiscard]] const Doctrine& doctrine() const { return *p_; }
  [[nodiscard]] std::shared_ptr<const Doctrine> doctrine_ptr() const { return p_; }
  [[nodiscard]] const ArrowClass& lambda() const { return lambda_; }
  [[nodiscard]] const Category& base() const { return p_->base(); }

  [[nodiscard]] CompletionElement top(ObjectId a) const;
  [[nodiscard]] CompletionElement embed(ObjectId a, Elem alpha) const;
  /// Mediating arrow w witnessing x <= y, if any.
  [[nodiscard]] std::optional<Arrow> leq(const CompletionElement& x,
                                         const CompletionElement& y) const;
  [[nodiscard]] bool equivalent(const CompletionElement& x, const CompletionElement& y) const;
  /// Pullback formula: (h . g', P_g'(alpha) ^ P_h'(gamma)).
  [[nodiscard]] CompletionElement meet(const CompletionElement& x,
                                       const CompletionElement& y) const;
  /// (g', P_f'(gamma)) along the chosen pullback of g along f.
  [[nodiscard]] CompletionElement reindex(const Arrow& f, const CompletionElement& y) const;
  /// (f . h, alpha) for f in the class.
  [[nodiscard]] CompletionElement exists(const Arrow& f, const CompletionElement& x) const;
  /// Pairs whose witness source is listed or equal to `a`, in canonical
  /// order (source, witness code, payload).
  [[nodiscard]] std::vector<CompletionElement> raw_elements(ObjectId a) const;

  [[nodiscard]] std::string name(const CompletionElement& x) const;
  [[nodiscard]] nlohmann::json to_json(const CompletionElement& x) const;
  void validate(const CompletionElement& x) const;

 private:
  std::shared_ptr<const Doctrine> p_;
  ArrowClass lambda_;
};

/// Equivalence classes of pairs over one object. Element i is the class
/// whose canonical representative is the i-th minimal pair. Meets are
/// computed on demand by the pullback formula and memoized.
class CompletionFiber final : public Lattice {
 public:
  CompletionFiber(const Completion& c, ObjectId a, std::size_t budget);

  [[nodiscard]] std::uint64_t size() const override { return reps_.size(); }
  [[nodiscard]] Elem top() const override { return top_; }
  [[nodiscard]] Elem meet(Elem a, Elem b) const override;
  [[nodiscard]] bool contains(Elem a) const override { return a < reps_.size(); }
  [[nodiscard]] std::vector<Elem> elements() const override;
  [[nodiscard]] std::string name(Elem a) const override;
  [[nodiscard]] Elem parse(const std::string& name) const override;

  [[nodiscard]] ObjectId object() const { return object_; }
  [[nodiscard]] const std::vector<CompletionElement>& raw() const { return raw_; }
  [[nodiscard]] Elem class_of_raw(std::size_t i) const { return class_of_raw_.at(i); }
  [[nodiscard]] const CompletionElement& representative(Elem cls) const { return reps_.at(cls); }
  /// Order between classes as decided by mediator search.
  [[nodiscard]] bool order(Elem a, Elem b) const { return order_.at(a).at(b); }
  [[nodiscard]] std::optional<Elem> find_class(const CompletionElement& x) const;
  /// Class of an arbitrary pair over this object; throws if none matches.
  [[nodiscard]] Elem classify(const CompletionElement& x) const;

 private:
  const Completion* c_;
  ObjectId object_;
  std::vector<CompletionElement> raw_;
  std::map<CompletionElement, Elem> raw_index_;
  std::vector<Elem> class_of_raw_;
  std::vector<CompletionElement> reps_;
  std::vector<std::vector<bool>> order_;
  Elem top_ = 0;
  mutable std::mutex mutex_;
  mutable std::vector<std::int64_t> meets_;
};

/// The completed doctrine P^e: classes as fibers, reindexing and the
/// quantifiers along the class computed on representatives.
class CompletedDoctrine final : public Doctrine {
 public:
  CompletedDoctrine(std::shared_ptr<const Doctrine> p, ArrowClass lambda,
                    std::size_t budget = kDefaultCompletionBudget);

  [[nodiscard]] const Category& base() const override { return raw_.base(); }
  [[nodiscard]] bool has_fiber(ObjectId a) const override { return base().is_listed(a); }
  [[nodiscard]] const Lattice& fiber(ObjectId a) const override { return completion_fiber(a); }
  [[nodiscard]] Elem reindex(const Arrow& f, Elem cls) const override;

  [[nodiscard]] const CompletionFiber& completion_fiber(ObjectId a) const;
  [[nodiscard]] const Completion& raw() const { return raw_; }
  [[nodiscard]] const Doctrine& original() const { return raw_.doctrine(); }
  [[nodiscard]] const ArrowClass& lambda() const { return raw_.lambda(); }
  [[nodiscard]] std::size_t budget() const { return budget_; }

  [[nodiscard]] Elem classify(ObjectId a, const CompletionElement& x) const;
  [[nodiscard]] const CompletionElement& representative(ObjectId a, Elem cls) const;
  [[nodiscard]] Elem exists(const Arrow& f, Elem cls) const;
  /// Class of (id_A, alpha).
  [[nodiscard]] Elem embed(ObjectId a, Elem alpha) const;
  [[nodiscard]] ExistentialStructure existential_structure() const;

 private:
  Completion raw_;
  std::size_t budget_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<ObjectId, std::unique_ptr<CompletionFiber>> fibers_;
  mutable std::map<std::pair<Arrow, Elem>, Elem> reindex_cache_;
};

std::shared_ptr<CompletedDoctrine> complete(std::shared_ptr<const Doctrine> p, ArrowClass lambda,
                                            std::size_t budget = kDefaultCompletionBudget);

/// Primary and existential laws of P^e, plus: order matrix agrees with the
/// meet-derived order, reindexing and meets independent of representatives,
/// and Beck-Chevalley on chosen squares with unlisted apex.
Report check_completion(const CompletedDoctrine& pe);

/// iota: P -> P^e, alpha |-> (id, alpha).
DoctrineMorphism unit(const CompletedDoctrine& pe);
/// zeta: P^e -> P, (f, alpha) |-> exists_f(alpha).
DoctrineMorphism counit(const CompletedDoctrine& pe, const ExistentialStructure& e);
/// zeta takes equal values on every pair of a class.
Report check_counit_well_defined(const CompletedDoctrine& pe, const ExistentialStructure& e);
/// E(F, b) = (F, b^e) with b^e(g, alpha) = (Fg, b(alpha)).
DoctrineMorphism map_E(const DoctrineMorphism& m, const CompletedDoctrine& pe,
                       const CompletedDoctrine& re);
/// mu = zeta of P^e: (P^e)^e -> P^e; `pee` must complete `pe`.
DoctrineMorphism mu(const CompletedDoctrine& pe, const CompletedDoctrine& pee);

/// zeta . iota = id on P.
Report check_unit_counit(const CompletedDoctrine& pe, const ExistentialStructure& e);
/// The four composites mu.T(mu), mu.mu_T on T^3 and mu.eta_T, mu.T(eta) on T.
/// eps_{P^e} . (eta_P)^e = id on every fiber of P^e.
Report check_triangle(const CompletedDoctrine& pe, const CompletedDoctrine& pee);
Report check_monad_laws(const CompletedDoctrine& pe, const CompletedDoctrine& pee);
/// a . iota = id and a . mu = a . E(a), evaluated on pairs of (P^e)^e.
Report check_algebra(const CompletedDoctrine& pe, const DoctrineMorphism& a);
/// exists_f(alpha) = a_B(class of (f, alpha)).
ExistentialStructure existential_from_algebra(const CompletedDoctrine& pe,
                                              const DoctrineMorphism& a);

struct LaxIdempotenceResult {
  Report report;
  std::size_t candidates = 0;        // natural transformations F => F
  std::size_t satisfying_cell = 0;   // satisfying the 2-cell inequality
  std::size_t satisfying_all = 0;    // also both coherence conditions
};

/// For algebras (P, zeta_P), (R, zeta_R) and a PD 1-cell m: identity 2-cell
/// satisfies the lax inequality and is the only coherent 2-cell among all
/// natural transformations F => F.
LaxIdempotenceResult check_lax_idempotent_instance(const CompletedDoctrine& pe,
                                                   const ExistentialStructure& ep,
                                                   const CompletedDoctrine& re,
                                                   const ExistentialStructure& er,
                                                   const DoctrineMorphism& m,
                                                   std::size_t budget = 1u << 20);

struct KzResult {
  Report report;
  std::size_t checked = 0;
  std::size_t strict = 0;
};

/// y <= iota_{P^e}(mu(y)) for every class y of (P^e)^e.
KzResult check_kz_comparison(const CompletedDoctrine& pe, const CompletedDoctrine& pee);

/// delta^e_A = exists^e_{Delta_A}(top), the class of (id_{AxA}, delta_A).
ElementaryStructure elementary_completion(const CompletedDoctrine& pe,
                                          const ElementaryStructure& d);
/// exists^e_{Delta_A x id_C} applied to a pair over A x C, as a pair over
/// A x A x C (left-nested products).
CompletionElement exists_diagonal(const CompletedDoctrine& pe, const ElementaryStructure& d,
                                  ObjectId a, ObjectId c, const CompletionElement& x);
/// check_elementary on P^e with delta^e, then both forms of the identity
/// exists^e_{Delta x id}(x) = P^e_<pr2,pr3>(x) ^ P^e_<pr1,pr2>(delta^e).
Report check_elementary_completion(const CompletedDoctrine& pe, const ElementaryStructure& d);

}  // namespace exco

#endif  // EXCO_COMPLETION_HPP
