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

#ifndef EXCO_SYNTACTIC_HPP
#define EXCO_SYNTACTIC_HPP

#include "exco/completion.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace exco {

/// Relational single-sorted signature; predicates are indexed in name order.
struct Signature {
  std::map<std::string, unsigned> predicates;

  [[nodiscard]] std::vector<std::string> names() const;
  [[nodiscard]] std::size_t index(const std::string& name) const;
  [[nodiscard]] unsigned arity(std::size_t index) const;
  [[nodiscard]] std::size_t size() const { return predicates.size(); }

  static Signature from_json(const nlohmann::json& j);
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Predicate index and argument variables. Variables 0..n-1 are the free
/// context, n.. are bound.
struct Atom {
  std::size_t pred = 0;
  std::vector<unsigned> args;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// exists y1..yk. (conjunction of atoms) over a context of free variables;
/// k = 0 gives a plain conjunctive formula.
struct ExistentialFormula {
  std::vector<std::string> context;
  unsigned bound = 0;
  std::vector<Atom> atoms;  // sorted, no duplicates

  [[nodiscard]] unsigned variables() const {
    return static_cast<unsigned>(context.size()) + bound;
  }
  [[nodiscard]] bool conjunctive() const { return bound == 0; }

  friend bool operator==(const ExistentialFormula&, const ExistentialFormula&) = default;
};

/// Thrown for syntax errors; `position` is a 0-based character offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Sorted atoms, bound variables renumbered to the least atom list.
ExistentialFormula canonicalize(ExistentialFormula f);

/// Grammar: formula := "T" | atom | formula "&" formula
///                   | "exists" varlist "." formula | "(" formula ")".
ExistentialFormula parse_formula(const Signature& sig, const std::string& text,
                                 const std::vector<std::string>& context);
std::string print_formula(const Signature& sig, const ExistentialFormula& f);

/// psi |- phi for conjunctive formulas: atoms(phi) within atoms(psi).
bool entails_conj(const ExistentialFormula& psi, const ExistentialFormula& phi);

/// Substitution along a context arrow f: n -> m (target variable j becomes
/// source variable f[j]); `phi` lives over m, the result over n.
ExistentialFormula reindex_syntactic(const ContextCategory& c, const Arrow& f,
                                     const ExistentialFormula& phi,
                                     const std::vector<std::string>& source_context);

/// Finite interpretation: tables[p] holds one flag per tuple, tuple index in
/// base-size digits with the first argument most significant.
struct Model {
  unsigned size = 0;
  std::vector<std::vector<bool>> tables;

  static Model empty(const Signature& sig, unsigned size);
  [[nodiscard]] bool holds(const Atom& a, const std::vector<unsigned>& env) const;
  [[nodiscard]] nlohmann::json to_json(const Signature& sig) const;
  static Model from_json(const Signature& sig, const nlohmann::json& j);
};

/// Satisfaction with bound witnesses searched exhaustively.
bool eval_on_model(const ExistentialFormula& f, const Model& m, const std::vector<unsigned>& env);

/// The atoms of f as a structure on its variables.
Model canonical_model(const Signature& sig, const ExistentialFormula& f);

struct Containment {
  bool contained = false;
  /// Image of every variable of the right-hand side (free ones fixed).
  std::vector<unsigned> witness;
  /// Canonical model of the left-hand side when not contained.
  std::optional<Model> countermodel;
};

/// lhs <= rhs: a variable map from rhs into lhs fixing the context and
/// sending rhs atoms into lhs atoms.
Containment cq_contains(const Signature& sig, const ExistentialFormula& lhs,
                        const ExistentialFormula& rhs);

/// Every model with at most `max_size` elements (size 0 only for empty
/// contexts) and every environment: lhs implies rhs.
bool semantic_containment(const Signature& sig, const ExistentialFormula& lhs,
                          const ExistentialFormula& rhs, unsigned max_size);

/// Conjunctive formulas over contexts as a primary doctrine on the context
/// category: fiber over n is the reversed powerset of atoms on n variables.
class SyntacticDoctrine final : public Doctrine {
 public:
  SyntacticDoctrine(Signature sig, std::shared_ptr<const ContextCategory> base);

  [[nodiscard]] const Category& base() const override { return *base_; }
  [[nodiscard]] bool has_fiber(ObjectId a) const override { return a <= base_->cap(); }
  [[nodiscard]] const Lattice& fiber(ObjectId a) const override;
  [[nodiscard]] Elem reindex(const Arrow& f, Elem beta) const override;

  [[nodiscard]] const Signature& signature() const { return sig_; }
  [[nodiscard]] const ContextCategory& contexts() const { return *base_; }
  [[nodiscard]] std::size_t atom_count(ObjectId n) const { return atoms_.at(n).size(); }
  [[nodiscard]] Elem encode(ObjectId n, const std::vector<Atom>& atoms) const;
  [[nodiscard]] std::vector<Atom> decode(ObjectId n, Elem x) const;
  /// The pair (first-n-coordinates projection, matrix).
  [[nodiscard]] CompletionElement to_completion(const ExistentialFormula& f) const;

 private:
  Signature sig_;
  std::shared_ptr<const ContextCategory> base_;
  std::vector<std::vector<Atom>> atoms_;
  std::vector<std::map<Atom, unsigned>> atom_index_;
  std::vector<PowersetLattice> fibers_;
};

struct FragmentBounds {
  Signature signature;
  unsigned max_context = 2;
  unsigned max_bound = 1;
  unsigned max_atoms = 2;
  /// 0: every pair; otherwise this many seeded random pairs.
  std::size_t sample = 0;
  std::uint64_t seed = 1;
  std::size_t budget = 100000;
};

/// All canonical formulas of the bounded fragment over n free variables.
std::vector<ExistentialFormula> enumerate_fragment(const FragmentBounds& b, unsigned context);

struct ComparisonResult {
  Report report;
  std::size_t formulas = 0;
  std::size_t pairs = 0;
  std::size_t contained = 0;
  /// Classes under mutual containment, per context size.
  std::vector<std::size_t> classes;
};

/// Completion order on the syntactic doctrine against cq_contains.
ComparisonResult compare_with_completion(const FragmentBounds& b);

/// Random formula with `context` free variables, at most `max_vars`
/// variables in total and at most `max_atoms` atoms.
ExistentialFormula random_formula(const Signature& sig, unsigned context, unsigned max_vars,
                                  unsigned max_atoms, std::mt19937_64& rng);

/// Formula implied by `f`: a random subset of its atoms with bound-variable
/// occurrences split among fresh variables, at most `max_vars` in total.
ExistentialFormula random_weakening(const ExistentialFormula& f, unsigned max_vars,
                                    std::mt19937_64& rng);

}  // namespace exco

#endif  // EXCO_SYNTACTIC_HPP
