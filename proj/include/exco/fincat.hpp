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

#ifndef EXCO_FINCAT_HPP
#define EXCO_FINCAT_HPP

#include "exco/report.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace exco {

using ObjectId = std::uint32_t;

/// An arrow is identified by (source, target, code). The code is an index for
/// table categories and a packed function table for concrete ones, so two
/// arrows are equal iff they denote the same morphism.
struct Arrow {
  ObjectId src = 0;
  ObjectId tgt = 0;
  std::uint64_t code = 0;

  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// Designated binary product: object with its two projections.
struct Product {
  ObjectId object = 0;
  Arrow pr1;
  Arrow pr2;
};

/// Chosen pullback of g: C -> B (the arrow class member) along f: A -> B.
/// `lambda_leg`: apex -> A is parallel to g; `other_leg`: apex -> C.
/// Commutes as g . other_leg == f . lambda_leg.
struct Pullback {
  ObjectId apex = 0;
  Arrow lambda_leg;
  Arrow other_leg;
};

/// A finite category with designated (possibly partial) products and a
/// pullback chooser. `objects()` lists the enumerable objects; concrete
/// categories may admit further objects (e.g. higher powers) reachable only
/// through products and pullbacks.
class Category {
 public:
  virtual ~Category() = default;

  [[nodiscard]] virtual std::vector<ObjectId> objects() const = 0;
  [[nodiscard]] virtual bool has_object(ObjectId a) const = 0;
  [[nodiscard]] virtual bool is_listed(ObjectId a) const;
  [[nodiscard]] virtual std::string object_name(ObjectId a) const = 0;
  [[nodiscard]] virtual std::string arrow_name(const Arrow& f) const = 0;
  [[nodiscard]] virtual ObjectId object_by_name(const std::string& name) const;
  [[nodiscard]] virtual Arrow arrow_by_name(const std::string& name) const;

  [[nodiscard]] virtual Arrow identity(ObjectId a) const = 0;
  /// g . f, undefined entries yield nullopt (table categories only).
  [[nodiscard]] virtual std::optional<Arrow> try_compose(const Arrow& g,
                                                         const Arrow& f) const = 0;
  /// g . f; throws InputError when not composable or undefined.
  [[nodiscard]] Arrow compose(const Arrow& g, const Arrow& f) const;

  /// Visits hom(a, b) in canonical order until `visit` returns false.
  /// Returns false iff stopped early.
  virtual bool for_each_arrow(ObjectId a, ObjectId b,
                              const std::function<bool(const Arrow&)>& visit) const = 0;
  [[nodiscard]] virtual std::uint64_t hom_size(ObjectId a, ObjectId b) const = 0;
  [[nodiscard]] std::vector<Arrow> hom(ObjectId a, ObjectId b) const;
  /// Every arrow between listed objects.
  [[nodiscard]] std::vector<Arrow> arrows() const;

  [[nodiscard]] virtual std::optional<ObjectId> terminal() const = 0;
  [[nodiscard]] Arrow to_terminal(ObjectId a) const;
  [[nodiscard]] virtual std::optional<Product> product(ObjectId a, ObjectId b) const = 0;
  /// The mediating arrow <f, g> into a declared product.
  [[nodiscard]] virtual Arrow pair(const Product& p, const Arrow& f, const Arrow& g) const;
  [[nodiscard]] Product require_product(ObjectId a, ObjectId b) const;

  /// Designated pullback of g along f; nullopt when the category has no
  /// chosen square for this pair.
  [[nodiscard]] virtual std::optional<Pullback> choose_pullback(const Arrow& g,
                                                                const Arrow& f) const;
};

/// Left-nested n-ary product ((A1 x A2) x A3) ... with coordinate projections.
/// Zero factors give the terminal object; one factor gives the object itself.
struct NaryProduct {
  ObjectId object = 0;
  std::vector<ObjectId> factors;
  std::vector<Arrow> projections;
};

NaryProduct nary_product(const Category& c, std::span<const ObjectId> factors);
/// <f1, ..., fn> into an n-ary product; all fi share a source.
Arrow tuple_into(const Category& c, const NaryProduct& into, std::span<const Arrow> parts,
                 ObjectId source);

/// A class of arrows (the class along which quantifiers are added).
class ArrowClass {
 public:
  ArrowClass() = default;
  ArrowClass(std::function<bool(const Arrow&)> contains, std::string description)
      : contains_(std::move(contains)), description_(std::move(description)) {}

  [[nodiscard]] bool contains(const Arrow& f) const { return contains_ && contains_(f); }
  [[nodiscard]] const std::string& description() const { return description_; }
  /// Members with listed source and the given target, in canonical order.
  [[nodiscard]] std::vector<Arrow> members_into(const Category& c, ObjectId target) const;
  /// Members between listed objects.
  [[nodiscard]] std::vector<Arrow> members(const Category& c) const;

 private:
  std::function<bool(const Arrow&)> contains_;
  std::string description_;
};

/// Explicitly tabulated category. Arrow code = arrow index.
class TableCategory final : public Category {
 public:
  struct ArrowSpec {
    std::string name;
    ObjectId src;
    ObjectId tgt;
  };
  struct ProductSpec {
    ObjectId left, right, object;
    std::uint64_t pr1, pr2;
  };

  TableCategory(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                std::vector<std::uint64_t> identities,
                std::vector<std::array<std::uint64_t, 3>> compose_entries,
                std::optional<ObjectId> terminal, std::vector<ProductSpec> products);

  [[nodiscard]] std::vector<ObjectId> objects() const override;
  [[nodiscard]] bool has_object(ObjectId a) const override { return a < objects_.size(); }
  [[nodiscard]] std::string object_name(ObjectId a) const override;
  [[nodiscard]] std::string arrow_name(const Arrow& f) const override;
  [[nodiscard]] Arrow identity(ObjectId a) const override;
  [[nodiscard]] std::optional<Arrow> try_compose(const Arrow& g, const Arrow& f) const override;
  bool for_each_arrow(ObjectId a, ObjectId b,
                      const std::function<bool(const Arrow&)>& visit) const override;
  [[nodiscard]] std::uint64_t hom_size(ObjectId a, ObjectId b) const override;
  [[nodiscard]] std::optional<ObjectId> terminal() const override { return terminal_; }
  [[nodiscard]] std::optional<Product> product(ObjectId a, ObjectId b) const override;
  [[nodiscard]] std::optional<Pullback> choose_pullback(const Arrow& g,
                                                        const Arrow& f) const override;

  [[nodiscard]] Arrow arrow(std::uint64_t index) const;
  [[nodiscard]] std::size_t arrow_count() const { return arrows_.size(); }
  [[nodiscard]] const std::vector<ProductSpec>& product_specs() const { return products_; }
  /// Copy with one composition entry replaced (mutation testing).
  [[nodiscard]] TableCategory with_compose(std::uint64_t g, std::uint64_t f,
                                           std::uint64_t gf) const;

  /// One object, identity only; the product 1 x 1 = 1 is declared.
  static TableCategory one_object();
  /// Poset category of the chain 0 <= 1 <= ... <= n-1 with products = min,
  /// terminal = n-1.
  static TableCategory chain(std::size_t n);
  /// One-object category of a finite monoid given by its multiplication
  /// table (element 0 is the unit). No products are declared.
  static TableCategory monoid(std::vector<std::string> names,
                              const std::vector<std::vector<std::size_t>>& mult);

 private:
  std::vector<std::string> objects_;
  std::vector<ArrowSpec> arrows_;
  std::vector<std::uint64_t> identities_;
  std::vector<std::int64_t> compose_;  // dense n*n, -1 = undefined
  std::optional<ObjectId> terminal_;
  std::vector<ProductSpec> products_;
  std::vector<std::vector<std::vector<std::uint64_t>>> homs_;
};

/// Coordinate block X^p x X^m x X^q -> X^m of a power category.
struct Block {
  unsigned before = 0;
  unsigned width = 0;
  unsigned after = 0;
};

/// Category whose objects are the powers 0, 1, 2, ... of a generating object,
/// with strict products (a x b = a + b, projections = coordinate blocks).
/// Objects up to `listed` are enumerable; products and pullbacks reach up to
/// `cap`.
class PowerCategory : public Category {
 public:
  PowerCategory(unsigned listed, unsigned cap) : listed_(listed), cap_(cap) {}

  [[nodiscard]] std::vector<ObjectId> objects() const override;
  [[nodiscard]] bool has_object(ObjectId a) const override { return a <= cap_; }
  [[nodiscard]] std::optional<ObjectId> terminal() const override { return 0; }
  [[nodiscard]] std::optional<Product> product(ObjectId a, ObjectId b) const override;
  [[nodiscard]] Arrow pair(const Product& p, const Arrow& f, const Arrow& g) const override;
  [[nodiscard]] std::optional<Pullback> choose_pullback(const Arrow& g,
                                                        const Arrow& f) const override;

  /// Coordinates [before, before + width) of the power `n`.
  [[nodiscard]] virtual Arrow block(ObjectId n, unsigned before, unsigned width) const = 0;
  /// Concatenation of the outputs of arrows sharing a source.
  [[nodiscard]] virtual Arrow tuple(ObjectId source, std::span<const Arrow> parts) const = 0;
  /// First block decomposition of f, if f is a coordinate block.
  [[nodiscard]] std::optional<Block> as_block(const Arrow& f) const;
  /// Selection of arbitrary coordinates of `n` (repetitions allowed).
  [[nodiscard]] Arrow select(ObjectId n, std::span<const unsigned> coords) const;

  [[nodiscard]] unsigned listed() const { return listed_; }
  [[nodiscard]] unsigned cap() const { return cap_; }
  void require_power(ObjectId n) const;

 private:
  unsigned listed_;
  unsigned cap_;
};

/// Full subcategory of finite sets on the powers X^k of an s-element set;
/// arrows are all functions. Points of X^k are base-s digit strings (first
/// coordinate most significant). Limited to at most 16 points per object.
class SetCategory final : public PowerCategory {
 public:
  SetCategory(unsigned base_size, unsigned listed, unsigned cap);

  [[nodiscard]] std::string object_name(ObjectId a) const override;
  [[nodiscard]] std::string arrow_name(const Arrow& f) const override;
  [[nodiscard]] ObjectId object_by_name(const std::string& name) const override;
  [[nodiscard]] Arrow arrow_by_name(const std::string& name) const override;
  [[nodiscard]] Arrow identity(ObjectId a) const override;
  [[nodiscard]] std::optional<Arrow> try_compose(const Arrow& g, const Arrow& f) const override;
  bool for_each_arrow(ObjectId a, ObjectId b,
                      const std::function<bool(const Arrow&)>& visit) const override;
  [[nodiscard]] std::uint64_t hom_size(ObjectId a, ObjectId b) const override;
  [[nodiscard]] Arrow block(ObjectId n, unsigned before, unsigned width) const override;
  [[nodiscard]] Arrow tuple(ObjectId source, std::span<const Arrow> parts) const override;

  [[nodiscard]] unsigned base_size() const { return base_; }
  [[nodiscard]] unsigned points(ObjectId k) const;
  [[nodiscard]] std::string point_name(ObjectId k, unsigned point) const;
  /// Value of f at a point of its source.
  [[nodiscard]] static unsigned apply(const Arrow& f, unsigned point) {
    return static_cast<unsigned>((f.code >> (4 * point)) & 0xF);
  }
  [[nodiscard]] Arrow from_table(ObjectId src, ObjectId tgt,
                                 std::span<const unsigned> table) const;

 private:
  unsigned base_;
};

/// Category of variable contexts and variable-for-variable substitutions:
/// an arrow n -> m assigns to each of the m target variables one of the n
/// source variables. Products are concatenation of contexts.
class ContextCategory final : public PowerCategory {
 public:
  ContextCategory(unsigned listed, unsigned cap);

  [[nodiscard]] std::string object_name(ObjectId a) const override;
  [[nodiscard]] std::string arrow_name(const Arrow& f) const override;
  [[nodiscard]] Arrow identity(ObjectId a) const override;
  [[nodiscard]] std::optional<Arrow> try_compose(const Arrow& g, const Arrow& f) const override;
  bool for_each_arrow(ObjectId a, ObjectId b,
                      const std::function<bool(const Arrow&)>& visit) const override;
  [[nodiscard]] std::uint64_t hom_size(ObjectId a, ObjectId b) const override;
  [[nodiscard]] Arrow block(ObjectId n, unsigned before, unsigned width) const override;
  [[nodiscard]] Arrow tuple(ObjectId source, std::span<const Arrow> parts) const override;

  /// Source variable substituted for target variable j.
  [[nodiscard]] static unsigned image(const Arrow& f, unsigned j) {
    return static_cast<unsigned>((f.code >> (4 * j)) & 0xF);
  }
  [[nodiscard]] Arrow from_images(ObjectId src, std::span<const unsigned> images) const;
};

struct Functor {
  const Category* source = nullptr;
  const Category* target = nullptr;
  std::function<ObjectId(ObjectId)> object;
  std::function<Arrow(const Arrow&)> arrow;
};

Functor identity_functor(const Category& c);
Functor compose_functors(const Functor& g, const Functor& f);

struct NatTransformation {
  const Functor* from = nullptr;
  const Functor* to = nullptr;
  std::map<ObjectId, Arrow> components;
};

NatTransformation identity_transformation(const Functor& f);

Report check_category(const Category& c);
Report check_functor(const Functor& f);
/// Strict preservation of every declared product among listed objects.
Report check_product_preserving(const Functor& f);
Report check_nattrans(const NatTransformation& t);
/// Universal property of each declared product by enumeration of cones.
Report check_products(const Category& c);

/// Commutation plus the universal property against cones from every listed
/// object.
bool is_pullback(const Category& c, const Arrow& g, const Arrow& f, const Pullback& square);
/// Brute-force pullback search over listed objects (test oracle and the
/// chooser for table categories).
std::optional<Pullback> find_pullback(const Category& c, const Arrow& g, const Arrow& f);

/// Pullback of a designated projection pr: A x B -> A (or -> B) along f.
/// Apex C x B (resp. A x C); the leg to C is a projection.
Pullback canonical_projection_pullback(const Category& c, const Arrow& pr, const Arrow& f);

/// Smallest class containing identities and designated projections closed
/// under composition. Power categories get the closed form (coordinate
/// blocks); table categories are closed by enumeration.
ArrowClass projection_class(const Category& c);
ArrowClass all_arrows_class();
ArrowClass identity_class(const Category& c);
/// Identities, composition closure and chosen pullbacks (leg in the class,
/// universal property) over listed objects.
Report check_arrow_class(const Category& c, const ArrowClass& lambda);

}  // namespace exco

#endif  // EXCO_FINCAT_HPP
