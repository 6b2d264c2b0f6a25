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

#ifndef EXCO_LATTICE_HPP
#define EXCO_LATTICE_HPP

#include "exco/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace exco {

/// Opaque element code of a fiber.
using Elem = std::uint64_t;

/// A finite meet-semilattice with top. The order is always derived from the
/// meet: a <= b iff a ^ b == a.
class Lattice {
 public:
  virtual ~Lattice() = default;

  [[nodiscard]] virtual std::uint64_t size() const = 0;
  [[nodiscard]] virtual Elem top() const = 0;
  [[nodiscard]] virtual Elem meet(Elem a, Elem b) const = 0;
  [[nodiscard]] virtual bool contains(Elem a) const = 0;
  /// Elements in canonical order. Only sensible for small carriers.
  [[nodiscard]] virtual std::vector<Elem> elements() const = 0;
  [[nodiscard]] virtual std::string name(Elem a) const = 0;
  /// Inverse of name(); throws InputError for unknown names.
  [[nodiscard]] virtual Elem parse(const std::string& name) const = 0;

  [[nodiscard]] bool leq(Elem a, Elem b) const { return meet(a, b) == a; }
};

/// Explicit lattice: elements 0..n-1 with a dense meet table.
class TableLattice final : public Lattice {
 public:
  /// Validates shape only (table size, indices in range). Laws are checked
  /// by check_semilattice.
  TableLattice(std::vector<std::string> names, Elem top,
               std::vector<Elem> meet_table);

  [[nodiscard]] std::uint64_t size() const override { return names_.size(); }
  [[nodiscard]] Elem top() const override { return top_; }
  [[nodiscard]] Elem meet(Elem a, Elem b) const override;
  [[nodiscard]] bool contains(Elem a) const override { return a < names_.size(); }
  [[nodiscard]] std::vector<Elem> elements() const override;
  [[nodiscard]] std::string name(Elem a) const override;
  [[nodiscard]] Elem parse(const std::string& name) const override;

  /// Chain 0 < 1 < ... < n-1 with meet = min.
  static TableLattice chain(std::size_t n);

 private:
  std::vector<std::string> names_;
  Elem top_;
  std::vector<Elem> meet_;
};

/// Subsets of {0..points-1} encoded as bitmasks. With `reversed`, the order is
/// reverse inclusion (meet = union, top = empty set), the shape of an
/// atom-set fiber of conjunctive formulas.
class PowersetLattice final : public Lattice {
 public:
  explicit PowersetLattice(unsigned points, bool reversed = false,
                           std::vector<std::string> point_names = {});

  [[nodiscard]] std::uint64_t size() const override;
  [[nodiscard]] Elem top() const override { return reversed_ ? 0 : full_; }
  [[nodiscard]] Elem meet(Elem a, Elem b) const override;
  [[nodiscard]] bool contains(Elem a) const override { return (a & ~full_) == 0; }
  [[nodiscard]] std::vector<Elem> elements() const override;
  [[nodiscard]] std::string name(Elem a) const override;
  [[nodiscard]] Elem parse(const std::string& name) const override;

  [[nodiscard]] unsigned points() const { return points_; }
  [[nodiscard]] bool reversed() const { return reversed_; }

 private:
  unsigned points_;
  bool reversed_;
  Elem full_;
  std::vector<std::string> point_names_;
};

/// A function between two lattices; a semilattice map when it preserves top
/// and binary meets.
struct SemilatticeMap {
  const Lattice* source = nullptr;
  const Lattice* target = nullptr;
  std::function<Elem(Elem)> apply;
};

/// leq with membership checks; throws InputError on a foreign element.
bool leq(const Lattice& lattice, Elem a, Elem b);

Report check_semilattice(const Lattice& lattice);
Report check_map(const SemilatticeMap& map);
/// Monotonicity, checked independently of meet preservation.
Report check_monotone(const SemilatticeMap& map);

}  // namespace exco

#endif  // EXCO_LATTICE_HPP
