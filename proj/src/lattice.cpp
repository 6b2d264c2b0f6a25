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

#include "exco/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace exco {

TableLattice::TableLattice(std::vector<std::string> names, Elem top,
                           std::vector<Elem> meet_table)
    : names_(std::move(names)), top_(top), meet_(std::move(meet_table)) {
  const std::size_t n = names_.size();
  if (n == 0) throw InputError("lattice must contain a top element");
  if (top_ >= n) throw InputError("lattice top out of range");
  if (meet_.size() != n * n) throw InputError("meet table is not n*n");
  for (Elem e : meet_)
    if (e >= n) throw InputError("meet table entry out of range");
}

Elem TableLattice::meet(Elem a, Elem b) const {
  if (a >= names_.size() || b >= names_.size())
    throw InputError("element not in lattice");
  return meet_[a * names_.size() + b];
}

std::vector<Elem> TableLattice::elements() const {
  std::vector<Elem> out(names_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::string TableLattice::name(Elem a) const {
  if (a >= names_.size()) throw InputError("element not in lattice");
  return names_[a];
}

Elem TableLattice::parse(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("unknown lattice element '" + name + "'");
  return static_cast<Elem>(it - names_.begin());
}

TableLattice TableLattice::chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<Elem> meet(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) meet[i * n + j] = std::min(i, j);
  }
  return TableLattice(std::move(names), n - 1, std::move(meet));
}

PowersetLattice::PowersetLattice(unsigned points, bool reversed,
                                 std::vector<std::string> point_names)
    : points_(points),
      reversed_(reversed),
      full_(points >= 64 ? ~Elem{0} : ((Elem{1} << points) - 1)),
      point_names_(std::move(point_names)) {
  if (points > 64) throw InputError("powerset lattice limited to 64 points");
  if (point_names_.empty())
    for (unsigned i = 0; i < points; ++i) point_names_.push_back(std::to_string(i));
  if (point_names_.size() != points) throw InputError("point name count mismatch");
}

std::uint64_t PowersetLattice::size() const {
  return points_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << points_);
}

Elem PowersetLattice::meet(Elem a, Elem b) const {
  return reversed_ ? (a | b) : (a & b);
}

std::vector<Elem> PowersetLattice::elements() const {
  if (points_ > 24) throw ResourceError("powerset too large to enumerate");
  std::vector<Elem> out(std::size_t{1} << points_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::string PowersetLattice::name(Elem a) const {
  if (!contains(a)) throw InputError("element not in powerset lattice");
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < points_; ++i) {
    if (!(a >> i & 1)) continue;
    if (!first) s += ',';
    s += point_names_[i];
    first = false;
  }
  return s + "}";
}

Elem PowersetLattice::parse(const std::string& name) const {
  if (name.size() < 2 || name.front() != '{' || name.back() != '}')
    throw InputError("subset must be written {p,q,...}: '" + name + "'");
  Elem out = 0;
  const std::string body = name.substr(1, name.size() - 2);
  std::string item;
  int depth = 0;
  auto flush = [&] {
    if (item.empty()) return;
    auto it = std::find(point_names_.begin(), point_names_.end(), item);
    if (it == point_names_.end()) throw InputError("unknown point '" + item + "'");
    out |= Elem{1} << (it - point_names_.begin());
    item.clear();
  };
  for (char ch : body) {
    depth += ch == '(' ? 1 : ch == ')' ? -1 : 0;
    if (ch == ',' && depth == 0)
      flush();
    else
      item += ch;
  }
  flush();
  return out;
}

bool leq(const Lattice& lattice, Elem a, Elem b) {
  if (!lattice.contains(a) || !lattice.contains(b))
    throw InputError("leq on an element outside the lattice");
  return lattice.leq(a, b);
}

Report check_semilattice(const Lattice& l) {
  const auto els = l.elements();
  const Elem top = l.top();
  if (!l.contains(top)) return Report::fail("top", "top not an element");
  for (Elem a : els) {
    if (l.meet(a, a) != a)
      return Report::fail("idempotence", "a^a != a", {{"a", l.name(a)}});
    if (l.meet(a, top) != a)
      return Report::fail("top unit", "a^top != a", {{"a", l.name(a)}});
    for (Elem b : els) {
      const Elem ab = l.meet(a, b);
      if (!l.contains(ab))
        return Report::fail("closure", "meet leaves the carrier",
                            {{"a", l.name(a)}, {"b", l.name(b)}});
      if (ab != l.meet(b, a))
        return Report::fail("commutativity", "a^b != b^a",
                            {{"a", l.name(a)}, {"b", l.name(b)}});
      for (Elem c : els)
        if (l.meet(ab, c) != l.meet(a, l.meet(b, c)))
          return Report::fail("associativity", "(a^b)^c != a^(b^c)",
                              {{"a", l.name(a)}, {"b", l.name(b)}, {"c", l.name(c)}});
    }
  }
  return Report::pass();
}

Report check_map(const SemilatticeMap& h) {
  const Lattice& s = *h.source;
  const Lattice& t = *h.target;
  if (h.apply(s.top()) != t.top())
    return Report::fail("top preservation", "h(top) != top");
  const auto els = s.elements();
  for (Elem a : els) {
    const Elem ha = h.apply(a);
    if (!t.contains(ha))
      return Report::fail("codomain", "h(a) outside target", {{"a", s.name(a)}});
    for (Elem b : els)
      if (h.apply(s.meet(a, b)) != t.meet(ha, h.apply(b)))
        return Report::fail("meet preservation", "h(a^b) != h(a)^h(b)",
                            {{"a", s.name(a)}, {"b", s.name(b)}});
  }
  return Report::pass();
}

Report check_monotone(const SemilatticeMap& h) {
  const Lattice& s = *h.source;
  const Lattice& t = *h.target;
  const auto els = s.elements();
  for (Elem a : els)
    for (Elem b : els)
      if (s.leq(a, b) && !t.leq(h.apply(a), h.apply(b)))
        return Report::fail("monotonicity", "a<=b but h(a)!<=h(b)",
                            {{"a", s.name(a)}, {"b", s.name(b)}});
  return Report::pass();
}

}  // namespace exco
