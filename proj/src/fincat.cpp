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

#include "exco/fincat.hpp"

#include <algorithm>
#include <set>

namespace exco {

namespace {
constexpr std::uint64_t kHomEnumerationLimit = std::uint64_t{1} << 24;
}

bool Category::is_listed(ObjectId a) const {
  const auto objs = objects();
  return std::find(objs.begin(), objs.end(), a) != objs.end();
}

ObjectId Category::object_by_name(const std::string& name) const {
  for (ObjectId a : objects())
    if (object_name(a) == name) return a;
  throw InputError("unknown object '" + name + "'");
}

Arrow Category::arrow_by_name(const std::string& name) const {
  for (const Arrow& f : arrows())
    if (arrow_name(f) == name) return f;
  throw InputError("unknown arrow '" + name + "'");
}

Arrow Category::compose(const Arrow& g, const Arrow& f) const {
  if (f.tgt != g.src)
    throw InputError("arrows not composable: " + arrow_name(g) + " after " + arrow_name(f));
  auto r = try_compose(g, f);
  if (!r)
    throw InputError("composition undefined: " + arrow_name(g) + " after " + arrow_name(f));
  return *r;
}

std::vector<Arrow> Category::hom(ObjectId a, ObjectId b) const {
  std::vector<Arrow> out;
  for_each_arrow(a, b, [&](const Arrow& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<Arrow> Category::arrows() const {
  std::vector<Arrow> out;
  for (ObjectId a : objects())
    for (ObjectId b : objects()) {
      auto h = hom(a, b);
      out.insert(out.end(), h.begin(), h.end());
    }
  return out;
}

Arrow Category::to_terminal(ObjectId a) const {
  auto t = terminal();
  if (!t) throw InputError("category has no terminal object");
  std::optional<Arrow> found;
  for_each_arrow(a, *t, [&](const Arrow& f) {
    found = f;
    return false;
  });
  if (!found) throw InputError("no arrow from " + object_name(a) + " to the terminal object");
  return *found;
}

Arrow Category::pair(const Product& p, const Arrow& f, const Arrow& g) const {
  if (f.src != g.src) throw InputError("pairing arrows with different sources");
  std::optional<Arrow> found;
  for_each_arrow(f.src, p.object, [&](const Arrow& m) {
    if (compose(p.pr1, m) == f && compose(p.pr2, m) == g) {
      found = m;
      return false;
    }
    return true;
  });
  if (!found)
    throw InputError("no mediating arrow into " + object_name(p.object));
  return *found;
}

Product Category::require_product(ObjectId a, ObjectId b) const {
  auto p = product(a, b);
  if (!p)
    throw InputError("missing product " + object_name(a) + " x " + object_name(b));
  return *p;
}

std::optional<Pullback> Category::choose_pullback(const Arrow& g, const Arrow& f) const {
  return find_pullback(*this, g, f);
}

NaryProduct nary_product(const Category& c, std::span<const ObjectId> factors) {
  NaryProduct out;
  out.factors.assign(factors.begin(), factors.end());
  if (factors.empty()) {
    auto t = c.terminal();
    if (!t) throw InputError("empty product needs a terminal object");
    out.object = *t;
    return out;
  }
  out.object = factors[0];
  out.projections.push_back(c.identity(factors[0]));
  for (std::size_t i = 1; i < factors.size(); ++i) {
    Product p = c.require_product(out.object, factors[i]);
    for (Arrow& pr : out.projections) pr = c.compose(pr, p.pr1);
    out.projections.push_back(p.pr2);
    out.object = p.object;
  }
  return out;
}

Arrow tuple_into(const Category& c, const NaryProduct& into, std::span<const Arrow> parts,
                 ObjectId source) {
  if (parts.size() != into.factors.size()) throw InputError("tuple arity mismatch");
  if (parts.empty()) return c.to_terminal(source);
  Arrow acc = parts[0];
  ObjectId obj = into.factors[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    Product p = c.require_product(obj, into.factors[i]);
    acc = c.pair(p, acc, parts[i]);
    obj = p.object;
  }
  return acc;
}

std::vector<Arrow> ArrowClass::members_into(const Category& c, ObjectId target) const {
  std::vector<Arrow> out;
  for (ObjectId a : c.objects())
    c.for_each_arrow(a, target, [&](const Arrow& f) {
      if (contains(f)) out.push_back(f);
      return true;
    });
  return out;
}

std::vector<Arrow> ArrowClass::members(const Category& c) const {
  std::vector<Arrow> out;
  for (ObjectId b : c.objects()) {
    auto m = members_into(c, b);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// TableCategory

TableCategory::TableCategory(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                             std::vector<std::uint64_t> identities,
                             std::vector<std::array<std::uint64_t, 3>> compose_entries,
                             std::optional<ObjectId> terminal,
                             std::vector<ProductSpec> products)
    : objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      terminal_(terminal),
      products_(std::move(products)) {
  const std::size_t n = objects_.size();
  const std::size_t m = arrows_.size();
  for (const auto& a : arrows_)
    if (a.src >= n || a.tgt >= n)
      throw InputError("arrow '" + a.name + "' has a dangling endpoint");
  if (identities_.size() != n) throw InputError("one identity per object required");
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = identities_[i];
    if (id >= m || arrows_[id].src != i || arrows_[id].tgt != i)
      throw InputError("identity of '" + objects_[i] + "' is not an endomorphism of it");
  }
  compose_.assign(m * m, -1);
  for (const auto& [g, f, gf] : compose_entries) {
    if (g >= m || f >= m || gf >= m) throw InputError("composition entry out of range");
    if (arrows_[f].tgt != arrows_[g].src)
      throw InputError("composition entry for non-composable pair " + arrows_[g].name +
                       " after " + arrows_[f].name);
    if (arrows_[gf].src != arrows_[f].src || arrows_[gf].tgt != arrows_[g].tgt)
      throw InputError("composite " + arrows_[gf].name + " has the wrong type");
    compose_[g * m + f] = static_cast<std::int64_t>(gf);
  }
  if (terminal_ && *terminal_ >= n) throw InputError("terminal object out of range");
  for (const auto& p : products_) {
    if (p.left >= n || p.right >= n || p.object >= n || p.pr1 >= m || p.pr2 >= m)
      throw InputError("product entry out of range");
    if (arrows_[p.pr1].src != p.object || arrows_[p.pr1].tgt != p.left ||
        arrows_[p.pr2].src != p.object || arrows_[p.pr2].tgt != p.right)
      throw InputError("product projections of " + objects_[p.object] + " have wrong types");
  }
  homs_.assign(n, std::vector<std::vector<std::uint64_t>>(n));
  for (std::size_t i = 0; i < m; ++i) homs_[arrows_[i].src][arrows_[i].tgt].push_back(i);
}

std::vector<ObjectId> TableCategory::objects() const {
  std::vector<ObjectId> out(objects_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<ObjectId>(i);
  return out;
}

std::string TableCategory::object_name(ObjectId a) const {
  if (a >= objects_.size()) throw InputError("object out of range");
  return objects_[a];
}

std::string TableCategory::arrow_name(const Arrow& f) const {
  if (f.code >= arrows_.size()) throw InputError("arrow out of range");
  return arrows_[f.code].name;
}

Arrow TableCategory::arrow(std::uint64_t index) const {
  if (index >= arrows_.size()) throw InputError("arrow index out of range");
  return {arrows_[index].src, arrows_[index].tgt, index};
}

Arrow TableCategory::identity(ObjectId a) const {
  if (a >= objects_.size()) throw InputError("object out of range");
  return arrow(identities_[a]);
}

std::optional<Arrow> TableCategory::try_compose(const Arrow& g, const Arrow& f) const {
  if (f.tgt != g.src) return std::nullopt;
  const auto r = compose_[g.code * arrows_.size() + f.code];
  if (r < 0) return std::nullopt;
  return arrow(static_cast<std::uint64_t>(r));
}

bool TableCategory::for_each_arrow(ObjectId a, ObjectId b,
                                   const std::function<bool(const Arrow&)>& visit) const {
  if (a >= objects_.size() || b >= objects_.size()) throw InputError("object out of range");
  for (auto i : homs_[a][b])
    if (!visit(arrow(i))) return false;
  return true;
}

std::uint64_t TableCategory::hom_size(ObjectId a, ObjectId b) const {
  return homs_.at(a).at(b).size();
}

std::optional<Product> TableCategory::product(ObjectId a, ObjectId b) const {
  for (const auto& p : products_)
    if (p.left == a && p.right == b) return Product{p.object, arrow(p.pr1), arrow(p.pr2)};
  return std::nullopt;
}

std::optional<Pullback> TableCategory::choose_pullback(const Arrow& g, const Arrow& f) const {
  for (const auto& p : products_) {
    const bool first = g.code == p.pr1 && p.left == f.tgt;
    const bool second = g.code == p.pr2 && p.right == f.tgt;
    if (!first && !second) continue;
    const bool available = first ? product(f.src, p.right).has_value()
                                 : product(p.left, f.src).has_value();
    if (available) return canonical_projection_pullback(*this, g, f);
  }
  return find_pullback(*this, g, f);
}

TableCategory TableCategory::with_compose(std::uint64_t g, std::uint64_t f,
                                          std::uint64_t gf) const {
  TableCategory copy = *this;
  const std::size_t m = arrows_.size();
  if (g >= m || f >= m || gf >= m) throw InputError("composition entry out of range");
  copy.compose_[g * m + f] = static_cast<std::int64_t>(gf);
  return copy;
}

TableCategory TableCategory::one_object() {
  return TableCategory({"1"}, {{"id", 0, 0}}, {0}, {{0, 0, 0}}, 0, {{0, 0, 0, 0, 0}});
}

TableCategory TableCategory::chain(std::size_t n) {
  if (n == 0) throw InputError("chain needs at least one object");
  std::vector<std::string> objs;
  std::vector<ArrowSpec> arrows;
  std::vector<std::vector<std::uint64_t>> index(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      index[i][j] = arrows.size();
      arrows.push_back({std::to_string(i) + "<=" + std::to_string(j), static_cast<ObjectId>(i),
                        static_cast<ObjectId>(j)});
    }
  std::vector<std::uint64_t> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(index[i][i]);
  std::vector<std::array<std::uint64_t, 3>> comp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) comp.push_back({index[j][k], index[i][j], index[i][k]});
  std::vector<ProductSpec> prods;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t m = std::min(i, j);
      prods.push_back({static_cast<ObjectId>(i), static_cast<ObjectId>(j),
                       static_cast<ObjectId>(m), index[m][i], index[m][j]});
    }
  return TableCategory(std::move(objs), std::move(arrows), std::move(ids), std::move(comp),
                       static_cast<ObjectId>(n - 1), std::move(prods));
}

TableCategory TableCategory::monoid(std::vector<std::string> names,
                                    const std::vector<std::vector<std::size_t>>& mult) {
  const std::size_t m = names.size();
  if (m == 0 || mult.size() != m) throw InputError("monoid table shape mismatch");
  std::vector<ArrowSpec> arrows;
  for (auto& n : names) arrows.push_back({n, 0, 0});
  std::vector<std::array<std::uint64_t, 3>> comp;
  for (std::size_t g = 0; g < m; ++g) {
    if (mult[g].size() != m) throw InputError("monoid table shape mismatch");
    for (std::size_t f = 0; f < m; ++f) comp.push_back({g, f, mult[g][f]});
  }
  return TableCategory({"*"}, std::move(arrows), {0}, std::move(comp), std::nullopt, {});
}

// ---------------------------------------------------------------------------
// PowerCategory

std::vector<ObjectId> PowerCategory::objects() const {
  std::vector<ObjectId> out;
  for (ObjectId k = 0; k <= listed_; ++k) out.push_back(k);
  return out;
}

void PowerCategory::require_power(ObjectId n) const {
  if (n > cap_)
    throw ResourceError("power " + std::to_string(n) + " exceeds the product cap " +
                        std::to_string(cap_));
}

std::optional<Product> PowerCategory::product(ObjectId a, ObjectId b) const {
  if (a + b > cap_) return std::nullopt;
  return Product{a + b, block(a + b, 0, a), block(a + b, a, b)};
}

Arrow PowerCategory::pair(const Product& p, const Arrow& f, const Arrow& g) const {
  if (f.src != g.src) throw InputError("pairing arrows with different sources");
  if (p.object != f.tgt + g.tgt) throw InputError("pairing into a foreign product");
  const Arrow parts[] = {f, g};
  return tuple(f.src, parts);
}

std::optional<Block> PowerCategory::as_block(const Arrow& f) const {
  if (f.tgt > f.src) return std::nullopt;
  for (unsigned p = 0; p + f.tgt <= f.src; ++p)
    if (block(f.src, p, f.tgt) == f) return Block{p, f.tgt, f.src - f.tgt - p};
  return std::nullopt;
}

Arrow PowerCategory::select(ObjectId n, std::span<const unsigned> coords) const {
  std::vector<Arrow> parts;
  for (unsigned i : coords) {
    if (i >= n) throw InputError("coordinate out of range");
    parts.push_back(block(n, i, 1));
  }
  return tuple(n, parts);
}

std::optional<Pullback> PowerCategory::choose_pullback(const Arrow& g, const Arrow& f) const {
  if (f.tgt != g.tgt) throw InputError("pullback of arrows with different targets");
  auto b = as_block(g);
  if (!b) return Category::choose_pullback(g, f);
  const ObjectId c = f.src;
  const ObjectId apex = b->before + c + b->after;
  require_power(apex);
  const Arrow leg = block(apex, b->before, c);
  const Arrow parts[] = {block(apex, 0, b->before), compose(f, leg),
                         block(apex, b->before + c, b->after)};
  return Pullback{apex, leg, tuple(apex, parts)};
}

// ---------------------------------------------------------------------------
// SetCategory

namespace {
unsigned ipow(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e--) r *= b;
  return r;
}
}  // namespace

SetCategory::SetCategory(unsigned base_size, unsigned listed, unsigned cap)
    : PowerCategory(listed, cap), base_(base_size) {
  if (base_size < 2) throw InputError("set category needs at least two points");
  if (listed > cap) throw InputError("listed powers exceed the cap");
  std::uint64_t pts = 1;
  for (unsigned k = 0; k < cap; ++k) pts *= base_size;
  if (pts > 16) throw ResourceError("set category limited to 16 points per object");
}

unsigned SetCategory::points(ObjectId k) const {
  require_power(k);
  return ipow(base_, k);
}

std::string SetCategory::point_name(ObjectId k, unsigned point) const {
  if (k == 0) return "*";
  std::string s(k, '0');
  for (unsigned i = k; i-- > 0;) {
    s[i] = static_cast<char>('0' + point % base_);
    point /= base_;
  }
  return s;
}

std::string SetCategory::object_name(ObjectId a) const {
  if (a == 0) return "1";
  if (a == 1) return "X";
  return "X" + std::to_string(a);
}

ObjectId SetCategory::object_by_name(const std::string& name) const {
  for (ObjectId a = 0; a <= cap(); ++a)
    if (object_name(a) == name) return a;
  throw InputError("unknown object '" + name + "'");
}

std::string SetCategory::arrow_name(const Arrow& f) const {
  std::string s = object_name(f.src) + "->" + object_name(f.tgt) + ":";
  const unsigned n = points(f.src);
  for (unsigned x = 0; x < n; ++x) {
    if (x) s += ',';
    s += point_name(f.tgt, apply(f, x));
  }
  return s;
}

Arrow SetCategory::arrow_by_name(const std::string& name) const {
  const auto arrow_pos = name.find("->");
  const auto colon = name.find(':');
  if (arrow_pos == std::string::npos || colon == std::string::npos || colon < arrow_pos)
    throw InputError("arrow must be written SRC->TGT:v0,v1,...: '" + name + "'");
  const ObjectId src = object_by_name(name.substr(0, arrow_pos));
  const ObjectId tgt = object_by_name(name.substr(arrow_pos + 2, colon - arrow_pos - 2));
  std::vector<unsigned> table;
  std::string rest = name.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string item =
        rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    bool found = false;
    for (unsigned y = 0; y < points(tgt); ++y)
      if (point_name(tgt, y) == item) {
        table.push_back(y);
        found = true;
        break;
      }
    if (!found) throw InputError("unknown point '" + item + "' in arrow '" + name + "'");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return from_table(src, tgt, table);
}

Arrow SetCategory::from_table(ObjectId src, ObjectId tgt, std::span<const unsigned> table) const {
  const unsigned n = points(src);
  const unsigned m = points(tgt);
  if (table.size() != n) throw InputError("function table has the wrong length");
  std::uint64_t code = 0;
  for (unsigned x = 0; x < n; ++x) {
    if (table[x] >= m) throw InputError("function value out of range");
    code |= std::uint64_t{table[x]} << (4 * x);
  }
  return {src, tgt, code};
}

Arrow SetCategory::identity(ObjectId a) const {
  std::vector<unsigned> t(points(a));
  for (unsigned x = 0; x < t.size(); ++x) t[x] = x;
  return from_table(a, a, t);
}

std::optional<Arrow> SetCategory::try_compose(const Arrow& g, const Arrow& f) const {
  if (f.tgt != g.src) return std::nullopt;
  const unsigned n = points(f.src);
  std::uint64_t code = 0;
  for (unsigned x = 0; x < n; ++x) code |= std::uint64_t{apply(g, apply(f, x))} << (4 * x);
  return Arrow{f.src, g.tgt, code};
}

std::uint64_t SetCategory::hom_size(ObjectId a, ObjectId b) const {
  const unsigned n = points(a);
  const std::uint64_t m = points(b);
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (r > (~std::uint64_t{0}) / m) return ~std::uint64_t{0};
    r *= m;
  }
  return r;
}

bool SetCategory::for_each_arrow(ObjectId a, ObjectId b,
                                 const std::function<bool(const Arrow&)>& visit) const {
  if (hom_size(a, b) > kHomEnumerationLimit)
    throw ResourceError("hom(" + object_name(a) + "," + object_name(b) + ") too large to enumerate");
  const unsigned n = points(a);
  const unsigned m = points(b);
  std::vector<unsigned> digits(n, 0);
  while (true) {
    if (!visit(from_table(a, b, digits))) return false;
    unsigned i = 0;
    while (i < n && ++digits[i] == m) digits[i++] = 0;
    if (i == n) return true;
  }
}

Arrow SetCategory::block(ObjectId n, unsigned before, unsigned width) const {
  if (before + width > n) throw InputError("block out of range");
  require_power(n);
  const unsigned div = ipow(base_, n - before - width);
  const unsigned mod = ipow(base_, width);
  std::vector<unsigned> t(points(n));
  for (unsigned x = 0; x < t.size(); ++x) t[x] = (x / div) % mod;
  return from_table(n, width, t);
}

Arrow SetCategory::tuple(ObjectId source, std::span<const Arrow> parts) const {
  ObjectId target = 0;
  for (const Arrow& p : parts) {
    if (p.src != source) throw InputError("tuple parts must share a source");
    target += p.tgt;
  }
  require_power(target);
  std::vector<unsigned> t(points(source));
  for (unsigned x = 0; x < t.size(); ++x) {
    unsigned v = 0;
    for (const Arrow& p : parts) v = v * points(p.tgt) + apply(p, x);
    t[x] = v;
  }
  return from_table(source, target, t);
}

// ---------------------------------------------------------------------------
// ContextCategory

ContextCategory::ContextCategory(unsigned listed, unsigned cap) : PowerCategory(listed, cap) {
  if (listed > cap) throw InputError("listed contexts exceed the cap");
  if (cap > 16) throw ResourceError("contexts limited to 16 variables");
}

std::string ContextCategory::object_name(ObjectId a) const {
  std::string s = "(";
  for (ObjectId i = 0; i < a; ++i) s += (i ? ",x" : "x") + std::to_string(i + 1);
  return s + ")";
}

std::string ContextCategory::arrow_name(const Arrow& f) const {
  std::string s = "[";
  for (unsigned j = 0; j < f.tgt; ++j) s += (j ? ",x" : "x") + std::to_string(image(f, j) + 1);
  return s + "]:" + std::to_string(f.src) + "->" + std::to_string(f.tgt);
}

Arrow ContextCategory::from_images(ObjectId src, std::span<const unsigned> images) const {
  require_power(src);
  require_power(static_cast<ObjectId>(images.size()));
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (images[j] >= src) throw InputError("substitution image out of range");
    code |= std::uint64_t{images[j]} << (4 * j);
  }
  return {src, static_cast<ObjectId>(images.size()), code};
}

Arrow ContextCategory::identity(ObjectId a) const { return block(a, 0, a); }

std::optional<Arrow> ContextCategory::try_compose(const Arrow& g, const Arrow& f) const {
  if (f.tgt != g.src) return std::nullopt;
  std::uint64_t code = 0;
  for (unsigned j = 0; j < g.tgt; ++j) code |= std::uint64_t{image(f, image(g, j))} << (4 * j);
  return Arrow{f.src, g.tgt, code};
}

std::uint64_t ContextCategory::hom_size(ObjectId a, ObjectId b) const {
  std::uint64_t r = 1;
  for (ObjectId j = 0; j < b; ++j) r *= a;
  return r;
}

bool ContextCategory::for_each_arrow(ObjectId a, ObjectId b,
                                     const std::function<bool(const Arrow&)>& visit) const {
  require_power(a);
  require_power(b);
  if (hom_size(a, b) > kHomEnumerationLimit)
    throw ResourceError("substitution set too large to enumerate");
  if (b > 0 && a == 0) return true;
  std::vector<unsigned> digits(b, 0);
  while (true) {
    if (!visit(from_images(a, digits))) return false;
    unsigned i = 0;
    while (i < b && ++digits[i] == a) digits[i++] = 0;
    if (i == b) return true;
  }
}

Arrow ContextCategory::block(ObjectId n, unsigned before, unsigned width) const {
  if (before + width > n) throw InputError("block out of range");
  std::vector<unsigned> images(width);
  for (unsigned j = 0; j < width; ++j) images[j] = before + j;
  return from_images(n, images);
}

Arrow ContextCategory::tuple(ObjectId source, std::span<const Arrow> parts) const {
  std::vector<unsigned> images;
  for (const Arrow& p : parts) {
    if (p.src != source) throw InputError("tuple parts must share a source");
    for (unsigned j = 0; j < p.tgt; ++j) images.push_back(image(p, j));
  }
  return from_images(source, images);
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

Functor identity_functor(const Category& c) {
  return {&c, &c, [](ObjectId a) { return a; }, [](const Arrow& f) { return f; }};
}

Functor compose_functors(const Functor& g, const Functor& f) {
  return {f.source, g.target, [g, f](ObjectId a) { return g.object(f.object(a)); },
          [g, f](const Arrow& x) { return g.arrow(f.arrow(x)); }};
}

NatTransformation identity_transformation(const Functor& f) {
  NatTransformation t{&f, &f, {}};
  for (ObjectId a : f.source->objects()) t.components[a] = f.target->identity(f.object(a));
  return t;
}

Report check_category(const Category& c) {
  const auto all = c.arrows();
  for (const Arrow& f : all) {
    const auto l = c.try_compose(c.identity(f.tgt), f);
    const auto r = c.try_compose(f, c.identity(f.src));
    if (!l || *l != f || !r || *r != f)
      return Report::fail("identity", "identity law fails", {{"f", c.arrow_name(f)}});
  }
  for (ObjectId b : c.objects())
    for (ObjectId cc : c.objects()) {
      const auto fs = c.hom(b, cc);
      for (const Arrow& f : fs)
        for (ObjectId a : c.objects())
          for (const Arrow& h : c.hom(a, b)) {
            const auto fh = c.try_compose(f, h);
            if (!fh)
              return Report::fail("composition", "composite undefined",
                                  {{"g", c.arrow_name(f)}, {"f", c.arrow_name(h)}});
            for (ObjectId d : c.objects())
              for (const Arrow& g : c.hom(cc, d)) {
                const auto gf = c.try_compose(g, f);
                if (!gf)
                  return Report::fail("composition", "composite undefined",
                                      {{"g", c.arrow_name(g)}, {"f", c.arrow_name(f)}});
                const auto lhs = c.try_compose(*gf, h);
                const auto rhs = c.try_compose(g, *fh);
                if (!lhs || !rhs || *lhs != *rhs)
                  return Report::fail("associativity", "(g.f).h != g.(f.h)",
                                      {{"g", c.arrow_name(g)},
                                       {"f", c.arrow_name(f)},
                                       {"h", c.arrow_name(h)}});
              }
          }
    }
  return Report::pass();
}

Report check_functor(const Functor& F) {
  const Category& s = *F.source;
  const Category& t = *F.target;
  for (ObjectId a : s.objects())
    if (F.arrow(s.identity(a)) != t.identity(F.object(a)))
      return Report::fail("functor identity", "F(id) != id", {{"object", s.object_name(a)}});
  const auto all = s.arrows();
  for (const Arrow& f : all) {
    const Arrow Ff = F.arrow(f);
    if (Ff.src != F.object(f.src) || Ff.tgt != F.object(f.tgt))
      return Report::fail("functor typing", "F(f) has the wrong type", {{"f", s.arrow_name(f)}});
  }
  for (const Arrow& f : all)
    for (const Arrow& g : all) {
      if (f.tgt != g.src) continue;
      if (F.arrow(s.compose(g, f)) != t.compose(F.arrow(g), F.arrow(f)))
        return Report::fail("functor composition", "F(g.f) != F(g).F(f)",
                            {{"g", s.arrow_name(g)}, {"f", s.arrow_name(f)}});
    }
  return Report::pass();
}

Report check_product_preserving(const Functor& F) {
  const Category& s = *F.source;
  const Category& t = *F.target;
  for (ObjectId a : s.objects())
    for (ObjectId b : s.objects()) {
      const auto p = s.product(a, b);
      if (!p || !s.is_listed(p->object)) continue;
      const auto q = t.product(F.object(a), F.object(b));
      if (!q || q->object != F.object(p->object) || q->pr1 != F.arrow(p->pr1) ||
          q->pr2 != F.arrow(p->pr2))
        return Report::fail("product preservation", "designated product not preserved",
                            {{"left", s.object_name(a)}, {"right", s.object_name(b)}});
    }
  return Report::pass();
}

Report check_nattrans(const NatTransformation& nt) {
  const Category& s = *nt.from->source;
  const Category& t = *nt.from->target;
  for (ObjectId a : s.objects()) {
    auto it = nt.components.find(a);
    if (it == nt.components.end())
      return Report::fail("component", "missing component", {{"object", s.object_name(a)}});
    if (it->second.src != nt.from->object(a) || it->second.tgt != nt.to->object(a))
      return Report::fail("component", "component has the wrong type",
                          {{"object", s.object_name(a)}});
  }
  for (const Arrow& f : s.arrows()) {
    const Arrow lhs = t.compose(nt.to->arrow(f), nt.components.at(f.src));
    const Arrow rhs = t.compose(nt.components.at(f.tgt), nt.from->arrow(f));
    if (lhs != rhs)
      return Report::fail("naturality", "G(f).t_A != t_B.F(f)", {{"f", s.arrow_name(f)}});
  }
  return Report::pass();
}

Report check_products(const Category& c) {
  for (ObjectId a : c.objects())
    for (ObjectId b : c.objects()) {
      const auto p = c.product(a, b);
      if (!p) continue;
      for (ObjectId x : c.objects()) {
        std::map<std::pair<Arrow, Arrow>, int> hits;
        c.for_each_arrow(x, p->object, [&](const Arrow& m) {
          ++hits[{c.compose(p->pr1, m), c.compose(p->pr2, m)}];
          return true;
        });
        for (const Arrow& u : c.hom(x, a))
          for (const Arrow& v : c.hom(x, b)) {
            auto it = hits.find({u, v});
            if (it == hits.end() || it->second != 1)
              return Report::fail("product universality", "cone without unique mediator",
                                  {{"left", c.object_name(a)},
                                   {"right", c.object_name(b)},
                                   {"u", c.arrow_name(u)},
                                   {"v", c.arrow_name(v)}});
          }
      }
    }
  return Report::pass();
}

// ---------------------------------------------------------------------------
// Pullbacks

bool is_pullback(const Category& c, const Arrow& g, const Arrow& f, const Pullback& sq) {
  if (sq.lambda_leg.src != sq.apex || sq.other_leg.src != sq.apex) return false;
  if (sq.lambda_leg.tgt != f.src || sq.other_leg.tgt != g.src) return false;
  if (c.compose(g, sq.other_leg) != c.compose(f, sq.lambda_leg)) return false;
  for (ObjectId x : c.objects()) {
    std::map<std::pair<Arrow, Arrow>, int> hits;
    c.for_each_arrow(x, sq.apex, [&](const Arrow& m) {
      ++hits[{c.compose(sq.lambda_leg, m), c.compose(sq.other_leg, m)}];
      return true;
    });
    for (const auto& [_, n] : hits)
      if (n != 1) return false;
    for (const Arrow& u : c.hom(x, f.src))
      for (const Arrow& v : c.hom(x, g.src))
        if (c.compose(f, u) == c.compose(g, v) && !hits.count({u, v})) return false;
  }
  return true;
}

std::optional<Pullback> find_pullback(const Category& c, const Arrow& g, const Arrow& f) {
  if (f.tgt != g.tgt) throw InputError("pullback of arrows with different targets");
  for (ObjectId apex : c.objects())
    for (const Arrow& l : c.hom(apex, f.src))
      for (const Arrow& o : c.hom(apex, g.src)) {
        Pullback sq{apex, l, o};
        if (c.compose(g, o) == c.compose(f, l) && is_pullback(c, g, f, sq)) return sq;
      }
  return std::nullopt;
}

Pullback canonical_projection_pullback(const Category& c, const Arrow& pr, const Arrow& f) {
  for (ObjectId a : c.objects())
    for (ObjectId b : c.objects()) {
      const auto ab = c.product(a, b);
      if (!ab || ab->object != pr.src) continue;
      if (ab->pr1 == pr && f.tgt == a) {
        const Product cb = c.require_product(f.src, b);
        return {cb.object, cb.pr1, c.pair(*ab, c.compose(f, cb.pr1), cb.pr2)};
      }
      if (ab->pr2 == pr && f.tgt == b) {
        const Product ac = c.require_product(a, f.src);
        return {ac.object, ac.pr2, c.pair(*ab, ac.pr1, c.compose(f, ac.pr2))};
      }
    }
  throw InputError(c.arrow_name(pr) + " is not a designated projection into " +
                   c.object_name(f.tgt));
}

// ---------------------------------------------------------------------------
// Arrow classes

ArrowClass projection_class(const Category& c) {
  if (const auto* pc = dynamic_cast<const PowerCategory*>(&c))
    return ArrowClass([pc](const Arrow& f) { return pc->as_block(f).has_value(); },
                      "coordinate projections");
  auto members = std::make_shared<std::set<Arrow>>();
  std::vector<std::pair<Product, std::pair<ObjectId, ObjectId>>> declared;
  for (ObjectId a : c.objects()) {
    members->insert(c.identity(a));
    for (ObjectId b : c.objects())
      if (auto p = c.product(a, b)) {
        members->insert(p->pr1);
        members->insert(p->pr2);
        declared.push_back({*p, {a, b}});
      }
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Arrow> snapshot(members->begin(), members->end());
    for (const Arrow& g : snapshot)
      for (const Arrow& f : snapshot)
        if (f.tgt == g.src)
          if (auto gf = c.try_compose(g, f); gf && members->insert(*gf).second) grew = true;
  }
  for (const auto& [p, ab] : declared)
    for (ObjectId x : c.objects()) {
      if (c.hom_size(x, ab.first) > 0 && !c.product(x, ab.second))
        throw InputError("projection class needs missing product " + c.object_name(x) + " x " +
                         c.object_name(ab.second));
      if (c.hom_size(x, ab.second) > 0 && !c.product(ab.first, x))
        throw InputError("projection class needs missing product " + c.object_name(ab.first) +
                         " x " + c.object_name(x));
    }
  return ArrowClass([members](const Arrow& f) { return members->count(f) > 0; },
                    "projections");
}

ArrowClass all_arrows_class() {
  return ArrowClass([](const Arrow&) { return true; }, "all arrows");
}

ArrowClass identity_class(const Category& c) {
  return ArrowClass([&c](const Arrow& f) { return f.src == f.tgt && f == c.identity(f.src); },
                    "identities");
}

Report check_arrow_class(const Category& c, const ArrowClass& lambda) {
  for (ObjectId a : c.objects())
    if (!lambda.contains(c.identity(a)))
      return Report::fail("class identities", "identity outside the class",
                          {{"object", c.object_name(a)}});
  const auto members = lambda.members(c);
  for (const Arrow& f : members)
    for (const Arrow& g : members)
      if (f.tgt == g.src && !lambda.contains(c.compose(g, f)))
        return Report::fail("class composition", "composite outside the class",
                            {{"g", c.arrow_name(g)}, {"f", c.arrow_name(f)}});
  for (const Arrow& g : members)
    for (ObjectId x : c.objects())
      for (const Arrow& f : c.hom(x, g.tgt)) {
        const auto sq = c.choose_pullback(g, f);
        nlohmann::json where = {{"g", c.arrow_name(g)}, {"f", c.arrow_name(f)}};
        if (!sq) return Report::fail("class pullbacks", "no chosen pullback", where);
        if (!lambda.contains(sq->lambda_leg))
          return Report::fail("class pullbacks", "pulled-back leg outside the class", where);
        if (c.is_listed(sq->apex) && !is_pullback(c, g, f, *sq))
          return Report::fail("class pullbacks", "chosen square is not a pullback", where);
      }
  return Report::pass();
}

}  // namespace exco
