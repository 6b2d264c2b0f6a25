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

#include "exco/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace exco {

using nlohmann::json;

namespace {

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw InputError(what + ": unknown key '" + k + "'");
  }
}

const json& need(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + ": missing key '" + key + "'");
  return j.at(key);
}

std::string str(const json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + ": expected a string");
  return j.get<std::string>();
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& n,
                     const std::string& what) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return i;
  throw InputError(what + ": unknown name '" + n + "'");
}

ArrowClass listed_class(std::set<Arrow> arrows) {
  return ArrowClass([arrows = std::move(arrows)](const Arrow& f) { return arrows.count(f) > 0; },
                    "listed arrows");
}

// Element name to index within a lattice, accepting the numeric index too.
Elem element(const Lattice& l, const json& j, const std::string& what) {
  if (j.is_number_unsigned()) {
    const Elem e = j.get<Elem>();
    if (!l.contains(e)) throw InputError(what + ": element out of range");
    return e;
  }
  return l.parse(str(j, what));
}

std::shared_ptr<const TableCategory> rebase_target(const Fixture& source, const Fixture& target);

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

CategoryFile category_from_json(const json& j) {
  const std::string what = "category";
  allow_keys(j, {"objects", "arrows", "identities", "compose", "terminal", "products", "lambda"},
             what);
  std::vector<std::string> objects;
  for (const auto& o : need(j, "objects", what)) objects.push_back(str(o, "object name"));
  std::vector<TableCategory::ArrowSpec> arrows;
  std::vector<std::string> arrow_names;
  for (const auto& a : need(j, "arrows", what)) {
    allow_keys(a, {"name", "src", "tgt"}, "arrow");
    const std::string n = str(need(a, "name", "arrow"), "arrow name");
    if (std::find(arrow_names.begin(), arrow_names.end(), n) != arrow_names.end())
      throw InputError("duplicate arrow '" + n + "'");
    arrows.push_back({n, static_cast<ObjectId>(index_of(objects, str(need(a, "src", n), n), n)),
                      static_cast<ObjectId>(index_of(objects, str(need(a, "tgt", n), n), n))});
    arrow_names.push_back(n);
  }
  std::vector<std::uint64_t> identities(objects.size(), ~std::uint64_t{0});
  const json& ids = need(j, "identities", what);
  if (!ids.is_object()) throw InputError("identities: expected an object");
  for (const auto& [o, a] : ids.items())
    identities[index_of(objects, o, "identities")] = index_of(arrow_names, str(a, o), "identities");
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (identities[i] == ~std::uint64_t{0})
      throw InputError("identities: none given for '" + objects[i] + "'");

  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> comp;
  // unit laws are implied unless listed
  for (std::uint64_t f = 0; f < arrows.size(); ++f) {
    comp[{identities[arrows[f].tgt], f}] = f;
    comp[{f, identities[arrows[f].src]}] = f;
  }
  if (j.contains("compose"))
    for (const auto& e : j.at("compose")) {
      if (!e.is_array() || e.size() != 3) throw InputError("compose: expected [g, f, g.f]");
      comp[{index_of(arrow_names, str(e[0], "compose"), "compose"),
            index_of(arrow_names, str(e[1], "compose"), "compose")}] =
          index_of(arrow_names, str(e[2], "compose"), "compose");
    }
  std::vector<std::array<std::uint64_t, 3>> entries;
  for (const auto& [gf, h] : comp) entries.push_back({gf.first, gf.second, h});

  std::optional<ObjectId> terminal;
  if (j.contains("terminal"))
    terminal = static_cast<ObjectId>(index_of(objects, str(j.at("terminal"), "terminal"), "terminal"));
  std::vector<TableCategory::ProductSpec> products;
  if (j.contains("products"))
    for (const auto& p : j.at("products")) {
      allow_keys(p, {"left", "right", "object", "pr1", "pr2"}, "product");
      auto obj = [&](const char* k) {
        return static_cast<ObjectId>(index_of(objects, str(need(p, k, "product"), k), "product"));
      };
      auto arr = [&](const char* k) {
        return index_of(arrow_names, str(need(p, k, "product"), k), "product");
      };
      products.push_back({obj("left"), obj("right"), obj("object"), arr("pr1"), arr("pr2")});
    }
  CategoryFile out;
  auto c = std::make_shared<const TableCategory>(objects, arrows, identities, entries, terminal,
                                                 products);
  out.category = c;
  if (j.contains("lambda")) {
    std::set<Arrow> members;
    for (const auto& a : j.at("lambda"))
      members.insert(c->arrow(index_of(arrow_names, str(a, "lambda"), "lambda")));
    out.lambda = listed_class(std::move(members));
  }
  return out;
}

json category_to_json(const TableCategory& c) {
  json objects = json::array(), arrows = json::array(), ids = json::object();
  json compose = json::array(), products = json::array();
  for (ObjectId a : c.objects()) {
    objects.push_back(c.object_name(a));
    ids[c.object_name(a)] = c.arrow_name(c.identity(a));
  }
  for (std::size_t i = 0; i < c.arrow_count(); ++i) {
    const Arrow f = c.arrow(i);
    arrows.push_back(
        {{"name", c.arrow_name(f)}, {"src", c.object_name(f.src)}, {"tgt", c.object_name(f.tgt)}});
  }
  for (std::size_t g = 0; g < c.arrow_count(); ++g)
    for (std::size_t f = 0; f < c.arrow_count(); ++f) {
      const Arrow ag = c.arrow(g), af = c.arrow(f);
      if (af == c.identity(af.tgt) || ag == c.identity(ag.src)) continue;
      if (auto h = c.try_compose(ag, af))
        compose.push_back({c.arrow_name(ag), c.arrow_name(af), c.arrow_name(*h)});
    }
  for (const auto& p : c.product_specs())
    products.push_back({{"left", c.object_name(p.left)},
                        {"right", c.object_name(p.right)},
                        {"object", c.object_name(p.object)},
                        {"pr1", c.arrow_name(c.arrow(p.pr1))},
                        {"pr2", c.arrow_name(c.arrow(p.pr2))}});
  json out{{"objects", objects}, {"arrows", arrows}, {"identities", ids}, {"compose", compose}};
  if (auto t = c.terminal()) out["terminal"] = c.object_name(*t);
  if (!products.empty()) out["products"] = products;
  return out;
}

namespace {

Fixture builtin_with_overrides(const json& j) {
  allow_keys(j, {"builtin", "name", "delta"}, "builtin doctrine");
  Fixture f = fixture_by_name(str(j.at("builtin"), "builtin"));
  if (j.contains("name")) f.name = str(j.at("name"), "name");
  if (j.contains("delta")) {
    if (!f.delta) throw InputError("builtin '" + f.name + "' has no equality to override");
    std::map<ObjectId, Elem> over;
    const Category& c = *f.category;
    for (const auto& [o, e] : j.at("delta").items()) {
      const ObjectId a = c.object_by_name(o);
      over[a] = element(f.doctrine->fiber(c.require_product(a, a).object), e, "delta");
    }
    f.delta = ElementaryStructure{[base = *f.delta, over](ObjectId a) {
      auto it = over.find(a);
      return it == over.end() ? base.delta(a) : it->second;
    }};
  }
  return f;
}

Fixture table_doctrine(const json& j, const std::filesystem::path& dir,
                       std::shared_ptr<const TableCategory> given) {
  allow_keys(j, {"name", "category", "fibers", "reindex", "delta", "exists"}, "doctrine");
  CategoryFile cf;
  if (given) {
    cf.category = given;
  } else {
    const json& cj = need(j, "category", "doctrine");
    cf = category_from_json(cj.is_string() ? read_json_file(dir / cj.get<std::string>()) : cj);
  }
  const auto c = cf.category;
  std::vector<TableLattice> fibers;
  const json& fj = need(j, "fibers", "doctrine");
  for (ObjectId a : c->objects()) {
    const std::string on = c->object_name(a);
    if (!fj.contains(on)) throw InputError("fibers: none given for '" + on + "'");
    const json& l = fj.at(on);
    allow_keys(l, {"elements", "top", "meet"}, "fiber " + on);
    std::vector<std::string> names;
    for (const auto& e : need(l, "elements", on)) names.push_back(str(e, on));
    const std::size_t n = names.size();
    if (n == 0) throw InputError("fiber " + on + " is empty");
    const Elem top = index_of(names, str(need(l, "top", on), on), on);
    std::vector<std::int64_t> meet(n * n, -1);
    for (std::size_t x = 0; x < n; ++x) {
      meet[x * n + x] = static_cast<std::int64_t>(x);
      meet[x * n + top] = meet[top * n + x] = static_cast<std::int64_t>(x);
    }
    if (l.contains("meet"))
      for (const auto& t : l.at("meet")) {
        if (!t.is_array() || t.size() != 3) throw InputError("meet: expected [a, b, a^b]");
        const auto x = index_of(names, str(t[0], on), on), y = index_of(names, str(t[1], on), on);
        const auto z = static_cast<std::int64_t>(index_of(names, str(t[2], on), on));
        meet[x * n + y] = meet[y * n + x] = z;
      }
    std::vector<Elem> table(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      if (meet[k] < 0)
        throw InputError("fiber " + on + ": meet of " + names[k / n] + " and " + names[k % n] +
                         " missing");
      table[k] = static_cast<Elem>(meet[k]);
    }
    fibers.emplace_back(names, top, table);
  }
  for (const auto& item : fj.items()) static_cast<void>(c->object_by_name(item.key()));

  auto map_table = [&](const json& m, const Arrow& f, ObjectId from, ObjectId to) {
    const Lattice& src = fibers.at(from);
    const Lattice& tgt = fibers.at(to);
    std::vector<Elem> out(src.size());
    std::vector<bool> seen(src.size(), false);
    for (const auto& [x, y] : m.items()) {
      const Elem e = src.parse(x);
      out[e] = element(tgt, y, c->arrow_name(f));
      seen[e] = true;
    }
    for (std::size_t e = 0; e < seen.size(); ++e)
      if (!seen[e])
        throw InputError("table for '" + c->arrow_name(f) + "' misses element " + src.name(e));
    return out;
  };

  std::map<Arrow, std::vector<Elem>> reindex;
  const json& rj = need(j, "reindex", "doctrine");
  for (const auto& [an, m] : rj.items()) {
    const Arrow f = c->arrow_by_name(an);
    reindex[f] = map_table(m, f, f.tgt, f.src);
  }
  for (ObjectId a : c->objects()) {
    const Arrow id = c->identity(a);
    if (!reindex.count(id)) {
      std::vector<Elem> t(fibers[a].size());
      for (std::size_t e = 0; e < t.size(); ++e) t[e] = e;
      reindex[id] = t;
    }
  }
  auto p = std::make_shared<const TableDoctrine>(c, std::move(fibers), std::move(reindex));

  Fixture out{j.contains("name") ? str(j.at("name"), "name") : "doctrine", c, p, {}, std::nullopt};
  ArrowClass lambda = cf.lambda ? *cf.lambda : projection_class(*c);
  std::map<Arrow, std::vector<Elem>> ex;
  if (j.contains("exists"))
    for (const auto& [an, m] : j.at("exists").items()) {
      const Arrow f = c->arrow_by_name(an);
      std::vector<Elem> t(p->fiber(f.src).size());
      std::vector<bool> seen(t.size(), false);
      for (const auto& [x, y] : m.items()) {
        const Elem e = p->fiber(f.src).parse(x);
        t[e] = element(p->fiber(f.tgt), y, an);
        seen[e] = true;
      }
      for (bool s : seen)
        if (!s) throw InputError("exists table for '" + an + "' is incomplete");
      ex[f] = t;
    }
  out.exists = ExistentialStructure{
      lambda, [c, ex](const Arrow& f, Elem x) -> Elem {
        auto it = ex.find(f);
        if (it != ex.end()) return it->second.at(x);
        if (f == c->identity(f.src)) return x;
        throw InputError("no quantifier table for '" + c->arrow_name(f) + "'");
      }};
  if (j.contains("delta")) {
    std::map<ObjectId, Elem> d;
    for (const auto& [on, e] : j.at("delta").items()) {
      const ObjectId a = c->object_by_name(on);
      d[a] = element(p->fiber(c->require_product(a, a).object), e, "delta");
    }
    out.delta = ElementaryStructure{[d, c](ObjectId a) -> Elem {
      auto it = d.find(a);
      if (it == d.end()) throw InputError("no equality predicate over '" + c->object_name(a) + "'");
      return it->second;
    }};
  }
  return out;
}

std::shared_ptr<const TableCategory> rebase_target(const Fixture& source, const Fixture& target) {
  auto sc = std::dynamic_pointer_cast<const TableCategory>(source.category);
  auto tc = std::dynamic_pointer_cast<const TableCategory>(target.category);
  if (!sc || !tc || category_to_json(*sc) != category_to_json(*tc)) return nullptr;
  return sc;
}

}  // namespace

Fixture doctrine_from_json(const json& j, const std::filesystem::path& dir) {
  if (j.is_object() && j.contains("builtin")) return builtin_with_overrides(j);
  return table_doctrine(j, dir, nullptr);
}

Fixture load_doctrine(const std::string& ref) {
  if (ref.rfind("builtin:", 0) == 0) return fixture_by_name(ref.substr(8));
  const std::filesystem::path p(ref);
  Fixture f = doctrine_from_json(read_json_file(p), p.parent_path());
  if (f.name == "doctrine") f.name = p.stem().stem().string();
  return f;
}

json doctrine_to_json(const Fixture& f) {
  auto c = std::dynamic_pointer_cast<const TableCategory>(f.category);
  if (!c) throw InputError("only table categories can be written");
  const Doctrine& p = *f.doctrine;
  json fibers = json::object(), reindex = json::object();
  for (ObjectId a : c->objects()) {
    const Lattice& l = p.fiber(a);
    json names = json::array(), meet = json::array();
    const auto els = l.elements();
    for (Elem x : els) names.push_back(l.name(x));
    for (Elem x : els)
      for (Elem y : els)
        if (x < y && x != l.top() && y != l.top())
          meet.push_back({l.name(x), l.name(y), l.name(l.meet(x, y))});
    fibers[c->object_name(a)] = {{"elements", names}, {"top", l.name(l.top())}, {"meet", meet}};
  }
  for (std::size_t i = 0; i < c->arrow_count(); ++i) {
    const Arrow f = c->arrow(i);
    json t = json::object();
    for (Elem y : p.fiber(f.tgt).elements())
      t[p.fiber(f.tgt).name(y)] = p.fiber(f.src).name(p.reindex(f, y));
    reindex[c->arrow_name(f)] = t;
  }
  json out{{"name", f.name}, {"category", category_to_json(*c)}, {"fibers", fibers},
           {"reindex", reindex}};
  json ex = json::object();
  for (const Arrow& g : f.exists.lambda.members(*c)) {
    if (g == c->identity(g.src)) continue;
    json t = json::object();
    for (Elem x : p.fiber(g.src).elements())
      t[p.fiber(g.src).name(x)] = p.fiber(g.tgt).name(f.exists.exists(g, x));
    ex[c->arrow_name(g)] = t;
  }
  if (!ex.empty()) out["exists"] = ex;
  if (f.delta) {
    json d = json::object();
    for (ObjectId a : c->objects()) {
      auto pr = c->product(a, a);
      if (!pr) continue;
      d[c->object_name(a)] = p.fiber(pr->object).name(f.delta->delta(a));
    }
    out["delta"] = d;
  }
  return out;
}

json completion_dump(const CompletedDoctrine& pe) {
  const Category& c = pe.base();
  const Completion& raw = pe.raw();
  json objects = json::object();
  for (ObjectId a : c.objects()) {
    const CompletionFiber& f = pe.completion_fiber(a);
    const std::size_t n = f.size();
    json classes = json::array(), order = json::array(), meet = json::array();
    for (Elem x = 0; x < n; ++x) {
      classes.push_back(raw.to_json(f.representative(x)));
      json orow = json::array(), mrow = json::array();
      for (Elem y = 0; y < n; ++y) {
        orow.push_back(f.order(x, y) ? 1 : 0);
        mrow.push_back(f.meet(x, y));
      }
      order.push_back(orow);
      meet.push_back(mrow);
    }
    objects[c.object_name(a)] = {{"raw_pairs", f.raw().size()},
                                 {"classes", classes},
                                 {"top", f.top()},
                                 {"order", order},
                                 {"meet", meet}};
  }
  json exists = json::object(), reindex = json::object();
  for (ObjectId a : c.objects())
    for (ObjectId b : c.objects())
      c.for_each_arrow(a, b, [&](const Arrow& g) {
        json r = json::array();
        for (Elem y = 0; y < pe.fiber(b).size(); ++y) r.push_back(pe.reindex(g, y));
        reindex[c.arrow_name(g)] = r;
        if (pe.lambda().contains(g)) {
          json e = json::array();
          for (Elem x = 0; x < pe.fiber(a).size(); ++x) e.push_back(pe.exists(g, x));
          exists[c.arrow_name(g)] = e;
        }
        return true;
      });
  return {{"lambda", pe.lambda().description()},
          {"objects", objects},
          {"exists", exists},
          {"reindex", reindex}};
}

CandidateFile candidates_from_json(const ExactCompletion& ex, const json& j) {
  allow_keys(j, {"objects", "object", "parameters", "morphisms", "morphism"}, "candidates");
  const Category& c = ex.base();
  const Doctrine& p = ex.doctrine();
  CandidateFile out;
  auto object = [&](const json& o) {
    allow_keys(o, {"name", "A", "C", "rho"}, "object");
    const ObjectId a = c.object_by_name(str(need(o, "A", "object"), "A"));
    const ObjectId cc =
        o.contains("C") ? c.object_by_name(str(o.at("C"), "C")) : *c.terminal();
    const std::string name = o.contains("name") ? str(o.at("name"), "name") : c.object_name(a);
    const json& r = need(o, "rho", "object");
    if (r == "delta") {
      if (cc != *c.terminal()) throw InputError("object '" + name + "': delta needs C = 1");
      return ex.diagonal_object(a, name);
    }
    const std::vector<ObjectId> f{a, a, cc};
    const ObjectId rel = nary_product(c, f).object;
    const Elem rho = r == "top" ? p.fiber(rel).top() : element(p.fiber(rel), r, name);
    return PerObject{name, a, cc, rho, std::nullopt, std::nullopt};
  };
  if (j.contains("objects"))
    for (const auto& o : j.at("objects")) out.objects.push_back(object(o));
  if (j.contains("object")) out.objects.push_back(object(j.at("object")));
  if (out.objects.empty()) throw InputError("candidates: no objects");
  if (j.contains("parameters"))
    for (const auto& e : j.at("parameters")) out.parameters.push_back(c.object_by_name(str(e, "parameter")));
  else
    out.parameters.push_back(*c.terminal());
  auto find = [&](const json& n) -> const PerObject& {
    const std::string s = str(n, "morphism end");
    for (const auto& o : out.objects)
      if (o.name == s) return o;
    throw InputError("morphism: unknown object '" + s + "'");
  };
  auto morphism = [&](const json& m) {
    allow_keys(m, {"src", "tgt", "E", "phi"}, "morphism");
    const PerObject& s = find(need(m, "src", "morphism"));
    const PerObject& t = find(need(m, "tgt", "morphism"));
    const ObjectId e = m.contains("E") ? c.object_by_name(str(m.at("E"), "E")) : *c.terminal();
    const std::vector<ObjectId> f{s.a, t.a, e};
    const ObjectId rel = nary_product(c, f).object;
    return PerMorphism{s, t, e, element(p.fiber(rel), need(m, "phi", "morphism"), "phi")};
  };
  if (j.contains("morphisms"))
    for (const auto& m : j.at("morphisms")) out.morphisms.push_back(morphism(m));
  if (j.contains("morphism")) out.morphisms.push_back(morphism(j.at("morphism")));
  return out;
}

Query query_from_json(const json& j) {
  allow_keys(j, {"context", "lhs", "rhs"}, "query");
  Query q;
  if (j.contains("context"))
    for (const auto& v : j.at("context")) q.context.push_back(str(v, "context"));
  q.lhs = str(need(j, "lhs", "query"), "lhs");
  q.rhs = str(need(j, "rhs", "query"), "rhs");
  return q;
}

PairFile pair_from_json(const json& j, const std::filesystem::path& dir) {
  allow_keys(j, {"source", "target", "morphisms"}, "pair");
  auto load = [&](const json& r) {
    if (r.is_string()) {
      const std::string s = r.get<std::string>();
      return s.rfind("builtin:", 0) == 0 ? load_doctrine(s) : load_doctrine((dir / s).string());
    }
    return doctrine_from_json(r, dir);
  };
  PairFile out{load(need(j, "source", "pair")), load(need(j, "target", "pair")), {}};
  if (out.target.category != out.source.category) {
    if (out.source.name == out.target.name) {
      out.target = out.source;
    } else if (auto sc = rebase_target(out.source, out.target)) {
      Fixture t = table_doctrine(doctrine_to_json(out.target), dir, sc);
      t.name = out.target.name;
      t.exists.lambda = out.source.exists.lambda;
      out.target = t;
    } else {
      throw InputError("pair: source and target need the same base category");
    }
  }
  for (const auto& m : need(j, "morphisms", "pair")) {
    allow_keys(m, {"name", "map"}, "pair morphism");
    out.morphisms.emplace_back(str(need(m, "name", "pair morphism"), "name"),
                               need(m, "map", "pair morphism"));
  }
  return out;
}

DoctrineMorphism pair_morphism(const Doctrine& source, const Doctrine& target, const json& map) {
  if (map == "identity") {
    if (&source != &target) throw InputError("identity map needs one doctrine");
    return identity_morphism(source);
  }
  if (map == "top") return constant_top_morphism(source, target);
  if (!map.is_array()) throw InputError("pair morphism: map must be identity, top or a list");
  const ObjectId a = source.base().objects().front();
  std::vector<Elem> m;
  for (const auto& e : map) m.push_back(element(target.fiber(a), e, "map"));
  if (m.size() != source.fiber(a).size()) throw InputError("pair morphism: map has wrong length");
  return uniform_morphism(source, target, std::move(m));
}

}  // namespace exco
