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

#include "exco/exactcomp.hpp"

#include <initializer_list>

namespace exco {

namespace {

NaryProduct np(const Category& c, std::initializer_list<ObjectId> factors) {
  std::vector<ObjectId> v(factors);
  return nary_product(c, v);
}

Arrow tup(const Category& c, const NaryProduct& into, std::initializer_list<Arrow> parts,
          ObjectId source) {
  std::vector<Arrow> v(parts);
  return tuple_into(c, into, v, source);
}

std::optional<Arrow> search(const Category& c, ObjectId from, ObjectId to,
                            const std::function<bool(const Arrow&)>& ok) {
  std::optional<Arrow> found;
  c.for_each_arrow(from, to, [&](const Arrow& f) {
    if (ok(f)) {
      found = f;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace

ExactCompletion::ExactCompletion(std::shared_ptr<const Doctrine> p, ElementaryStructure delta)
    : p_(p), delta_(std::move(delta)), raw_(p, projection_class(p->base())) {}

PerObject ExactCompletion::diagonal_object(ObjectId a, const std::string& name) const {
  const Category& c = base();
  const ObjectId one = c.to_terminal(a).tgt;
  const NaryProduct n3 = np(c, {a, a, one});
  const Product aa = c.require_product(a, a);
  const Arrow to_aa = c.pair(aa, n3.projections[0], n3.projections[1]);
  return {name, a, one, p_->reindex(to_aa, delta_.delta(a)), std::nullopt, std::nullopt};
}

PerObject ExactCompletion::terminal_object(const std::string& name) const {
  const Category& c = base();
  const ObjectId one = *c.terminal();
  const NaryProduct n3 = np(c, {one, one, one});
  return {name, one, one, p_->fiber(n3.object).top(), std::nullopt, std::nullopt};
}

Report ExactCompletion::check_object(PerObject& o) const {
  const Category& c = base();
  const NaryProduct n3 = np(c, {o.a, o.a, o.c});
  const Lattice& f3 = p_->fiber(n3.object);
  const nlohmann::json where{{"object", o.name}, {"rho", f3.name(o.rho)}};
  if (!f3.contains(o.rho)) return Report::fail("object", "rho outside its fiber", where);
  const auto& q = n3.projections;
  auto sym = search(c, n3.object, o.c, [&](const Arrow& f) {
    return f3.leq(o.rho, p_->reindex(tup(c, n3, {q[1], q[0], f}, n3.object), o.rho));
  });
  if (!sym) return Report::fail("object clause 1", "symmetry: no witness f: A x A x C -> C", where);
  const NaryProduct n4 = np(c, {o.a, o.a, o.a, o.c});
  const auto& r = n4.projections;
  const Lattice& f4 = p_->fiber(n4.object);
  const Elem lhs = f4.meet(p_->reindex(tup(c, n3, {r[0], r[1], r[3]}, n4.object), o.rho),
                           p_->reindex(tup(c, n3, {r[1], r[2], r[3]}, n4.object), o.rho));
  auto trans = search(c, n4.object, o.c, [&](const Arrow& g) {
    return f4.leq(lhs, p_->reindex(tup(c, n3, {r[0], r[2], g}, n4.object), o.rho));
  });
  if (!trans)
    return Report::fail("object clause 2", "transitivity: no witness g: A x A x A x C -> C", where);
  o.symmetry = sym;
  o.transitivity = trans;
  return Report::pass();
}

Report ExactCompletion::check_morphism(const PerMorphism& m, MorphismWitnesses* found) const {
  const Category& c = base();
  const ObjectId A = m.source.a, C = m.source.c, B = m.target.a, D = m.target.c, E = m.e;
  const Elem rho = m.source.rho, sigma = m.target.rho, phi = m.phi;
  const NaryProduct nab = np(c, {A, B, E});
  const NaryProduct src3 = np(c, {A, A, C});
  const NaryProduct tgt3 = np(c, {B, B, D});
  const Lattice& fab = p_->fiber(nab.object);
  const nlohmann::json where{{"source", m.source.name},
                             {"target", m.target.name},
                             {"parameter", c.object_name(E)},
                             {"phi", fab.name(phi)}};
  if (!fab.contains(phi)) return Report::fail("morphism", "phi outside its fiber", where);
  MorphismWitnesses w;
  const auto& p = nab.projections;

  // 1: strictness on both sides
  auto f1 = search(c, nab.object, C, [&](const Arrow& f) {
    return fab.leq(phi, p_->reindex(tup(c, src3, {p[0], p[0], f}, nab.object), rho));
  });
  auto f2 = search(c, nab.object, D, [&](const Arrow& f) {
    return fab.leq(phi, p_->reindex(tup(c, tgt3, {p[1], p[1], f}, nab.object), sigma));
  });
  if (!f1 || !f2) return Report::fail("morphism clause 1", "phi is not strict", where);
  w.f1 = *f1;
  w.f2 = *f2;

  {  // 2: compatible with rho
    const NaryProduct n = np(c, {A, A, B, C, E});
    const auto& q = n.projections;
    const Lattice& fn = p_->fiber(n.object);
    const Elem lhs = fn.meet(p_->reindex(tup(c, src3, {q[0], q[1], q[3]}, n.object), rho),
                             p_->reindex(tup(c, nab, {q[1], q[2], q[4]}, n.object), phi));
    auto h = search(c, n.object, E, [&](const Arrow& h) {
      return fn.leq(lhs, p_->reindex(tup(c, nab, {q[0], q[2], h}, n.object), phi));
    });
    if (!h) return Report::fail("morphism clause 2", "phi is not compatible with rho", where);
    w.h = *h;
  }
  {  // 3: compatible with sigma
    const NaryProduct n = np(c, {A, B, B, D, E});
    const auto& q = n.projections;
    const Lattice& fn = p_->fiber(n.object);
    const Elem lhs = fn.meet(p_->reindex(tup(c, tgt3, {q[1], q[2], q[3]}, n.object), sigma),
                             p_->reindex(tup(c, nab, {q[0], q[1], q[4]}, n.object), phi));
    auto k = search(c, n.object, E, [&](const Arrow& k) {
      return fn.leq(lhs, p_->reindex(tup(c, nab, {q[0], q[2], k}, n.object), phi));
    });
    if (!k) return Report::fail("morphism clause 3", "phi is not compatible with sigma", where);
    w.k = *k;
  }
  {  // 4: single-valued
    const NaryProduct n = np(c, {A, B, B, E});
    const auto& q = n.projections;
    const Lattice& fn = p_->fiber(n.object);
    const Elem lhs = fn.meet(p_->reindex(tup(c, nab, {q[0], q[1], q[3]}, n.object), phi),
                             p_->reindex(tup(c, nab, {q[0], q[2], q[3]}, n.object), phi));
    auto l = search(c, n.object, D, [&](const Arrow& l) {
      return fn.leq(lhs, p_->reindex(tup(c, tgt3, {q[1], q[2], l}, n.object), sigma));
    });
    if (!l) return Report::fail("morphism clause 4", "phi is not single-valued", where);
    w.l = *l;
  }
  {  // 5: entire
    const NaryProduct n = np(c, {A, C});
    const auto& q = n.projections;
    const Lattice& fn = p_->fiber(n.object);
    const Elem lhs = p_->reindex(tup(c, src3, {q[0], q[0], q[1]}, n.object), rho);
    bool ok = false;
    c.for_each_arrow(n.object, B, [&](const Arrow& g1) {
      auto g2 = search(c, n.object, E, [&](const Arrow& g2) {
        return fn.leq(lhs, p_->reindex(tup(c, nab, {q[0], g1, g2}, n.object), phi));
      });
      if (!g2) return true;
      w.g1 = g1;
      w.g2 = *g2;
      ok = true;
      return false;
    });
    if (!ok) return Report::fail("morphism clause 5", "phi is not entire", where);
  }
  if (found) *found = w;
  return Report::pass();
}

PerMorphism ExactCompletion::identity(const PerObject& o) const { return {o, o, o.c, o.rho}; }

PerMorphism ExactCompletion::compose(const PerMorphism& phi, const PerMorphism& psi,
                                     CompositionRule rule) const {
  if (phi.target.a != psi.source.a || phi.target.c != psi.source.c ||
      phi.target.rho != psi.source.rho)
    throw InputError("composition of non-adjacent morphisms");
  const Category& c = base();
  const ObjectId A = phi.source.a, B = phi.target.a, Cc = psi.target.a;
  const NaryProduct param = np(c, {B, phi.e, psi.e});
  const NaryProduct rel = np(c, {A, Cc, param.object});
  const auto& r = rel.projections;
  const Arrow qb = c.compose(param.projections[0], r[2]);
  const Arrow qe = c.compose(param.projections[1], r[2]);
  const Arrow qe2 = c.compose(param.projections[2], r[2]);
  const Elem left = p_->reindex(tup(c, np(c, {A, B, phi.e}), {r[0], qb, qe}, rel.object), phi.phi);
  Elem out = left;
  if (rule == CompositionRule::Standard) {
    const Elem right =
        p_->reindex(tup(c, np(c, {B, Cc, psi.e}), {qb, r[1], qe2}, rel.object), psi.phi);
    out = p_->fiber(rel.object).meet(left, right);
  }
  return {phi.source, psi.target, param.object, out};
}

CompletionElement ExactCompletion::packaged(const PerMorphism& m) const {
  const Category& c = base();
  const NaryProduct nab = np(c, {m.source.a, m.target.a, m.e});
  const Product ab = c.require_product(m.source.a, m.target.a);
  return {c.pair(ab, nab.projections[0], nab.projections[1]), m.phi};
}

bool ExactCompletion::equal(const PerMorphism& x, const PerMorphism& y) const {
  if (x.source.a != y.source.a || x.target.a != y.target.a) return false;
  return raw_.equivalent(packaged(x), packaged(y));
}

PerMorphism ExactCompletion::graph(const Arrow& u, const PerObject& source,
                                   const PerObject& target) const {
  const Category& c = base();
  if (u.src != source.a || u.tgt != target.a)
    throw InputError("graph: arrow does not match the objects");
  const ObjectId one = *c.terminal();
  const NaryProduct nab = np(c, {u.src, u.tgt, one});
  const Product bb = c.require_product(u.tgt, u.tgt);
  const Arrow f = c.pair(bb, c.compose(u, nab.projections[0]), nab.projections[1]);
  return {source, target, one, p_->reindex(f, delta_.delta(u.tgt))};
}

Report ExactCompletion::check_object_completion_reading(const PerObject& o) const {
  const Category& c = base();
  const NaryProduct n3 = np(c, {o.a, o.a, o.c});
  const Product aa = c.require_product(o.a, o.a);
  const CompletionElement rbar{c.pair(aa, n3.projections[0], n3.projections[1]), o.rho};
  const nlohmann::json where{{"object", o.name}};
  if (!raw_.leq(rbar, raw_.reindex(c.pair(aa, aa.pr2, aa.pr1), rbar)))
    return Report::fail("object symmetry (completion)", "relation is not symmetric", where);
  const NaryProduct a3 = np(c, {o.a, o.a, o.a});
  const auto& q = a3.projections;
  const auto lhs = raw_.meet(raw_.reindex(c.pair(aa, q[0], q[1]), rbar),
                             raw_.reindex(c.pair(aa, q[1], q[2]), rbar));
  if (!raw_.leq(lhs, raw_.reindex(c.pair(aa, q[0], q[2]), rbar)))
    return Report::fail("object transitivity (completion)", "relation is not transitive", where);
  return Report::pass();
}

Report ExactCompletion::check_completion_reading(const PerMorphism& m) const {
  const Category& c = base();
  const ObjectId A = m.source.a, B = m.target.a;
  const Product aa = c.require_product(A, A);
  const Product bb = c.require_product(B, B);
  const Product ab = c.require_product(A, B);
  const NaryProduct s3 = np(c, {A, A, m.source.c});
  const NaryProduct t3 = np(c, {B, B, m.target.c});
  const CompletionElement rbar{c.pair(aa, s3.projections[0], s3.projections[1]), m.source.rho};
  const CompletionElement sbar{c.pair(bb, t3.projections[0], t3.projections[1]), m.target.rho};
  const CompletionElement big = packaged(m);
  const nlohmann::json where{{"source", m.source.name},
                             {"target", m.target.name},
                             {"relation", raw_.to_json(big)}};
  auto fail = [&](int clause, const char* what) {
    return Report::fail("completion reading clause " + std::to_string(clause), what, where);
  };

  const auto strict = raw_.meet(raw_.reindex(c.pair(aa, ab.pr1, ab.pr1), rbar),
                                raw_.reindex(c.pair(bb, ab.pr2, ab.pr2), sbar));
  if (!raw_.leq(big, strict)) return fail(1, "relation is not strict");
  {
    const NaryProduct n = np(c, {A, A, B});
    const auto& q = n.projections;
    const auto lhs = raw_.meet(raw_.reindex(c.pair(aa, q[0], q[1]), rbar),
                               raw_.reindex(c.pair(ab, q[1], q[2]), big));
    if (!raw_.leq(lhs, raw_.reindex(c.pair(ab, q[0], q[2]), big)))
      return fail(2, "relation is not compatible with the source");
  }
  {
    const NaryProduct n = np(c, {A, B, B});
    const auto& q = n.projections;
    const auto lhs = raw_.meet(raw_.reindex(c.pair(bb, q[1], q[2]), sbar),
                               raw_.reindex(c.pair(ab, q[0], q[1]), big));
    if (!raw_.leq(lhs, raw_.reindex(c.pair(ab, q[0], q[2]), big)))
      return fail(3, "relation is not compatible with the target");
    const auto sv = raw_.meet(raw_.reindex(c.pair(ab, q[0], q[1]), big),
                              raw_.reindex(c.pair(ab, q[0], q[2]), big));
    if (!raw_.leq(sv, raw_.reindex(c.pair(bb, q[1], q[2]), sbar)))
      return fail(4, "relation is not single-valued");
  }
  const Arrow id = c.identity(A);
  const auto diag = raw_.reindex(c.pair(aa, id, id), rbar);
  if (!raw_.leq(diag, raw_.exists(ab.pr1, big))) return fail(5, "relation is not entire");
  return Report::pass();
}

ExactCategoryResult verify_category(const ExactCompletion& ex, std::vector<PerObject> objects,
                                    const std::vector<ObjectId>& parameters, std::size_t budget,
                                    CompositionRule rule) {
  const Category& c = ex.base();
  const Doctrine& p = ex.doctrine();
  ExactCategoryResult res;
  if (budget == 0) throw ResourceError("exact completion: candidate budget is 0");
  for (auto& o : objects) {
    res.report = ex.check_object(o);
    if (!res.report) {
      res.objects = objects;
      return res;
    }
    res.report = ex.check_object_completion_reading(o);
    if (!res.report) {
      res.objects = objects;
      return res;
    }
  }
  res.objects = objects;
  const ObjectId one = *c.terminal();

  // Every valid phi, grouped into classes; members kept for well-definedness.
  std::vector<std::vector<PerMorphism>> members;
  auto find_class = [&](const PerMorphism& m, std::size_t i, std::size_t j) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < res.morphisms.size(); ++k)
      if (res.ends[k] == std::pair{i, j} && ex.equal(res.morphisms[k], m)) return k;
    return std::nullopt;
  };
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j)
      for (ObjectId e : parameters) {
        const NaryProduct nab = np(c, {objects[i].a, objects[j].a, e});
        const Lattice& f = p.fiber(nab.object);
        res.candidates += f.size();
        if (res.candidates > budget)
          throw ResourceError("exact completion: " + std::to_string(res.candidates) +
                              " candidates exceed budget " + std::to_string(budget) + " after " +
                              std::to_string(res.morphisms.size()) + " classes");
        for (Elem phi : f.elements()) {
          const PerMorphism m{objects[i], objects[j], e, phi};
          const bool valid = ex.check_morphism(m).ok();
          if (e == one) {
            const bool reading = ex.check_completion_reading(m).ok();
            ++res.cross_checked;
            if (valid != reading) {
              res.report = Report::fail(
                  "completion reading", "clauses and completion reading disagree",
                  {{"source", objects[i].name},
                   {"target", objects[j].name},
                   {"phi", f.name(phi)},
                   {"clauses", valid},
                   {"completion", reading}});
              return res;
            }
          }
          if (!valid) continue;
          if (auto k = find_class(m, i, j)) {
            members[*k].push_back(m);
          } else {
            res.morphisms.push_back(m);
            res.ends.emplace_back(i, j);
            members.push_back({m});
          }
        }
      }

  for (std::size_t i = 0; i < objects.size(); ++i) {
    const PerMorphism id = ex.identity(objects[i]);
    if (auto r = ex.check_morphism(id); !r) {
      res.report = r;
      return res;
    }
    auto k = find_class(id, i, i);
    if (!k) {
      res.report = Report::fail("identity", "identity outside the enumerated classes",
                                {{"object", objects[i].name}});
      return res;
    }
    res.identities.push_back(*k);
  }

  const std::size_t n = res.morphisms.size();
  std::vector<std::vector<std::int64_t>> table(n, std::vector<std::int64_t>(n, -1));
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      if (res.ends[f].second != res.ends[g].first) continue;
      std::optional<std::size_t> cls;
      for (const auto& mf : members[f])
        for (const auto& mg : members[g]) {
          const PerMorphism gf = ex.compose(mf, mg, rule);
          if (auto r = ex.check_morphism(gf); !r) {
            res.report = Report::fail("composition", "composite is not a morphism: " + r.law,
                                      {{"f", f}, {"g", g}, {"detail", r.counterexample}});
            return res;
          }
          auto k = find_class(gf, res.ends[f].first, res.ends[g].second);
          if (!k) {
            res.report = Report::fail("composition", "composite matches no class",
                                      {{"f", f}, {"g", g}});
            return res;
          }
          if (cls && *cls != *k) {
            res.report = Report::fail("composition", "composite depends on representatives",
                                      {{"f", f}, {"g", g}});
            return res;
          }
          cls = k;
        }
      table[f][g] = static_cast<std::int64_t>(*cls);
      res.composition.push_back({g, f, *cls});
    }

  for (std::size_t f = 0; f < n; ++f) {
    const auto [i, j] = res.ends[f];
    if (table[res.identities[i]][f] != static_cast<std::int64_t>(f) ||
        table[f][res.identities[j]] != static_cast<std::int64_t>(f)) {
      res.report = Report::fail("identity law", "identity is not neutral", {{"morphism", f}});
      return res;
    }
  }
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      if (table[f][g] < 0) continue;
      for (std::size_t h = 0; h < n; ++h) {
        if (table[g][h] < 0) continue;
        const PerMorphism a = ex.compose(ex.compose(res.morphisms[f], res.morphisms[g], rule),
                                         res.morphisms[h], rule);
        const PerMorphism b = ex.compose(res.morphisms[f],
                                         ex.compose(res.morphisms[g], res.morphisms[h], rule), rule);
        if (table[table[f][g]][h] != table[f][table[g][h]] || !ex.equal(a, b)) {
          res.report = Report::fail("associativity", "h.(g.f) differs from (h.g).f",
                                    {{"f", f}, {"g", g}, {"h", h}});
          return res;
        }
      }
    }

  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j) {
      const PerObject& s = objects[i];
      const PerObject& t = objects[j];
      if (s.c != one || t.c != one) continue;
      if (s.rho != ex.diagonal_object(s.a, s.name).rho ||
          t.rho != ex.diagonal_object(t.a, t.name).rho)
        continue;
      bool ok = true;
      nlohmann::json where;
      c.for_each_arrow(s.a, t.a, [&](const Arrow& u) {
        const PerMorphism g = ex.graph(u, s, t);
        if (!ex.check_morphism(g) || !find_class(g, i, j)) {
          ok = false;
          where = {{"arrow", c.arrow_name(u)}, {"source", s.name}, {"target", t.name}};
          return false;
        }
        return true;
      });
      if (!ok) {
        res.report = Report::fail("graph", "graph of a base arrow is not a morphism", where);
        return res;
      }
    }
  res.report = Report::pass();
  return res;
}

nlohmann::json to_json(const ExactCompletion& ex, const ExactCategoryResult& r) {
  const Category& c = ex.base();
  const Doctrine& p = ex.doctrine();
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& o : r.objects) {
    const NaryProduct n3 = np(c, {o.a, o.a, o.c});
    objects.push_back({{"name", o.name},
                       {"carrier", c.object_name(o.a)},
                       {"parameter", c.object_name(o.c)},
                       {"rho", p.fiber(n3.object).name(o.rho)}});
  }
  nlohmann::json morphisms = nlohmann::json::array();
  for (std::size_t k = 0; k < r.morphisms.size(); ++k) {
    const auto& m = r.morphisms[k];
    const NaryProduct nab = np(c, {m.source.a, m.target.a, m.e});
    morphisms.push_back({{"id", k},
                         {"source", r.ends[k].first},
                         {"target", r.ends[k].second},
                         {"parameter", c.object_name(m.e)},
                         {"phi", p.fiber(nab.object).name(m.phi)}});
  }
  nlohmann::json hom = nlohmann::json::object();
  for (std::size_t i = 0; i < r.objects.size(); ++i)
    for (std::size_t j = 0; j < r.objects.size(); ++j) {
      std::size_t count = 0;
      for (const auto& e : r.ends) count += e == std::pair{i, j};
      hom[r.objects[i].name + "->" + r.objects[j].name] = count;
    }
  return {{"objects", objects},
          {"morphisms", morphisms},
          {"hom_counts", hom},
          {"identities", r.identities},
          {"composition", r.composition},
          {"candidates", r.candidates},
          {"cross_checked", r.cross_checked},
          {"report", r.report.to_json()}};
}

}  // namespace exco
