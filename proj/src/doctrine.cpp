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

#include "exco/doctrine.hpp"

#include <algorithm>

namespace exco {

std::optional<Arrow> Doctrine::find_mediator(const Arrow& h, Elem alpha, const Arrow& f,
                                             Elem gamma) const {
  if (h.tgt != f.tgt) throw InputError("mediator between elements over different objects");
  const Lattice& l = fiber(h.src);
  std::optional<Arrow> found;
  base().for_each_arrow(h.src, f.src, [&](const Arrow& w) {
    if (base().compose(f, w) == h && l.leq(alpha, reindex(w, gamma))) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

// ---------------------------------------------------------------------------
// TableDoctrine

TableDoctrine::TableDoctrine(std::shared_ptr<const Category> base,
                             std::vector<TableLattice> fibers,
                             std::map<Arrow, std::vector<Elem>> reindex)
    : base_(std::move(base)), fibers_(std::move(fibers)), reindex_(std::move(reindex)) {
  const auto objs = base_->objects();
  if (fibers_.size() != objs.size()) throw InputError("one fiber per object required");
  for (const Arrow& f : base_->arrows()) {
    auto it = reindex_.find(f);
    if (it == reindex_.end())
      throw InputError("missing reindexing for arrow '" + base_->arrow_name(f) + "'");
    if (it->second.size() != fibers_.at(f.tgt).size())
      throw InputError("reindexing of '" + base_->arrow_name(f) + "' has the wrong length");
    for (Elem y : it->second)
      if (!fibers_.at(f.src).contains(y))
        throw InputError("reindexing of '" + base_->arrow_name(f) + "' leaves the fiber");
  }
}

const Lattice& TableDoctrine::fiber(ObjectId a) const {
  if (a >= fibers_.size()) throw InputError("no fiber over object " + std::to_string(a));
  return fibers_[a];
}

Elem TableDoctrine::reindex(const Arrow& f, Elem beta) const {
  auto it = reindex_.find(f);
  if (it == reindex_.end()) throw InputError("no reindexing for arrow");
  if (beta >= it->second.size()) throw InputError("element outside the fiber");
  return it->second[beta];
}

TableDoctrine TableDoctrine::with_entry(const Arrow& f, Elem beta, Elem value) const {
  TableDoctrine copy = *this;
  copy.reindex_.at(f).at(beta) = value;
  return copy;
}

TableDoctrine TableDoctrine::constant(std::shared_ptr<const Category> base,
                                      const TableLattice& fiber) {
  std::vector<TableLattice> fibers(base->objects().size(), fiber);
  std::map<Arrow, std::vector<Elem>> tables;
  for (const Arrow& f : base->arrows()) tables[f] = fiber.elements();
  return TableDoctrine(std::move(base), std::move(fibers), std::move(tables));
}

// ---------------------------------------------------------------------------
// PowersetDoctrine

PowersetDoctrine::PowersetDoctrine(std::shared_ptr<const SetCategory> base)
    : base_(std::move(base)) {
  for (ObjectId k = 0; k <= base_->cap(); ++k) {
    std::vector<std::string> names;
    for (unsigned x = 0; x < base_->points(k); ++x) names.push_back(base_->point_name(k, x));
    fibers_.emplace_back(base_->points(k), false, std::move(names));
  }
}

const Lattice& PowersetDoctrine::fiber(ObjectId a) const {
  base_->require_power(a);
  return fibers_[a];
}

Elem PowersetDoctrine::reindex(const Arrow& f, Elem beta) const {
  Elem out = 0;
  const unsigned n = base_->points(f.src);
  for (unsigned x = 0; x < n; ++x)
    if (beta >> SetCategory::apply(f, x) & 1) out |= Elem{1} << x;
  return out;
}

Elem PowersetDoctrine::image(const Arrow& f, Elem alpha) const {
  Elem out = 0;
  const unsigned n = base_->points(f.src);
  for (unsigned x = 0; x < n; ++x)
    if (alpha >> x & 1) out |= Elem{1} << SetCategory::apply(f, x);
  return out;
}

Elem PowersetDoctrine::diagonal(ObjectId a) const {
  const unsigned n = base_->points(a);
  base_->require_power(2 * a);
  Elem out = 0;
  for (unsigned x = 0; x < n; ++x) out |= Elem{1} << (x * n + x);
  return out;
}

std::optional<Arrow> PowersetDoctrine::find_mediator(const Arrow& h, Elem alpha, const Arrow& f,
                                                     Elem gamma) const {
  if (h.tgt != f.tgt) throw InputError("mediator between elements over different objects");
  const unsigned nb = base_->points(h.src);
  const unsigned nd = base_->points(f.src);
  std::vector<unsigned> table(nb);
  for (unsigned b = 0; b < nb; ++b) {
    const bool need = alpha >> b & 1;
    bool found = false;
    for (unsigned d = 0; d < nd && !found; ++d)
      if (SetCategory::apply(f, d) == SetCategory::apply(h, b) && (!need || (gamma >> d & 1))) {
        table[b] = d;
        found = true;
      }
    if (!found) return std::nullopt;
  }
  return base_->from_table(h.src, f.src, table);
}

// ---------------------------------------------------------------------------
// Morphisms and 2-cells

DoctrineMorphism identity_morphism(const Doctrine& p) {
  return {&p, &p, identity_functor(p.base()), [](ObjectId, Elem x) { return x; }};
}

DoctrineMorphism compose_morphisms(const DoctrineMorphism& n, const DoctrineMorphism& m) {
  const Functor F = m.functor;
  return {m.source, n.target, compose_functors(n.functor, m.functor),
          [n, m, F](ObjectId a, Elem x) { return n.b(F.object(a), m.b(a, x)); }};
}

TwoCell identity_two_cell(const DoctrineMorphism& m) {
  return {&m, &m, identity_transformation(m.functor)};
}

TwoCell vertical_compose(const TwoCell& outer, const TwoCell& inner) {
  TwoCell t{inner.from, outer.to, {&inner.from->functor, &outer.to->functor, {}}};
  const Category& c = *inner.from->functor.target;
  for (const auto& [a, arr] : inner.theta.components)
    t.theta.components[a] = c.compose(outer.theta.components.at(a), arr);
  return t;
}

namespace {

nlohmann::json elem_json(const Doctrine& p, ObjectId a, Elem x) {
  return {{"object", p.base().object_name(a)}, {"element", p.element_name(a, x)}};
}

// Arrow e = <pr1, pr2, pr2>: X x A -> (X x A) x A and the two arrows
// <pr1,pr2>, <pr2,pr3> out of (X x A) x A used by the second elementary
// condition.
struct ParameterDiagonal {
  ObjectId xa = 0, xaa = 0, aa = 0;
  Arrow e, p12, p23;
};

ParameterDiagonal parameter_diagonal(const Category& c, ObjectId x, ObjectId a) {
  ParameterDiagonal d;
  const Product xa = c.require_product(x, a);
  const Product xaa = c.require_product(xa.object, a);
  const Product aa = c.require_product(a, a);
  d.xa = xa.object;
  d.xaa = xaa.object;
  d.aa = aa.object;
  d.e = c.pair(xaa, c.identity(xa.object), xa.pr2);
  d.p12 = xaa.pr1;
  d.p23 = c.pair(aa, c.compose(xa.pr2, xaa.pr1), xaa.pr2);
  return d;
}

bool within_reach(const Doctrine& p, std::span<const ObjectId> factors) {
  // Power categories stop at their cap; beyond it the condition is skipped.
  const auto* pc = dynamic_cast<const PowerCategory*>(&p.base());
  if (!pc) return true;
  ObjectId sum = 0;
  for (ObjectId f : factors) sum += f;
  return sum <= pc->cap() && p.has_fiber(sum);
}

}  // namespace

// ---------------------------------------------------------------------------
// Checkers

Report check_primary(const Doctrine& p) {
  const Category& c = p.base();
  for (ObjectId a : c.objects()) {
    const Lattice& l = p.fiber(a);
    if (l.size() == 0) throw InputError("empty fiber over " + c.object_name(a));
    Report r = check_semilattice(l);
    if (!r) {
      r.counterexample["object"] = c.object_name(a);
      return r;
    }
  }
  const auto all = c.arrows();
  for (const Arrow& f : all) {
    SemilatticeMap m{&p.fiber(f.tgt), &p.fiber(f.src),
                     [&p, f](Elem y) { return p.reindex(f, y); }};
    Report r = check_map(m);
    if (!r) {
      r.law = "reindexing " + r.law;
      r.counterexample["arrow"] = c.arrow_name(f);
      return r;
    }
  }
  for (ObjectId a : c.objects())
    for (Elem x : p.elements(a))
      if (p.reindex(c.identity(a), x) != x)
        return Report::fail("functoriality", "P_id != id",
                            {{"object", c.object_name(a)}, {"element", p.element_name(a, x)}});
  for (const Arrow& f : all)
    for (const Arrow& g : all) {
      if (f.tgt != g.src) continue;
      const Arrow gf = c.compose(g, f);
      for (Elem x : p.elements(g.tgt))
        if (p.reindex(gf, x) != p.reindex(f, p.reindex(g, x)))
          return Report::fail("functoriality", "P_{g.f} != P_f . P_g",
                              {{"g", c.arrow_name(g)},
                               {"f", c.arrow_name(f)},
                               {"element", p.element_name(g.tgt, x)}});
    }
  return Report::pass();
}

Report check_adjunction(const Doctrine& p, const Arrow& f,
                        const std::function<Elem(Elem)>& left) {
  const Category& c = p.base();
  const Lattice& src = p.fiber(f.src);
  const Lattice& tgt = p.fiber(f.tgt);
  for (Elem a : src.elements()) {
    const Elem ea = left(a);
    if (!tgt.contains(ea))
      return Report::fail("adjunction", "left adjoint leaves the fiber",
                          {{"arrow", c.arrow_name(f)}, {"alpha", src.name(a)}});
    for (Elem b : tgt.elements())
      if (tgt.leq(ea, b) != src.leq(a, p.reindex(f, b)))
        return Report::fail("adjunction", "exists_f(a) <= b differs from a <= P_f(b)",
                            {{"arrow", c.arrow_name(f)},
                             {"alpha", src.name(a)},
                             {"beta", tgt.name(b)}});
  }
  return Report::pass();
}

std::optional<ElemMap> find_left_adjoint(const Doctrine& p, const Arrow& f) {
  const Lattice& src = p.fiber(f.src);
  const Lattice& tgt = p.fiber(f.tgt);
  const auto targets = tgt.elements();
  ElemMap out;
  for (Elem a : src.elements()) {
    std::vector<Elem> upper;
    for (Elem b : targets)
      if (src.leq(a, p.reindex(f, b))) upper.push_back(b);
    std::optional<Elem> least;
    for (Elem b : upper)
      if (std::all_of(upper.begin(), upper.end(), [&](Elem u) { return tgt.leq(b, u); })) {
        least = b;
        break;
      }
    if (!least) return std::nullopt;
    out[a] = *least;
  }
  if (!check_adjunction(p, f, [&out](Elem a) { return out.at(a); })) return std::nullopt;
  return out;
}

Report check_existential(const Doctrine& p, const ExistentialStructure& e) {
  const Category& c = p.base();
  const auto members = e.lambda.members(c);
  for (const Arrow& f : members) {
    Report r = check_adjunction(p, f, [&](Elem a) { return e.exists(f, a); });
    if (!r) return r;
  }
  // Beck-Chevalley on a square (apex, leg in the class, other leg).
  auto bc = [&](const Arrow& g, const Arrow& f, const Pullback& sq) -> Report {
    for (Elem b : p.elements(g.src)) {
      const Elem lhs = p.reindex(f, e.exists(g, b));
      const Elem rhs = e.exists(sq.lambda_leg, p.reindex(sq.other_leg, b));
      if (lhs != rhs)
        return Report::fail("Beck-Chevalley", "P_f exists_g != exists_g' P_f'",
                            {{"g", c.arrow_name(g)},
                             {"f", c.arrow_name(f)},
                             {"apex", c.object_name(sq.apex)},
                             {"beta", p.element_name(g.src, b)}});
    }
    return Report::pass();
  };
  const bool table_base = dynamic_cast<const PowerCategory*>(&c) == nullptr;
  std::map<ObjectId, std::vector<Arrow>> into;
  for (const Arrow& m : members) into[m.tgt].push_back(m);
  for (const Arrow& g : members)
    for (ObjectId x : c.objects())
      for (const Arrow& f : c.hom(x, g.tgt)) {
        const auto sq = c.choose_pullback(g, f);
        if (!sq)
          throw InputError("no chosen pullback of " + c.arrow_name(g) + " along " +
                           c.arrow_name(f));
        if (p.has_fiber(sq->apex)) {
          Report r = bc(g, f, *sq);
          if (!r) return r;
        }
        if (!c.is_listed(sq->apex)) continue;
        // Further pullback squares over the same cospan.
        for (ObjectId apex : c.objects()) {
          for (const Arrow& leg : into[f.src]) {
            if (leg.src != apex) continue;
            for (const Arrow& other : c.hom(apex, g.src)) {
              if (apex == sq->apex && leg == sq->lambda_leg && other == sq->other_leg) continue;
              if (c.compose(g, other) != c.compose(f, leg)) continue;
              if (!table_base) {
                // Only isomorphic copies of the chosen square: apex must match.
                if (apex != sq->apex) continue;
              }
              if (!is_pullback(c, g, f, {apex, leg, other})) continue;
              Report r = bc(g, f, {apex, leg, other});
              if (!r) return r;
            }
          }
        }
      }
  for (const Arrow& f : members)
    for (Elem a : p.elements(f.tgt))
      for (Elem b : p.elements(f.src)) {
        const Lattice& t = p.fiber(f.tgt);
        const Elem lhs = e.exists(f, p.fiber(f.src).meet(p.reindex(f, a), b));
        const Elem rhs = t.meet(a, e.exists(f, b));
        if (lhs != rhs)
          return Report::fail("Frobenius", "exists_f(P_f(a) ^ b) != a ^ exists_f(b)",
                              {{"arrow", c.arrow_name(f)},
                               {"alpha", t.name(a)},
                               {"beta", p.element_name(f.src, b)}});
      }
  return Report::pass();
}

Report check_elementary(const Doctrine& p, const ElementaryStructure& d) {
  const Category& c = p.base();
  for (ObjectId a : c.objects()) {
    const ObjectId aa_factors[] = {a, a};
    if (!within_reach(p, aa_factors)) continue;
    const Product aa = c.require_product(a, a);
    const Arrow diag = c.pair(aa, c.identity(a), c.identity(a));
    const Elem delta = d.delta(a);
    if (!p.fiber(aa.object).contains(delta))
      return Report::fail("elementary (i)", "delta outside P(A x A)",
                          {{"object", c.object_name(a)}});
    const Lattice& laa = p.fiber(aa.object);
    Report r = check_adjunction(
        p, diag, [&](Elem x) { return laa.meet(p.reindex(aa.pr1, x), delta); });
    if (!r) {
      r.law = "elementary (i)";
      r.counterexample["object"] = c.object_name(a);
      return r;
    }
  }
  for (ObjectId x : c.objects())
    for (ObjectId a : c.objects()) {
      const ObjectId factors[] = {x, a, a};
      if (!within_reach(p, factors)) continue;
      const ParameterDiagonal pd = parameter_diagonal(c, x, a);
      const Elem delta = d.delta(a);
      const Lattice& l = p.fiber(pd.xaa);
      Report r = check_adjunction(p, pd.e, [&](Elem al) {
        return l.meet(p.reindex(pd.p12, al), p.reindex(pd.p23, delta));
      });
      if (!r) {
        r.law = "elementary (ii)";
        r.counterexample["parameter"] = c.object_name(x);
        r.counterexample["object"] = c.object_name(a);
        return r;
      }
    }
  return Report::pass();
}

ElemMap derived_exists(const Doctrine& p, const ExistentialStructure& e,
                       const ElementaryStructure& d, const Arrow& f) {
  const Category& c = p.base();
  const ObjectId a = f.src;
  const ObjectId b = f.tgt;
  const Product ab = c.require_product(a, b);
  const Product bb = c.require_product(b, b);
  const Arrow fxid = c.pair(bb, c.compose(f, ab.pr1), ab.pr2);
  const Elem graph = p.reindex(fxid, d.delta(b));
  const Lattice& lab = p.fiber(ab.object);
  ElemMap out;
  for (Elem x : p.elements(a)) out[x] = e.exists(ab.pr2, lab.meet(graph, p.reindex(ab.pr1, x)));
  return out;
}

Report check_morphism(MorphismKind kind, const DoctrineMorphism& m,
                      const MorphismStructure& s) {
  const Doctrine& P = *m.source;
  const Doctrine& R = *m.target;
  const Category& c = P.base();
  const Functor& F = m.functor;
  if (F.source != &c || F.target != &R.base())
    throw InputError("morphism functor does not match the doctrines");
  if (Report r = check_functor(F); !r) return r;
  if (Report r = check_product_preserving(F); !r) return r;
  for (ObjectId a : c.objects()) {
    SemilatticeMap map{&P.fiber(a), &R.fiber(F.object(a)),
                       [&m, a](Elem x) { return m.b(a, x); }};
    Report r = check_map(map);
    if (!r) {
      r.law = "b " + r.law;
      r.counterexample["object"] = c.object_name(a);
      return r;
    }
  }
  for (const Arrow& f : c.arrows())
    for (Elem y : P.elements(f.tgt))
      if (m.b(f.src, P.reindex(f, y)) != R.reindex(F.arrow(f), m.b(f.tgt, y)))
        return Report::fail("b naturality", "b_A . P_f != R_Ff . b_B",
                            {{"arrow", c.arrow_name(f)}, {"element", P.element_name(f.tgt, y)}});
  if (kind == MorphismKind::Existential) {
    if (!s.source_exists || !s.target_exists)
      throw InputError("existential morphism check needs both existential structures");
    for (const Arrow& f : s.source_exists->lambda.members(c))
      for (Elem x : P.elements(f.src))
        if (m.b(f.tgt, s.source_exists->exists(f, x)) !=
            s.target_exists->exists(F.arrow(f), m.b(f.src, x)))
          return Report::fail("exists preservation", "b(exists_f a) != exists_Ff b(a)",
                              {{"arrow", c.arrow_name(f)}, {"element", P.element_name(f.src, x)}});
  }
  if (kind == MorphismKind::Elementary) {
    if (!s.source_delta || !s.target_delta)
      throw InputError("elementary morphism check needs both elementary structures");
    const Category& t = R.base();
    for (ObjectId a : c.objects()) {
      const ObjectId factors[] = {a, a};
      if (!within_reach(P, factors)) continue;
      const Product aa = c.require_product(a, a);
      const ObjectId fa = F.object(a);
      const Product faa = t.require_product(fa, fa);
      const Arrow cmp = t.pair(faa, F.arrow(aa.pr1), F.arrow(aa.pr2));
      if (m.b(aa.object, s.source_delta->delta(a)) != R.reindex(cmp, s.target_delta->delta(fa)))
        return Report::fail("delta preservation", "b(delta_A) != R_<Fpr1,Fpr2>(delta_FA)",
                            {{"object", c.object_name(a)}});
    }
  }
  return Report::pass();
}

Report check_two_cell(const TwoCell& t) {
  if (Report r = check_nattrans(t.theta); !r) return r;
  const DoctrineMorphism& m = *t.from;
  const DoctrineMorphism& n = *t.to;
  const Doctrine& P = *m.source;
  const Doctrine& R = *m.target;
  for (ObjectId a : P.base().objects())
    for (Elem x : P.elements(a)) {
      const Arrow th = t.theta.components.at(a);
      if (!R.fiber(m.functor.object(a)).leq(m.b(a, x), R.reindex(th, n.b(a, x))))
        return Report::fail("2-cell", "b_A(a) !<= R_theta(c_A(a))", elem_json(P, a, x));
    }
  return Report::pass();
}

}  // namespace exco
