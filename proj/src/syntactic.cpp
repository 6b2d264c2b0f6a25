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

#include "exco/syntactic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>

namespace exco {

// ---------------------------------------------------------------------------
// Signature

std::vector<std::string> Signature::names() const {
  std::vector<std::string> out;
  for (const auto& [n, a] : predicates) out.push_back(n);
  return out;
}

std::size_t Signature::index(const std::string& name) const {
  auto it = predicates.find(name);
  if (it == predicates.end()) throw InputError("unknown predicate '" + name + "'");
  return static_cast<std::size_t>(std::distance(predicates.begin(), it));
}

unsigned Signature::arity(std::size_t index) const {
  if (index >= predicates.size()) throw InputError("predicate index out of range");
  return std::next(predicates.begin(), static_cast<std::ptrdiff_t>(index))->second;
}

namespace {

bool identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !identifier_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), identifier_char) && s != "T" && s != "exists";
}

}  // namespace

Signature Signature::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("signature must be an object");
  for (const auto& [k, v] : j.items())
    if (k != "predicates") throw InputError("unknown signature key '" + k + "'");
  if (!j.contains("predicates") || !j["predicates"].is_object())
    throw InputError("signature needs a 'predicates' object");
  Signature s;
  for (const auto& [name, arity] : j["predicates"].items()) {
    if (!valid_identifier(name)) throw InputError("invalid predicate name '" + name + "'");
    if (!arity.is_number_unsigned() || arity.get<unsigned>() > 8)
      throw InputError("arity of '" + name + "' must be an integer in 0..8");
    s.predicates[name] = arity.get<unsigned>();
  }
  return s;
}

nlohmann::json Signature::to_json() const {
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [n, a] : predicates) p[n] = a;
  return {{"predicates", p}};
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

std::vector<Atom> sorted_unique(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

std::vector<std::string> default_context(unsigned n) {
  std::vector<std::string> out;
  for (unsigned i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

void require_same_context(const ExistentialFormula& a, const ExistentialFormula& b) {
  if (a.context != b.context) throw InputError("formulas live in different contexts");
}

}  // namespace

ExistentialFormula canonicalize(ExistentialFormula f) {
  const unsigned n = static_cast<unsigned>(f.context.size());
  for (const Atom& a : f.atoms)
    for (unsigned v : a.args)
      if (v >= f.variables()) throw InputError("atom variable out of range");
  if (f.bound > 8) throw ResourceError("too many bound variables to canonicalize");
  std::vector<unsigned> perm(f.bound);
  std::iota(perm.begin(), perm.end(), 0u);
  std::optional<std::vector<Atom>> best;
  do {
    std::vector<Atom> moved = f.atoms;
    for (Atom& a : moved)
      for (unsigned& v : a.args)
        if (v >= n) v = n + perm[v - n];
    moved = sorted_unique(std::move(moved));
    if (!best || moved < *best) best = std::move(moved);
  } while (std::next_permutation(perm.begin(), perm.end()));
  f.atoms = std::move(*best);
  return f;
}

namespace {

class Parser {
 public:
  Parser(const Signature& sig, const std::string& text, const std::vector<std::string>& context)
      : sig_(sig), text_(text), context_(context) {}

  ExistentialFormula run() {
    std::set<std::string> seen;
    for (const auto& v : context_) {
      if (!valid_identifier(v)) throw InputError("invalid context variable '" + v + "'");
      if (!seen.insert(v).second) throw InputError("duplicate context variable '" + v + "'");
    }
    conj();
    skip();
    if (pos_ < text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    ExistentialFormula f{context_, static_cast<unsigned>(bound_.size()), atoms_};
    return canonicalize(std::move(f));
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) {
      const std::string got = pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input";
      throw ParseError("expected '" + std::string(1, c) + "' but found '" + got + "'", pos_);
    }
    ++pos_;
  }
  std::string identifier() {
    skip();
    if (pos_ >= text_.size() || !identifier_start(text_[pos_]))
      throw ParseError("expected an identifier", pos_);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && identifier_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  unsigned variable(const std::string& name, std::size_t at) {
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (bound_[scope_[i]] == name) return static_cast<unsigned>(context_.size() + scope_[i]);
    for (std::size_t i = 0; i < context_.size(); ++i)
      if (context_[i] == name) return static_cast<unsigned>(i);
    throw ParseError("unbound variable '" + name + "'", at);
  }

  void conj() {
    unit();
    while (peek('&')) {
      ++pos_;
      unit();
    }
  }

  void unit() {
    skip();
    if (peek('(')) {
      ++pos_;
      const std::size_t depth = scope_.size();
      conj();
      expect(')');
      scope_.resize(depth);
      return;
    }
    const std::size_t at = pos_;
    const std::string word = identifier();
    if (word == "T") return;
    if (word == "exists") {
      const std::size_t depth = scope_.size();
      do {
        const std::size_t vat = (skip(), pos_);
        const std::string v = identifier();
        if (!valid_identifier(v)) throw ParseError("invalid bound variable '" + v + "'", vat);
        const bool clash = std::find(context_.begin(), context_.end(), v) != context_.end() ||
                           std::find(bound_.begin(), bound_.end(), v) != bound_.end();
        if (clash) throw ParseError("duplicate bound variable '" + v + "'", vat);
        scope_.push_back(bound_.size());
        bound_.push_back(v);
      } while (peek(',') && (++pos_, true));
      expect('.');
      conj();
      scope_.resize(depth);
      return;
    }
    if (!peek('(')) throw ParseError("expected '(' after predicate '" + word + "'", pos_);
    auto it = sig_.predicates.find(word);
    if (it == sig_.predicates.end()) throw ParseError("unknown predicate '" + word + "'", at);
    ++pos_;
    Atom a{sig_.index(word), {}};
    if (!peek(')')) {
      do {
        const std::size_t vat = (skip(), pos_);
        a.args.push_back(variable(identifier(), vat));
      } while (peek(',') && (++pos_, true));
    }
    expect(')');
    if (a.args.size() != it->second)
      throw ParseError("predicate '" + word + "' expects " + std::to_string(it->second) +
                           " arguments, got " + std::to_string(a.args.size()),
                       at);
    atoms_.push_back(std::move(a));
  }

  const Signature& sig_;
  const std::string& text_;
  const std::vector<std::string>& context_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
  std::vector<std::size_t> scope_;
  std::vector<Atom> atoms_;
};

std::vector<std::string> variable_names(const ExistentialFormula& f) {
  std::vector<std::string> names = f.context;
  for (unsigned i = 1; names.size() < f.variables(); ++i) {
    const std::string y = "y" + std::to_string(i);
    if (std::find(f.context.begin(), f.context.end(), y) == f.context.end()) names.push_back(y);
  }
  return names;
}

}  // namespace

ExistentialFormula parse_formula(const Signature& sig, const std::string& text,
                                 const std::vector<std::string>& context) {
  return Parser(sig, text, context).run();
}

std::string print_formula(const Signature& sig, const ExistentialFormula& f) {
  const auto names = variable_names(f);
  const auto preds = sig.names();
  std::string out;
  if (f.bound > 0) {
    out = "exists ";
    for (unsigned i = 0; i < f.bound; ++i)
      out += (i ? "," : "") + names[f.context.size() + i];
    out += ". ";
  }
  if (f.atoms.empty()) return out + "T";
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    const Atom& a = f.atoms[i];
    if (i) out += " & ";
    out += preds.at(a.pred) + "(";
    for (std::size_t k = 0; k < a.args.size(); ++k) out += (k ? "," : "") + names.at(a.args[k]);
    out += ")";
  }
  return out;
}

bool entails_conj(const ExistentialFormula& psi, const ExistentialFormula& phi) {
  require_same_context(psi, phi);
  if (!psi.conjunctive() || !phi.conjunctive())
    throw InputError("entails_conj expects conjunctive formulas");
  return std::includes(psi.atoms.begin(), psi.atoms.end(), phi.atoms.begin(), phi.atoms.end());
}

ExistentialFormula reindex_syntactic(const ContextCategory& c, const Arrow& f,
                                     const ExistentialFormula& phi,
                                     const std::vector<std::string>& source_context) {
  if (!c.has_object(f.src) || !c.has_object(f.tgt)) throw InputError("substitution out of range");
  if (phi.context.size() != f.tgt || source_context.size() != f.src)
    throw InputError("substitution does not match the contexts");
  const unsigned m = f.tgt;
  const unsigned n = f.src;
  ExistentialFormula out{source_context, phi.bound, phi.atoms};
  for (Atom& a : out.atoms)
    for (unsigned& v : a.args) v = v < m ? ContextCategory::image(f, v) : n + (v - m);
  return canonicalize(std::move(out));
}

// ---------------------------------------------------------------------------
// Models

namespace {

std::size_t power(std::size_t base, unsigned exp) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Model Model::empty(const Signature& sig, unsigned size) {
  Model m{size, {}};
  for (std::size_t p = 0; p < sig.size(); ++p) m.tables.emplace_back(power(size, sig.arity(p)), false);
  return m;
}

bool Model::holds(const Atom& a, const std::vector<unsigned>& env) const {
  std::size_t idx = 0;
  for (unsigned v : a.args) idx = idx * size + env[v];
  return tables[a.pred][idx];
}

nlohmann::json Model::to_json(const Signature& sig) const {
  nlohmann::json rel = nlohmann::json::object();
  const auto preds = sig.names();
  for (std::size_t p = 0; p < tables.size(); ++p) {
    nlohmann::json tuples = nlohmann::json::array();
    const unsigned ar = sig.arity(p);
    for (std::size_t idx = 0; idx < tables[p].size(); ++idx) {
      if (!tables[p][idx]) continue;
      std::vector<unsigned> t(ar);
      std::size_t rest = idx;
      for (unsigned k = ar; k-- > 0;) {
        t[k] = static_cast<unsigned>(rest % size);
        rest /= size;
      }
      tuples.push_back(t);
    }
    rel[preds[p]] = tuples;
  }
  return {{"size", size}, {"relations", rel}};
}

Model Model::from_json(const Signature& sig, const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("model must be an object");
  for (const auto& [k, v] : j.items())
    if (k != "size" && k != "relations") throw InputError("unknown model key '" + k + "'");
  if (!j.contains("size") || !j["size"].is_number_unsigned()) throw InputError("model needs a size");
  Model m = empty(sig, j["size"].get<unsigned>());
  if (j.contains("relations")) {
    for (const auto& [name, tuples] : j["relations"].items()) {
      const std::size_t p = sig.index(name);
      for (const auto& t : tuples) {
        if (!t.is_array() || t.size() != sig.arity(p))
          throw InputError("tuple of wrong arity for '" + name + "'");
        std::size_t idx = 0;
        for (const auto& v : t) {
          if (!v.is_number_unsigned() || v.get<unsigned>() >= m.size)
            throw InputError("tuple element outside the model");
          idx = idx * m.size + v.get<unsigned>();
        }
        m.tables[p][idx] = true;
      }
    }
  }
  return m;
}

namespace {

// Atoms grouped by the largest variable they mention, so that each atom is
// tested as soon as its variables are assigned.
std::vector<std::vector<const Atom*>> atoms_by_level(const ExistentialFormula& f) {
  std::vector<std::vector<const Atom*>> out(f.variables() + 1);
  const unsigned n = static_cast<unsigned>(f.context.size());
  for (const Atom& a : f.atoms) {
    unsigned level = 0;
    for (unsigned v : a.args) level = std::max(level, v < n ? 0u : v - n + 1);
    out[level].push_back(&a);
  }
  return out;
}

}  // namespace

bool eval_on_model(const ExistentialFormula& f, const Model& m, const std::vector<unsigned>& env) {
  if (env.size() != f.context.size()) throw InputError("environment does not cover the context");
  for (unsigned v : env)
    if (v >= m.size) throw InputError("environment value outside the model");
  const auto levels = atoms_by_level(f);
  std::vector<unsigned> full(env);
  full.resize(f.variables(), 0);
  const unsigned n = static_cast<unsigned>(f.context.size());
  auto ok = [&](unsigned level) {
    for (const Atom* a : levels[level])
      if (!m.holds(*a, full)) return false;
    return true;
  };
  if (!ok(0)) return false;
  std::function<bool(unsigned)> search = [&](unsigned k) {
    if (k == f.bound) return true;
    for (unsigned v = 0; v < m.size; ++v) {
      full[n + k] = v;
      if (ok(k + 1) && search(k + 1)) return true;
    }
    return false;
  };
  return search(0);
}

Model canonical_model(const Signature& sig, const ExistentialFormula& f) {
  Model m = Model::empty(sig, f.variables());
  std::vector<unsigned> id(f.variables());
  std::iota(id.begin(), id.end(), 0u);
  for (const Atom& a : f.atoms) {
    std::size_t idx = 0;
    for (unsigned v : a.args) idx = idx * m.size + id[v];
    m.tables[a.pred][idx] = true;
  }
  return m;
}

Containment cq_contains(const Signature& sig, const ExistentialFormula& lhs,
                        const ExistentialFormula& rhs) {
  require_same_context(lhs, rhs);
  const std::set<Atom> target(lhs.atoms.begin(), lhs.atoms.end());
  const auto levels = atoms_by_level(rhs);
  const unsigned n = static_cast<unsigned>(rhs.context.size());
  std::vector<unsigned> h(rhs.variables());
  std::iota(h.begin(), h.begin() + n, 0u);
  auto ok = [&](unsigned level) {
    for (const Atom* a : levels[level]) {
      Atom moved{a->pred, a->args};
      for (unsigned& v : moved.args) v = h[v];
      if (!target.count(moved)) return false;
    }
    return true;
  };
  std::function<bool(unsigned)> search = [&](unsigned k) {
    if (k == rhs.bound) return true;
    for (unsigned v = 0; v < lhs.variables(); ++v) {
      h[n + k] = v;
      if (ok(k + 1) && search(k + 1)) return true;
    }
    return false;
  };
  Containment out;
  out.contained = ok(0) && search(0);
  if (out.contained)
    out.witness = h;
  else
    out.countermodel = canonical_model(sig, lhs);
  return out;
}

bool semantic_containment(const Signature& sig, const ExistentialFormula& lhs,
                          const ExistentialFormula& rhs, unsigned max_size) {
  require_same_context(lhs, rhs);
  const unsigned n = static_cast<unsigned>(lhs.context.size());
  for (unsigned size = n == 0 ? 0 : 1; size <= max_size; ++size) {
    std::size_t tuples = 0;
    for (std::size_t p = 0; p < sig.size(); ++p) tuples += power(size, sig.arity(p));
    if (tuples > 24) throw ResourceError("too many models to enumerate");
    const std::size_t envs = power(size, n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tuples); ++mask) {
      Model m = Model::empty(sig, size);
      std::size_t bit = 0;
      for (auto& t : m.tables)
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = (mask >> bit++) & 1;
      std::vector<unsigned> env(n);
      for (std::size_t e = 0; e < envs; ++e) {
        std::size_t rest = e;
        for (unsigned k = n; k-- > 0;) {
          env[k] = static_cast<unsigned>(rest % size);
          rest /= size;
        }
        if (eval_on_model(lhs, m, env) && !eval_on_model(rhs, m, env)) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Syntactic doctrine

SyntacticDoctrine::SyntacticDoctrine(Signature sig, std::shared_ptr<const ContextCategory> base)
    : sig_(std::move(sig)), base_(std::move(base)) {
  const auto preds = sig_.names();
  for (ObjectId n = 0; n <= base_->cap(); ++n) {
    std::vector<Atom> atoms;
    std::vector<std::string> names;
    const auto ctx = default_context(n);
    for (std::size_t p = 0; p < sig_.size(); ++p) {
      const unsigned ar = sig_.arity(p);
      const std::size_t count = power(n, ar);
      for (std::size_t idx = 0; idx < count; ++idx) {
        Atom a{p, std::vector<unsigned>(ar)};
        std::size_t rest = idx;
        for (unsigned k = ar; k-- > 0;) {
          a.args[k] = static_cast<unsigned>(rest % n);
          rest /= n;
        }
        std::string name = preds[p] + "(";
        for (unsigned k = 0; k < ar; ++k) name += (k ? "," : "") + ctx[a.args[k]];
        names.push_back(name + ")");
        atoms.push_back(std::move(a));
      }
      if (atoms.size() > 62)
        throw ResourceError("context of " + std::to_string(n) + " variables has too many atoms");
    }
    std::map<Atom, unsigned> index;
    for (unsigned i = 0; i < atoms.size(); ++i) index[atoms[i]] = i;
    fibers_.emplace_back(static_cast<unsigned>(atoms.size()), true, names);
    atoms_.push_back(std::move(atoms));
    atom_index_.push_back(std::move(index));
  }
}

const Lattice& SyntacticDoctrine::fiber(ObjectId a) const {
  if (a >= fibers_.size()) throw InputError("no fiber over context " + std::to_string(a));
  return fibers_[a];
}

Elem SyntacticDoctrine::reindex(const Arrow& f, Elem beta) const {
  if (f.tgt >= atoms_.size() || f.src >= atoms_.size()) throw InputError("substitution out of range");
  Elem out = 0;
  for (unsigned i = 0; i < atoms_[f.tgt].size(); ++i) {
    if (!(beta >> i & 1)) continue;
    Atom a = atoms_[f.tgt][i];
    for (unsigned& v : a.args) v = ContextCategory::image(f, v);
    out |= Elem{1} << atom_index_[f.src].at(a);
  }
  return out;
}

Elem SyntacticDoctrine::encode(ObjectId n, const std::vector<Atom>& atoms) const {
  if (n >= atoms_.size()) throw ResourceError("formula needs more variables than the base allows");
  Elem out = 0;
  for (const Atom& a : atoms) {
    auto it = atom_index_[n].find(a);
    if (it == atom_index_[n].end()) throw InputError("atom outside the signature");
    out |= Elem{1} << it->second;
  }
  return out;
}

std::vector<Atom> SyntacticDoctrine::decode(ObjectId n, Elem x) const {
  std::vector<Atom> out;
  for (unsigned i = 0; i < atoms_.at(n).size(); ++i)
    if (x >> i & 1) out.push_back(atoms_[n][i]);
  return out;
}

CompletionElement SyntacticDoctrine::to_completion(const ExistentialFormula& f) const {
  const ObjectId total = f.variables();
  const ObjectId n = static_cast<ObjectId>(f.context.size());
  if (total > base_->cap()) throw ResourceError("formula needs more variables than the base allows");
  return {base_->block(total, 0, n), encode(total, f.atoms)};
}

// ---------------------------------------------------------------------------
// Bounded fragment

std::vector<ExistentialFormula> enumerate_fragment(const FragmentBounds& b, unsigned context) {
  std::set<std::pair<unsigned, std::vector<Atom>>> seen;
  std::vector<ExistentialFormula> out;
  const auto ctx = default_context(context);
  for (unsigned k = 0; k <= b.max_bound; ++k) {
    const unsigned vars = context + k;
    std::vector<Atom> universe;
    for (std::size_t p = 0; p < b.signature.size(); ++p) {
      const unsigned ar = b.signature.arity(p);
      for (std::size_t idx = 0; idx < power(vars, ar); ++idx) {
        Atom a{p, std::vector<unsigned>(ar)};
        std::size_t rest = idx;
        for (unsigned q = ar; q-- > 0;) {
          a.args[q] = static_cast<unsigned>(rest % vars);
          rest /= vars;
        }
        universe.push_back(std::move(a));
      }
    }
    // Subsets of at most max_atoms atoms, by increasing index tuples.
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
      std::vector<Atom> atoms;
      for (std::size_t i : pick) atoms.push_back(universe[i]);
      ExistentialFormula f = canonicalize({ctx, k, atoms});
      if (seen.insert({f.bound, f.atoms}).second) {
        out.push_back(std::move(f));
        if (out.size() > b.budget) throw ResourceError("fragment exceeds the enumeration budget");
      }
      if (pick.size() == b.max_atoms) return;
      for (std::size_t i = from; i < universe.size(); ++i) {
        pick.push_back(i);
        grow(i + 1);
        pick.pop_back();
      }
    };
    grow(0);
  }
  return out;
}

ComparisonResult compare_with_completion(const FragmentBounds& b) {
  ComparisonResult res;
  const unsigned vars = b.max_context + b.max_bound;
  if (vars > 16) throw ResourceError("fragment needs more than 16 variables");
  auto base = std::make_shared<const ContextCategory>(vars, vars);
  auto p = std::make_shared<const SyntacticDoctrine>(b.signature, base);
  auto pe = complete(p, projection_class(*base));
  const Completion& raw = pe->raw();

  std::vector<std::vector<ExistentialFormula>> forms;
  std::vector<std::vector<CompletionElement>> elems;
  for (unsigned n = 0; n <= b.max_context; ++n) {
    forms.push_back(enumerate_fragment(b, n));
    res.formulas += forms.back().size();
    std::vector<CompletionElement> e;
    for (const auto& f : forms.back()) e.push_back(p->to_completion(f));
    elems.push_back(std::move(e));
  }

  auto compare = [&](unsigned n, std::size_t i, std::size_t j) -> bool {
    ++res.pairs;
    const bool abstract = raw.leq(elems[n][i], elems[n][j]).has_value();
    const bool cq = cq_contains(b.signature, forms[n][i], forms[n][j]).contained;
    if (cq) ++res.contained;
    if (abstract != cq) {
      res.report = Report::fail("completion order vs containment",
                                "abstract order and containment disagree",
                                {{"context", n},
                                 {"lhs", print_formula(b.signature, forms[n][i])},
                                 {"rhs", print_formula(b.signature, forms[n][j])},
                                 {"completion", abstract},
                                 {"containment", cq}});
      return false;
    }
    return true;
  };

  if (b.sample == 0) {
    std::size_t total = 0;
    for (const auto& f : forms) total += f.size() * f.size();
    if (total > b.budget) throw ResourceError("pair count exceeds the enumeration budget");
    for (unsigned n = 0; n <= b.max_context; ++n) {
      const std::size_t m = forms[n].size();
      std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          if (!compare(n, i, j)) return res;
          leq[i][j] = cq_contains(b.signature, forms[n][i], forms[n][j]).contained;
        }
      std::vector<std::size_t> reps;
      for (std::size_t i = 0; i < m; ++i)
        if (std::none_of(reps.begin(), reps.end(),
                         [&](std::size_t r) { return leq[i][r] && leq[r][i]; }))
          reps.push_back(i);
      res.classes.push_back(reps.size());
    }
  } else {
    std::mt19937_64 rng(b.seed);
    for (std::size_t s = 0; s < b.sample; ++s) {
      const unsigned n = static_cast<unsigned>(rng() % forms.size());
      const std::size_t i = rng() % forms[n].size();
      const std::size_t j = rng() % forms[n].size();
      if (!compare(n, i, j)) return res;
    }
  }
  return res;
}

ExistentialFormula random_formula(const Signature& sig, unsigned context, unsigned max_vars,
                                  unsigned max_atoms, std::mt19937_64& rng) {
  if (max_vars < context) throw InputError("context larger than the variable bound");
  ExistentialFormula f{default_context(context), 0, {}};
  f.bound = static_cast<unsigned>(rng() % (max_vars - context + 1));
  const unsigned vars = f.variables();
  const unsigned count = static_cast<unsigned>(rng() % (max_atoms + 1));
  for (unsigned i = 0; i < count && sig.size() > 0; ++i) {
    const std::size_t p = rng() % sig.size();
    const unsigned ar = sig.arity(p);
    if (ar > 0 && vars == 0) continue;
    Atom a{p, std::vector<unsigned>(ar)};
    for (unsigned& v : a.args) v = static_cast<unsigned>(rng() % vars);
    f.atoms.push_back(std::move(a));
  }
  return canonicalize(std::move(f));
}

ExistentialFormula random_weakening(const ExistentialFormula& f, unsigned max_vars,
                                    std::mt19937_64& rng) {
  const unsigned n = static_cast<unsigned>(f.context.size());
  if (max_vars < n) throw InputError("context larger than the variable bound");
  ExistentialFormula out{f.context, 0, {}};
  std::map<unsigned, unsigned> fresh;  // lhs bound variable -> first new variable
  for (const Atom& a : f.atoms) {
    if (rng() % 3 == 0) continue;
    Atom moved{a.pred, a.args};
    for (unsigned& v : moved.args) {
      if (v < n) continue;
      auto it = fresh.find(v);
      const bool split = it != fresh.end() && rng() % 2 == 0 && n + out.bound < max_vars;
      if (it == fresh.end() || split) {
        if (n + out.bound >= max_vars) {
          // No room: reuse an existing fresh variable when there is one.
          if (it == fresh.end()) {
            moved.args.clear();
            break;
          }
          v = it->second;
          continue;
        }
        const unsigned nv = n + out.bound++;
        if (it == fresh.end()) fresh[v] = nv;
        v = nv;
      } else {
        v = it->second;
      }
    }
    if (moved.args.size() == a.args.size()) out.atoms.push_back(std::move(moved));
  }
  return canonicalize(std::move(out));
}

}  // namespace exco
