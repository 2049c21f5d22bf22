#include "tcpel/kb.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace tcpel {

bool isVariable(const std::string& term) {
  return !term.empty() && std::isupper(static_cast<unsigned char>(term[0]));
}

std::string Atom::toString() const {
  std::string s = pred;
  s += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += args[i];
  }
  s += ')';
  return s;
}

bool Atom::isGround() const {
  return std::none_of(args.begin(), args.end(),
                      [](const std::string& a) { return isVariable(a); });
}

// --- concept expressions ----------------------------------------------------

namespace {
ConceptPtr make(ConceptExpr::Kind k, std::string name = {}, ConceptPtr l = {},
                ConceptPtr r = {}) {
  auto c = std::make_shared<ConceptExpr>();
  c->kind = k;
  c->name = std::move(name);
  c->left = std::move(l);
  c->right = std::move(r);
  return c;
}
}  // namespace

ConceptPtr top() {
  static const ConceptPtr t = make(ConceptExpr::Kind::Top);
  return t;
}
ConceptPtr bottom() {
  static const ConceptPtr b = make(ConceptExpr::Kind::Bottom);
  return b;
}
ConceptPtr atomic(std::string name) {
  return make(ConceptExpr::Kind::Atomic, std::move(name));
}
ConceptPtr nominal(std::string individual) {
  return make(ConceptExpr::Kind::Nominal, std::move(individual));
}
ConceptPtr conj(ConceptPtr a, ConceptPtr b) {
  return make(ConceptExpr::Kind::Conjunction, {}, std::move(a), std::move(b));
}
ConceptPtr exists(std::string role, ConceptPtr filler) {
  return make(ConceptExpr::Kind::Existential, std::move(role), std::move(filler));
}

std::string toString(const ConceptPtr& c) {
  using K = ConceptExpr::Kind;
  switch (c->kind) {
    case K::Top: return "top";
    case K::Bottom: return "bot";
    case K::Atomic: return c->name;
    case K::Nominal: return "{" + c->name + "}";
    case K::Conjunction:
      return "(" + toString(c->left) + " & " + toString(c->right) + ")";
    case K::Existential:
      return "(exists " + c->name + "." + toString(c->left) + ")";
  }
  return "?";
}

bool conceptEqual(const ConceptPtr& a, const ConceptPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  using K = ConceptExpr::Kind;
  if (a->kind == K::Conjunction)
    return conceptEqual(a->left, b->left) && conceptEqual(a->right, b->right);
  if (a->kind == K::Existential) return conceptEqual(a->left, b->left);
  return true;
}

// --- axioms ------------------------------------------------------------------

std::vector<std::string> ElAxiom::exposedVars() const {
  std::vector<std::string> v;
  for (const auto& s : {subjectVar, fillerVar, chainVar})
    if (!s.empty()) v.push_back(s);
  return v;
}

std::string ElAxiom::toString() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Gci:
      os << "gci " << tcpel::toString(lhs) << " <= " << tcpel::toString(rhs);
      break;
    case Kind::RoleInclusion: {
      os << "ri ";
      for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) os << " o ";
        os << chain[i];
      }
      os << " <= " << superRole;
      break;
    }
    case Kind::DomainRestriction:
      os << "dom(" << role << ") <= " << tcpel::toString(concept_);
      break;
    case Kind::RangeRestriction:
      os << "ran(" << role << ") <= " << tcpel::toString(concept_);
      break;
    case Kind::ConceptAssertion:
      os << tcpel::toString(concept_) << "(" << subject << ")";
      break;
    case Kind::RoleAssertion:
      os << role << "(" << subject << "," << object << ")";
      break;
  }
  return os.str();
}

bool axiomEqual(const ElAxiom& a, const ElAxiom& b) {
  return a.toString() == b.toString();
}
bool axiomLess(const ElAxiom& a, const ElAxiom& b) {
  return a.toString() < b.toString();
}

std::vector<std::string> MlnProgram::allConstants() const {
  std::vector<std::string> out = constants;
  for (const auto& [sort, cs] : sortConstants)
    out.insert(out.end(), cs.begin(), cs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool kbEqual(const TcpKnowledgeBase& a, const TcpKnowledgeBase& b) {
  if (!(a.signature == b.signature) || !(a.mln == b.mln)) return false;
  if (a.axioms.size() != b.axioms.size()) return false;
  for (std::size_t i = 0; i < a.axioms.size(); ++i) {
    if (!axiomEqual(a.axioms[i].axiom, b.axioms[i].axiom)) return false;
    if (!(a.axioms[i].annotation == b.axioms[i].annotation)) return false;
  }
  return true;
}

// --- validation --------------------------------------------------------------

bool atomsUnify(const Atom& a, const Atom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  // Variables are shared between the two atoms (a single substitution is
  // applied to both). No function symbols, so no occurs-check needed.
  std::map<std::string, std::string> sub;
  auto resolve = [&](std::string t) {
    while (isVariable(t)) {
      auto it = sub.find(t);
      if (it == sub.end()) break;
      t = it->second;
    }
    return t;
  };
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    std::string x = resolve(a.args[i]);
    std::string y = resolve(b.args[i]);
    if (x == y) continue;
    if (isVariable(x))
      sub[x] = y;
    else if (isVariable(y))
      sub[y] = x;
    else
      return false;  // two distinct constants
  }
  return true;
}

Verdict validateAnnotation(const Annotation& ann, const Signature& sig) {
  Verdict v;
  for (const auto& [atom, val] : ann.pairs) {
    auto it = sig.mlnPredicates.find(atom.pred);
    if (it == sig.mlnPredicates.end()) {
      v.add("annotation atom " + atom.toString() + ": unknown predicate '" +
            atom.pred + "'");
    } else if (static_cast<int>(atom.args.size()) != it->second) {
      v.add("annotation atom " + atom.toString() + ": arity mismatch (declared " +
            std::to_string(it->second) + ")");
    }
    (void)val;
  }
  for (std::size_t i = 0; i < ann.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < ann.pairs.size(); ++j)
      if (atomsUnify(ann.pairs[i].first, ann.pairs[j].first))
        v.add("annotation pairs " + ann.pairs[i].first.toString() + " and " +
              ann.pairs[j].first.toString() + " unify");
  return v;
}

Verdict validateCmln(const MlnProgram& m) {
  Verdict v;
  for (std::size_t i = 0; i < m.formulas.size(); ++i) {
    const auto& f = m.formulas[i];
    if (f.conjuncts.empty())
      v.add("formula " + std::to_string(i + 1) + ": empty conjunction");
    if (!std::isfinite(f.weight))
      v.add("formula " + std::to_string(i + 1) + ": non-finite weight");
  }
  return v;
}

Verdict checkElFragment(const ElAxiom& ax, const std::vector<AnnotatedAxiom>& context) {
  Verdict v;
  if (ax.kind == ElAxiom::Kind::RoleInclusion) {
    if (ax.chain.empty() || ax.chain.size() > 2)
      v.add("role inclusion " + ax.toString() +
            ": chain length must be 1 or 2 (split longer chains)");
    if (ax.chain.size() >= 2) {
      for (const auto& other : context) {
        if (other.axiom.kind == ElAxiom::Kind::RangeRestriction &&
            other.axiom.role == ax.superRole)
          v.add("role '" + ax.superRole + "' is the superrole of composition " +
                ax.toString() + " and carries range restriction " +
                other.axiom.toString());
      }
    }
  }
  return v;
}

namespace {

void collectAnnotationVars(const Annotation& ann, std::set<std::string>& vars) {
  for (const auto& [atom, val] : ann.pairs)
    for (const auto& arg : atom.args)
      if (isVariable(arg)) vars.insert(arg);
}

}  // namespace

Verdict validateKb(const TcpKnowledgeBase& kb) {
  Verdict v;
  for (const auto& [name, arity] : kb.signature.mlnPredicates) {
    if (kb.signature.conceptNames.count(name))
      v.add("name '" + name + "' used both as MLN predicate and concept name");
    if (kb.signature.roleNames.count(name))
      v.add("name '" + name + "' used both as MLN predicate and role name");
    if (arity < 1) v.add("MLN predicate '" + name + "' has arity < 1");
  }
  v.merge(validateCmln(kb.mln));
  for (const auto& aa : kb.axioms) {
    v.merge(validateAnnotation(aa.annotation, kb.signature));
    v.merge(checkElFragment(aa.axiom, kb.axioms));

    std::set<std::string> annVars;
    collectAnnotationVars(aa.annotation, annVars);
    for (const auto& av : aa.axiom.exposedVars()) {
      if (!annVars.count(av)) continue;
      bool instantiable = aa.axiom.kind == ElAxiom::Kind::Gci ||
                          aa.axiom.kind == ElAxiom::Kind::DomainRestriction;
      if (!instantiable)
        v.add("axiom " + aa.axiom.toString() + ": annotation binds variable '" +
              av + "' but instantiating this axiom kind leaves the supported fragment");
    }
  }
  return v;
}

}  // namespace tcpel
