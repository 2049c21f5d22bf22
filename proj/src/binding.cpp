#include "tcpel/binding.hpp"

#include <algorithm>
#include <set>

namespace tcpel {

namespace {

// Does `ground` match `pattern` under an extension of theta? If so, extend
// theta in place.
bool matchAtom(const Atom& pattern, const Atom& ground, Substitution& theta) {
  if (pattern.pred != ground.pred || pattern.args.size() != ground.args.size())
    return false;
  std::vector<std::pair<std::string, std::string>> added;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const std::string& p = pattern.args[i];
    const std::string& c = ground.args[i];
    if (isVariable(p)) {
      auto it = theta.find(p);
      if (it == theta.end()) {
        theta[p] = c;
        added.emplace_back(p, c);
      } else if (it->second != c) {
        for (auto& [k, v] : added) theta.erase(k);
        return false;
      }
    } else if (p != c) {
      for (auto& [k, v] : added) theta.erase(k);
      return false;
    }
  }
  return true;
}

void matchPairs(const std::vector<std::pair<Atom, bool>>& pairs, std::size_t i,
                const World& w, const GroundMln& g, Substitution& theta,
                std::vector<Substitution>& out) {
  if (i == pairs.size()) {
    out.push_back(theta);
    return;
  }
  const auto& [pattern, value] = pairs[i];
  for (std::size_t ai = 0; ai < g.atoms.size(); ++ai) {
    if (g.atoms[ai].pred != pattern.pred) continue;
    if (w.test(ai) != value) continue;
    Substitution saved = theta;
    if (matchAtom(pattern, g.atoms[ai], theta)) {
      matchPairs(pairs, i + 1, w, g, theta, out);
      theta = std::move(saved);
    }
  }
}

// Conjoin {ind} onto the filler of the first existential found (pre-order
// through conjunctions). An axiom exposes at most one filler variable, so
// the first existential is the right one.
ConceptPtr conjoinFillerNominal(const ConceptPtr& c, const std::string& ind,
                                bool& done) {
  using K = ConceptExpr::Kind;
  if (done) return c;
  if (c->kind == K::Existential) {
    done = true;
    return exists(c->name, conj(c->left, nominal(ind)));
  }
  if (c->kind == K::Conjunction) {
    ConceptPtr l = conjoinFillerNominal(c->left, ind, done);
    ConceptPtr r = conjoinFillerNominal(c->right, ind, done);
    return conj(l, r);
  }
  return c;
}

}  // namespace

std::vector<Substitution> matchAnnotation(const Annotation& ann, const World& w,
                                          const GroundMln& g) {
  std::vector<Substitution> out;
  Substitution theta;
  matchPairs(ann.pairs, 0, w, g, theta, out);
  // Project to variable bindings only; dedupe (constant-argument pairs can
  // produce the same projected substitution more than once).
  std::set<Substitution> seen;
  std::vector<Substitution> result;
  for (auto& s : out)
    if (seen.insert(s).second) result.push_back(std::move(s));
  return result;
}

ElAxiom instantiate(const ElAxiom& ax, const Substitution& theta) {
  ElAxiom out = ax;
  auto bound = [&](const std::string& var) -> const std::string* {
    if (var.empty()) return nullptr;
    auto it = theta.find(var);
    return it == theta.end() ? nullptr : &it->second;
  };

  if (ax.kind == ElAxiom::Kind::Gci) {
    if (const std::string* c = bound(ax.subjectVar)) {
      out.lhs = conj(out.lhs, nominal(*c));
      out.subjectVar.clear();
    }
    if (const std::string* d = bound(ax.fillerVar)) {
      bool done = false;
      ConceptPtr rhs2 = conjoinFillerNominal(out.rhs, *d, done);
      if (done) {
        out.rhs = rhs2;
      } else {
        out.lhs = conjoinFillerNominal(out.lhs, *d, done);
      }
      out.fillerVar.clear();
    }
    return out;
  }

  if (ax.kind == ElAxiom::Kind::DomainRestriction) {
    const std::string* c = bound(ax.subjectVar);
    const std::string* d = bound(ax.fillerVar);
    if (!c && !d) return out;
    ConceptPtr lhs = exists(ax.role, d ? nominal(*d) : top());
    if (c) lhs = conj(lhs, nominal(*c));
    out = ElAxiom{};
    out.kind = ElAxiom::Kind::Gci;
    out.lhs = lhs;
    out.rhs = ax.concept_;
    return out;
  }

  // Other kinds never have annotation-bound variables (validateKb rejects).
  return out;
}

std::vector<ElAxiom> induceOntology(const TcpKnowledgeBase& kb, const World& w,
                                    const GroundMln& g) {
  std::map<std::string, ElAxiom> byKey;  // canonical string -> axiom, merged
  for (const auto& aa : kb.axioms) {
    for (const auto& theta : matchAnnotation(aa.annotation, w, g)) {
      ElAxiom inst = instantiate(aa.axiom, theta);
      byKey.try_emplace(inst.toString(), std::move(inst));
    }
  }
  std::vector<ElAxiom> out;
  out.reserve(byKey.size());
  for (auto& [k, ax] : byKey) out.push_back(std::move(ax));
  return out;
}

Bits annotationRelevantAtoms(const TcpKnowledgeBase& kb, const GroundMln& g) {
  Bits relevant(g.n());
  for (const auto& aa : kb.axioms)
    for (const auto& [pattern, value] : aa.annotation.pairs)
      for (std::size_t ai = 0; ai < g.atoms.size(); ++ai) {
        Substitution theta;
        if (matchAtom(pattern, g.atoms[ai], theta)) relevant.set(ai);
      }
  return relevant;
}

}  // namespace tcpel
