#include "tcpel/el.hpp"

#include <algorithm>
#include <deque>

namespace tcpel {

int NormalOntology::internConceptId(ConceptExpr::Kind k, const std::string& base) {
  using K = ConceptExpr::Kind;
  switch (k) {
    case K::Top:
      if (topId < 0) {
        topId = static_cast<int>(idKind.size());
        idKind.push_back(IdKind::Top);
        idBase.push_back("top");
      }
      return topId;
    case K::Bottom:
      if (botId < 0) {
        botId = static_cast<int>(idKind.size());
        idKind.push_back(IdKind::Bottom);
        idBase.push_back("bot");
      }
      return botId;
    case K::Atomic: {
      auto it = namedIds.find(base);
      if (it != namedIds.end()) return it->second;
      int id = static_cast<int>(idKind.size());
      idKind.push_back(IdKind::Named);
      idBase.push_back(base);
      namedIds[base] = id;
      return id;
    }
    case K::Nominal: {
      auto it = nominalIds.find(base);
      if (it != nominalIds.end()) return it->second;
      int id = static_cast<int>(idKind.size());
      idKind.push_back(IdKind::Nominal);
      idBase.push_back(base);
      nominalIds[base] = id;
      return id;
    }
    default:
      break;
  }
  // Fresh names are appended directly by the normalizer.
  int id = static_cast<int>(idKind.size());
  idKind.push_back(IdKind::Fresh);
  idBase.push_back(base);
  return id;
}

int NormalOntology::internRole(const std::string& r) {
  auto it = roleIds.find(r);
  if (it != roleIds.end()) return it->second;
  int id = static_cast<int>(roleNames.size());
  roleNames.push_back(r);
  roleIds[r] = id;
  return id;
}

std::string NormalOntology::idToString(int id) const {
  switch (idKind[id]) {
    case IdKind::Top: return "top";
    case IdKind::Bottom: return "bot";
    case IdKind::Nominal: return "{" + idBase[id] + "}";
    default: return idBase[id];
  }
}

namespace {

bool atomicIsh(const ConceptPtr& c) {
  using K = ConceptExpr::Kind;
  return c->kind == K::Top || c->kind == K::Bottom || c->kind == K::Atomic ||
         c->kind == K::Nominal;
}

struct Normalizer {
  NormalOntology& o;
  int axiomIndex = 0;
  int freshCounter = 0;

  int intern(const ConceptPtr& c) { return o.internConceptId(c->kind, c->name); }

  int fresh() {
    std::string tag =
        "_N" + std::to_string(axiomIndex) + "_" + std::to_string(freshCounter++);
    int id = static_cast<int>(o.idKind.size());
    o.idKind.push_back(NormalOntology::IdKind::Fresh);
    o.idBase.push_back(tag);
    return id;
  }

  // Name a complex concept for use on the left of a GCI: emits axioms
  // concluding the returned id from the concept's structure.
  int lhsAtom(const ConceptPtr& c) {
    using K = ConceptExpr::Kind;
    if (atomicIsh(c)) return intern(c);
    if (c->kind == K::Conjunction) {
      int a = lhsAtom(c->left);
      int b = lhsAtom(c->right);
      int x = fresh();
      o.conjs.push_back({a, b, x});
      return x;
    }
    int f = lhsAtom(c->left);  // existential filler
    int x = fresh();
    o.exLhs.push_back({o.internRole(c->name), f, x});
    return x;
  }

  // Emit axioms making id <= D for arbitrary D (right-side naming).
  void fromId(int id, const ConceptPtr& d) {
    using K = ConceptExpr::Kind;
    if (d->kind == K::Conjunction) {
      fromId(id, d->left);
      fromId(id, d->right);
      return;
    }
    if (d->kind == K::Existential) {
      int fid;
      if (atomicIsh(d->left)) {
        fid = intern(d->left);
      } else {
        fid = fresh();
        fromId(fid, d->left);
      }
      o.exRhs.push_back({id, o.internRole(d->name), fid});
      return;
    }
    o.subs.push_back({id, intern(d)});
  }

  void gci(const ConceptPtr& c, const ConceptPtr& d) {
    using K = ConceptExpr::Kind;
    if (d->kind == K::Conjunction) {
      gci(c, d->left);
      gci(c, d->right);
      return;
    }
    if (d->kind == K::Existential) {
      int fid;
      if (atomicIsh(d->left)) {
        fid = intern(d->left);
      } else {
        fid = fresh();
        fromId(fid, d->left);
      }
      int a = atomicIsh(c) ? intern(c) : lhsAtom(c);
      o.exRhs.push_back({a, o.internRole(d->name), fid});
      return;
    }
    int b = intern(d);
    if (atomicIsh(c)) {
      o.subs.push_back({intern(c), b});
    } else if (c->kind == K::Conjunction && atomicIsh(c->left) && atomicIsh(c->right)) {
      o.conjs.push_back({intern(c->left), intern(c->right), b});
    } else if (c->kind == K::Existential && atomicIsh(c->left)) {
      o.exLhs.push_back({o.internRole(c->name), intern(c->left), b});
    } else {
      o.subs.push_back({lhsAtom(c), b});
    }
  }
};

}  // namespace

NormalOntology normalize(const std::vector<ElAxiom>& axioms) {
  NormalOntology o;
  o.internConceptId(ConceptExpr::Kind::Top, "");
  o.internConceptId(ConceptExpr::Kind::Bottom, "");
  Normalizer nz{o};
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    const ElAxiom& ax = axioms[i];
    nz.axiomIndex = static_cast<int>(i);
    nz.freshCounter = 0;
    switch (ax.kind) {
      case ElAxiom::Kind::Gci:
        nz.gci(ax.lhs, ax.rhs);
        break;
      case ElAxiom::Kind::RoleInclusion:
        if (ax.chain.size() == 1)
          o.roleSubs.emplace_back(o.internRole(ax.chain[0]), o.internRole(ax.superRole));
        else if (ax.chain.size() == 2)
          o.chains.push_back({o.internRole(ax.chain[0]), o.internRole(ax.chain[1]),
                              o.internRole(ax.superRole)});
        break;
      case ElAxiom::Kind::DomainRestriction:
        nz.gci(exists(ax.role, top()), ax.concept_);
        break;
      case ElAxiom::Kind::RangeRestriction: {
        int cid;
        if (atomicIsh(ax.concept_)) {
          cid = nz.intern(ax.concept_);
        } else {
          cid = nz.fresh();
          nz.fromId(cid, ax.concept_);
        }
        o.ranges.emplace_back(o.internRole(ax.role), cid);
        break;
      }
      case ElAxiom::Kind::ConceptAssertion:
        nz.gci(nominal(ax.subject), ax.concept_);
        break;
      case ElAxiom::Kind::RoleAssertion:
        o.exRhs.push_back({o.internConceptId(ConceptExpr::Kind::Nominal, ax.subject),
                           o.internRole(ax.role),
                           o.internConceptId(ConceptExpr::Kind::Nominal, ax.object)});
        break;
    }
  }
  return o;
}

SaturationState saturate(const NormalOntology& o) {
  const int nIds = static_cast<int>(o.idKind.size());
  const int nRoles = static_cast<int>(o.roleNames.size());
  SaturationState st;
  st.S.resize(nIds);
  st.R.resize(nRoles);
  for (int c = 0; c < nIds; ++c) {
    st.S[c].insert(c);
    st.S[c].insert(o.topId);
  }

  bool changed = true;
  auto addS = [&](int c, int d) {
    if (st.S[c].insert(d).second) {
      ++st.firings;
      changed = true;
    }
  };
  auto addR = [&](int r, int c, int d) {
    if (st.R[r].insert({c, d}).second) {
      ++st.firings;
      changed = true;
    }
  };

  while (changed) {
    changed = false;

    // CR1: A in S(C), A <= B  =>  B in S(C)
    for (const auto& s : o.subs)
      for (int c = 0; c < nIds; ++c)
        if (st.S[c].count(s.sub)) addS(c, s.sup);

    // CR2: A1, A2 in S(C), A1 & A2 <= B  =>  B in S(C)
    for (const auto& cj : o.conjs)
      for (int c = 0; c < nIds; ++c)
        if (st.S[c].count(cj.a) && st.S[c].count(cj.b)) addS(c, cj.sup);

    // CR3: A in S(C), A <= exists r.B  =>  (C,B) in R(r)
    for (const auto& e : o.exRhs)
      for (int c = 0; c < nIds; ++c)
        if (st.S[c].count(e.sub)) addR(e.role, c, e.filler);

    for (int r = 0; r < nRoles; ++r) {
      // Iterate over a snapshot; additions take effect next pass.
      const auto edges = st.R[r];
      for (const auto& [c, d] : edges) {
        // CR4: (C,D) in R(r), A in S(D), exists r.A <= B  =>  B in S(C)
        for (const auto& e : o.exLhs)
          if (e.role == r && st.S[d].count(e.filler)) addS(c, e.sup);
        // CR5: bottom propagates backwards over edges
        if (st.S[d].count(o.botId)) addS(c, o.botId);
        // CR-ran: (C,D) in R(r), ran(r) <= E  =>  E in S(D)
        for (const auto& [rr, e] : o.ranges)
          if (rr == r) addS(d, e);
        // edge-to-nominal: (C,D) in R(r), {a} in S(D)  =>  (C,{a}) in R(r).
        // Needed so instantiated existentials with nominal-bounded fillers
        // yield role consequences between named individuals.
        for (int x : st.S[d])
          if (o.idKind[x] == NormalOntology::IdKind::Nominal && x != d) addR(r, c, x);
      }
    }

    // CR-ri: role hierarchy and binary composition
    for (const auto& [r, s] : o.roleSubs) {
      const auto edges = st.R[r];
      for (const auto& [c, d] : edges) addR(s, c, d);
    }
    for (const auto& ch : o.chains) {
      const auto e1 = st.R[ch.r1];
      const auto e2 = st.R[ch.r2];
      for (const auto& [c, d] : e1)
        for (const auto& [d2, e] : e2)
          if (d == d2) addR(ch.sup, c, e);
    }

    // CR-nom: {a} in S(C) and S(D), D reachable from a nominal  =>  S(C) >= S(D)
    {
      std::vector<bool> reach(nIds, false);
      std::deque<int> queue;
      for (int c = 0; c < nIds; ++c)
        if (o.idKind[c] == NormalOntology::IdKind::Nominal) {
          reach[c] = true;
          queue.push_back(c);
        }
      while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        for (int r = 0; r < nRoles; ++r)
          for (const auto& [x, y] : st.R[r])
            if (x == c && !reach[y]) {
              reach[y] = true;
              queue.push_back(y);
            }
      }
      for (int c = 0; c < nIds; ++c) {
        for (int d = 0; d < nIds; ++d) {
          if (c == d || !reach[d]) continue;
          bool shared = false;
          for (int x : st.S[c])
            if (o.idKind[x] == NormalOntology::IdKind::Nominal && st.S[d].count(x)) {
              shared = true;
              break;
            }
          if (shared)
            for (int x : st.S[d]) addS(c, x);
        }
      }
    }
  }
  return st;
}

std::set<Atom> explodeUniverse(const Signature& signature) {
  std::set<std::string> inds = signature.individuals;
  inds.insert(signature.mlnConstants.begin(), signature.mlnConstants.end());
  std::set<Atom> out;
  for (const auto& c : signature.conceptNames)
    for (const auto& a : inds) out.insert({c, {a}});
  for (const auto& r : signature.roleNames)
    for (const auto& a : inds)
      for (const auto& b : inds) out.insert({r, {a, b}});
  return out;
}

Consequences atomicConsequences(const std::vector<ElAxiom>& axioms,
                                const Signature& signature,
                                InconsistencyPolicy policy) {
  NormalOntology o = normalize(axioms);
  SaturationState st = saturate(o);

  Consequences out;
  for (const auto& [ind, id] : o.nominalIds)
    if (st.S[id].count(o.botId)) out.consistent = false;

  if (!out.consistent) {
    if (policy == InconsistencyPolicy::Explode) out.atoms = explodeUniverse(signature);
    return out;
  }

  for (const auto& [ind, id] : o.nominalIds) {
    for (int d : st.S[id])
      if (o.idKind[d] == NormalOntology::IdKind::Named)
        out.atoms.insert({o.idBase[d], {ind}});
  }
  for (int r = 0; r < static_cast<int>(o.roleNames.size()); ++r)
    for (const auto& [c, d] : st.R[r])
      if (o.idKind[c] == NormalOntology::IdKind::Nominal &&
          o.idKind[d] == NormalOntology::IdKind::Nominal)
        out.atoms.insert({o.roleNames[r], {o.idBase[c], o.idBase[d]}});
  return out;
}

bool isConsistent(const std::vector<ElAxiom>& axioms) {
  NormalOntology o = normalize(axioms);
  SaturationState st = saturate(o);
  for (const auto& [ind, id] : o.nominalIds)
    if (st.S[id].count(o.botId)) return false;
  return true;
}

}  // namespace tcpel
