#include "tcpel/mln.hpp"

#include <algorithm>

namespace tcpel {

namespace {

// Domain of each variable of a formula: intersection of the sort pools its
// occurrences are scoped to; unscoped occurrences range over all constants.
std::vector<std::pair<std::string, std::vector<std::string>>> variableDomains(
    const MlnFormula& f, const MlnProgram& m) {
  std::vector<std::string> all = m.allConstants();
  std::vector<std::pair<std::string, std::vector<std::string>>> domains;
  auto find = [&](const std::string& v) -> std::vector<std::string>* {
    for (auto& [name, dom] : domains)
      if (name == v) return &dom;
    return nullptr;
  };
  for (const auto& atom : f.conjuncts) {
    auto scopeIt = m.scopes.find(atom.pred);
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      const std::string& arg = atom.args[i];
      if (!isVariable(arg)) continue;
      std::vector<std::string> pool = all;
      if (scopeIt != m.scopes.end() && i < scopeIt->second.size()) {
        auto sortIt = m.sortConstants.find(scopeIt->second[i]);
        pool = sortIt == m.sortConstants.end() ? std::vector<std::string>{}
                                               : sortIt->second;
        std::sort(pool.begin(), pool.end());
      }
      if (auto* dom = find(arg)) {
        std::vector<std::string> inter;
        std::set_intersection(dom->begin(), dom->end(), pool.begin(), pool.end(),
                              std::back_inserter(inter));
        *dom = std::move(inter);
      } else {
        domains.emplace_back(arg, std::move(pool));
      }
    }
  }
  return domains;
}

}  // namespace

std::size_t projectedGroundingSize(const MlnProgram& m) {
  std::size_t total = 0;
  for (const auto& f : m.formulas) {
    std::size_t count = 1;
    for (const auto& [v, dom] : variableDomains(f, m)) {
      if (count > kDefaultGroundingCap * 8) return count;  // already huge
      count *= dom.size();
    }
    total += count;
  }
  return total;
}

GroundMln ground(const MlnProgram& m, std::size_t cap) {
  std::size_t projected = projectedGroundingSize(m);
  if (projected > cap)
    throw RefusalError("grounding refused: projected size " +
                       std::to_string(projected) + " exceeds cap " +
                       std::to_string(cap));

  // Enumerate groundings per formula, substitutions in lexicographic constant
  // order over variables in first-occurrence order; the final index order is
  // substitution-major (all formulas under one substitution tuple appear
  // before the next tuple), matching a per-constant reading of the grounding.
  struct RawFormula {
    std::set<Atom> atoms;
    double weight;
    int programIndex;
    std::vector<std::string> tuple;  // substituted values, first-occurrence order
  };
  std::vector<RawFormula> raw;
  std::set<Atom> atomPool;

  for (std::size_t fi = 0; fi < m.formulas.size(); ++fi) {
    const MlnFormula& f = m.formulas[fi];
    auto domains = variableDomains(f, m);
    std::set<std::set<Atom>> seen;  // merge duplicate groundings of this formula

    std::vector<std::size_t> cursor(domains.size(), 0);
    bool exhausted = std::any_of(domains.begin(), domains.end(),
                                 [](const auto& d) { return d.second.empty(); });
    while (!exhausted) {
      std::map<std::string, std::string> theta;
      for (std::size_t i = 0; i < domains.size(); ++i)
        theta[domains[i].first] = domains[i].second[cursor[i]];

      std::set<Atom> ga;
      for (const auto& atom : f.conjuncts) {
        Atom g = atom;
        for (auto& arg : g.args)
          if (isVariable(arg)) arg = theta[arg];
        ga.insert(std::move(g));
      }
      if (seen.insert(ga).second) {
        atomPool.insert(ga.begin(), ga.end());
        std::vector<std::string> tuple;
        for (const auto& [v, dom] : domains) tuple.push_back(theta[v]);
        raw.push_back({std::move(ga), f.weight, static_cast<int>(fi), std::move(tuple)});
      }

      // advance cursor (last variable fastest)
      std::size_t i = domains.size();
      while (i > 0) {
        --i;
        if (++cursor[i] < domains[i].second.size()) break;
        cursor[i] = 0;
        if (i == 0) exhausted = true;
      }
      if (domains.empty()) exhausted = true;
    }
  }

  std::stable_sort(raw.begin(), raw.end(), [](const RawFormula& a, const RawFormula& b) {
    if (a.tuple != b.tuple) return a.tuple < b.tuple;
    return a.programIndex < b.programIndex;
  });

  GroundMln g;
  g.atoms.assign(atomPool.begin(), atomPool.end());  // set order == canonical
  for (std::size_t i = 0; i < g.atoms.size(); ++i)
    g.atomIndex[g.atoms[i]] = static_cast<int>(i);

  for (const auto& rf : raw) {
    GroundMln::GFormula gf;
    gf.atomSet = Bits(g.n());
    for (const auto& a : rf.atoms) gf.atomSet.set(static_cast<std::size_t>(g.atomIndex[a]));
    gf.weight = rf.weight;
    gf.programIndex = rf.programIndex;
    g.formulas.push_back(std::move(gf));
  }
  return g;
}

std::set<int> satisfiedFormulas(const World& w, const GroundMln& g) {
  if (w.size() != g.n())
    throw std::invalid_argument("world length " + std::to_string(w.size()) +
                                " does not match ground atom count " +
                                std::to_string(g.n()));
  std::set<int> out;
  for (std::size_t j = 0; j < g.formulas.size(); ++j)
    if (g.formulas[j].atomSet.isSubsetOf(w)) out.insert(static_cast<int>(j));
  return out;
}

double worldLogScore(const World& w, const GroundMln& g) {
  if (w.size() != g.n())
    throw std::invalid_argument("world length does not match ground atom count");
  double total = 0.0;
  for (const auto& f : g.formulas)
    if (f.atomSet.isSubsetOf(w)) total += f.weight;
  return total;
}

WorldComparison compareWorlds(const World& w1, const World& w2, const GroundMln& g) {
  double ratio = worldLogScore(w1, g) - worldLogScore(w2, g);
  Ordering ord = ratio < 0   ? Ordering::Less
                 : ratio > 0 ? Ordering::Greater
                             : Ordering::Equal;
  return {ord, ratio};
}

}  // namespace tcpel
