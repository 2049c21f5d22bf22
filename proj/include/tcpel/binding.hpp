#ifndef TCPEL_BINDING_HPP
#define TCPEL_BINDING_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcpel/el.hpp"
#include "tcpel/kb.hpp"
#include "tcpel/mln.hpp"

namespace tcpel {

using Substitution = std::map<std::string, std::string>;

// All substitutions of the annotation's variables into MLN constants such
// that every pair grounds to an atom of g whose truth value in w matches.
// The empty annotation yields the single empty substitution. A pair that
// grounds to an atom outside g's index excludes that substitution.
std::vector<Substitution> matchAnnotation(const Annotation& ann, const World& w,
                                          const GroundMln& g);

// The axiom with its matched variables replaced. Bound subject variables
// conjoin a nominal onto the lhs; bound filler variables conjoin a nominal
// onto the existential filler. Unbound axiom variables stay universal.
ElAxiom instantiate(const ElAxiom& ax, const Substitution& theta);

// The induced classical ontology O_lambda: union over annotated axioms of
// their instantiations under every matching substitution, duplicates merged.
std::vector<ElAxiom> induceOntology(const TcpKnowledgeBase& kb, const World& w,
                                    const GroundMln& g);

// Indices of ground atoms that are instances of some annotation atom of the
// KB. The induced ontology depends on the world only through these bits.
Bits annotationRelevantAtoms(const TcpKnowledgeBase& kb, const GroundMln& g);

// induce + saturate, memoized on the annotation-relevant projection of the
// world. Distinct worlds frequently induce the same ontology.
class ConsequenceCache {
 public:
  ConsequenceCache(const TcpKnowledgeBase& kb, const GroundMln& g,
                   InconsistencyPolicy policy)
      : kb_(&kb), g_(&g), policy_(policy), relevant_(annotationRelevantAtoms(kb, g)) {}

  const Consequences& lookup(const World& w) {
    Bits key = w;
    key &= relevant_;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Consequences c =
        atomicConsequences(induceOntology(*kb_, w, *g_), kb_->signature, policy_);
    return cache_.emplace(std::move(key), std::move(c)).first->second;
  }

 private:
  const TcpKnowledgeBase* kb_;
  const GroundMln* g_;
  InconsistencyPolicy policy_;
  Bits relevant_;
  std::unordered_map<Bits, Consequences, BitsHash> cache_;
};

}  // namespace tcpel

#endif  // TCPEL_BINDING_HPP
