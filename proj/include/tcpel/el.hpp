#ifndef TCPEL_EL_HPP
#define TCPEL_EL_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tcpel/kb.hpp"

namespace tcpel {

// How atomic consequences of an inconsistent induced ontology are read.
enum class InconsistencyPolicy {
  Explode,  // an inconsistent ontology entails every ground atom
  Skip      // score goes to a reserved pseudo-atom instead
};

// Normal-form ontology over interned concept ids. Normal GCIs:
//   A <= B,  A1 & A2 <= B,  A <= exists r.B,  exists r.A <= B
// plus role inclusions, binary compositions and range records.
struct NormalOntology {
  enum class IdKind { Top, Bottom, Named, Nominal, Fresh };

  std::vector<IdKind> idKind;
  std::vector<std::string> idBase;  // concept name / individual / fresh tag
  std::map<std::string, int> namedIds;
  std::map<std::string, int> nominalIds;
  int topId = -1, botId = -1;

  std::vector<std::string> roleNames;
  std::map<std::string, int> roleIds;

  struct Sub { int sub, sup; };
  struct ConjSub { int a, b, sup; };
  struct ExRhs { int sub, role, filler; };
  struct ExLhs { int role, filler, sup; };
  struct Chain { int r1, r2, sup; };

  std::vector<Sub> subs;
  std::vector<ConjSub> conjs;
  std::vector<ExRhs> exRhs;
  std::vector<ExLhs> exLhs;
  std::vector<std::pair<int, int>> roleSubs;   // r <= s
  std::vector<Chain> chains;                   // r1 o r2 <= s
  std::vector<std::pair<int, int>> ranges;     // ran(r) <= C

  int internConceptId(ConceptExpr::Kind k, const std::string& base);
  int internRole(const std::string& r);
  std::string idToString(int id) const;
};

// Fixpoint of the completion rules: S maps each concept id to its subsumers,
// R maps each role id to derived concept-pair edges.
struct SaturationState {
  std::vector<std::set<int>> S;
  std::vector<std::set<std::pair<int, int>>> R;
  std::size_t firings = 0;  // successful rule applications

  bool subsumes(int sub, int sup) const { return S[sub].count(sup) > 0; }
};

// Normal-form transformation. Concept assertions C(a) are encoded as
// {a} <= C, role assertions r(a,b) as {a} <= exists r.{b}, and
// dom(r) <= C as exists r.top <= C. Range restrictions stay as records.
NormalOntology normalize(const std::vector<ElAxiom>& axioms);

SaturationState saturate(const NormalOntology& o);

struct Consequences {
  std::set<Atom> atoms;
  bool consistent = true;
};

// Atomic consequences {A(a)} and {r(a,b)} over named individuals.
// `signature` supplies the universe used when an inconsistent ontology
// explodes; extraIndividuals widens the individual set (e.g. MLN constants
// introduced by annotation bindings).
Consequences atomicConsequences(const std::vector<ElAxiom>& axioms,
                                const Signature& signature,
                                InconsistencyPolicy policy);

bool isConsistent(const std::vector<ElAxiom>& axioms);

// All ground atoms of the explode universe: concept names x individuals and
// role names x individual pairs, individuals = signature individuals plus
// MLN constants (annotation bindings can pull those into the ontology).
std::set<Atom> explodeUniverse(const Signature& signature);

}  // namespace tcpel

#endif  // TCPEL_EL_HPP
