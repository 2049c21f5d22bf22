#ifndef TCPEL_KB_HPP
#define TCPEL_KB_HPP

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tcpel {

// ---------------------------------------------------------------------------
// Ground / first-order atoms over MLN predicates, also used for the atomic
// consequences of an ontology (unary = concept membership, binary = role).
// Arguments starting with an upper-case letter are variables.
// ---------------------------------------------------------------------------
struct Atom {
  std::string pred;
  std::vector<std::string> args;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  std::string toString() const;
  bool isGround() const;
};

bool isVariable(const std::string& term);

// ---------------------------------------------------------------------------
// Concept expressions (EL++ without concrete domains).
// ---------------------------------------------------------------------------
struct ConceptExpr;
using ConceptPtr = std::shared_ptr<const ConceptExpr>;

struct ConceptExpr {
  enum class Kind { Top, Bottom, Atomic, Nominal, Conjunction, Existential };
  Kind kind;
  std::string name;      // Atomic: concept name; Nominal: individual; Existential: role
  ConceptPtr left;       // Conjunction left / Existential filler
  ConceptPtr right;      // Conjunction right
};

ConceptPtr top();
ConceptPtr bottom();
ConceptPtr atomic(std::string name);
ConceptPtr nominal(std::string individual);
ConceptPtr conj(ConceptPtr a, ConceptPtr b);
ConceptPtr exists(std::string role, ConceptPtr filler);

std::string toString(const ConceptPtr& c);
bool conceptEqual(const ConceptPtr& a, const ConceptPtr& b);

// ---------------------------------------------------------------------------
// EL++ axioms, carrying the variable names of their canonical first-order
// reading so probabilistic annotations can bind them.
// ---------------------------------------------------------------------------
struct ElAxiom {
  enum class Kind {
    Gci,               // lhs ⊑ rhs
    RoleInclusion,     // chain (1-2 roles) ⊑ superRole
    DomainRestriction, // dom(role) ⊑ concept
    RangeRestriction,  // ran(role) ⊑ concept
    ConceptAssertion,  // concept(subject)
    RoleAssertion      // role(subject, object)
  };

  Kind kind = Kind::Gci;
  ConceptPtr lhs, rhs;             // Gci
  std::vector<std::string> chain;  // RoleInclusion
  std::string superRole;           // RoleInclusion
  std::string role;                // Domain/Range/RoleAssertion
  ConceptPtr concept_;             // Domain/Range/ConceptAssertion
  std::string subject, object;     // assertions

  // Exposed FOL variables. For a GCI the subject variable ranges over the
  // lhs and the filler variable over the (unique) existential filler, on
  // whichever side it occurs. Empty string = not exposed.
  std::string subjectVar;
  std::string fillerVar;
  std::string chainVar;  // middle/third variable of a composition chain

  std::vector<std::string> exposedVars() const;
  std::string toString() const;
};

bool axiomEqual(const ElAxiom& a, const ElAxiom& b);
bool axiomLess(const ElAxiom& a, const ElAxiom& b);

// ---------------------------------------------------------------------------
// Probabilistic annotations and programs.
// ---------------------------------------------------------------------------
struct Annotation {
  std::vector<std::pair<Atom, bool>> pairs;
  bool empty() const { return pairs.empty(); }
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct AnnotatedAxiom {
  ElAxiom axiom;
  Annotation annotation;
};

struct MlnFormula {
  std::vector<Atom> conjuncts;
  double weight = 0.0;
  friend bool operator==(const MlnFormula&, const MlnFormula&) = default;
};

struct MlnProgram {
  std::vector<MlnFormula> formulas;
  std::vector<std::string> constants;                            // global pool
  std::map<std::string, std::vector<std::string>> sortConstants; // per-sort pools
  std::map<std::string, std::vector<std::string>> scopes;        // pred -> arg sorts

  std::vector<std::string> allConstants() const;
  friend bool operator==(const MlnProgram&, const MlnProgram&) = default;
};

struct Signature {
  std::set<std::string> conceptNames;
  std::set<std::string> roleNames;
  std::set<std::string> individuals;
  std::map<std::string, int> mlnPredicates;  // name -> arity
  std::set<std::string> mlnConstants;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct TcpKnowledgeBase {
  Signature signature;
  std::vector<AnnotatedAxiom> axioms;
  MlnProgram mln;
};

bool kbEqual(const TcpKnowledgeBase& a, const TcpKnowledgeBase& b);

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------
struct Verdict {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
  void add(std::string p) { problems.push_back(std::move(p)); }
  void merge(const Verdict& v) {
    problems.insert(problems.end(), v.problems.begin(), v.problems.end());
  }
};

// Whether two atoms unify under a shared substitution.
bool atomsUnify(const Atom& a, const Atom& b);

// Annotation well-formedness: known predicates, correct arities, and no two
// pairs whose atoms unify.
Verdict validateAnnotation(const Annotation& ann, const Signature& sig);

// Conjunctive MLN restriction: non-empty positive conjunctions, finite weights.
Verdict validateCmln(const MlnProgram& m);

// Supported-fragment membership for a single axiom plus the conservative
// role-inclusion / range-restriction interplay check over the whole set:
// a role that is the superrole of a composition chain must not also carry
// a range restriction.
Verdict checkElFragment(const ElAxiom& ax, const std::vector<AnnotatedAxiom>& context);

// Full-KB validation: runs all of the above, checks predicate-name
// disjointness, and checks that annotation variables bound to axiom
// variables only occur on axioms whose instantiation stays inside the
// supported fragment (GCIs, domain restrictions, assertions).
Verdict validateKb(const TcpKnowledgeBase& kb);

}  // namespace tcpel

#endif  // TCPEL_KB_HPP
