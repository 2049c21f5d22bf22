#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <limits>
#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "tcpel/kb.hpp"

using namespace tcpel;

namespace {

Signature mnSignature() {
  Signature sig;
  sig.mlnPredicates = {{"m", 1}, {"n", 1}, {"k", 2}};
  sig.mlnConstants = {"a", "b", "c"};
  return sig;
}

Annotation ann(std::vector<std::pair<Atom, bool>> pairs) {
  Annotation a;
  a.pairs = std::move(pairs);
  return a;
}

}  // namespace

TEST_CASE("atoms: text form, ordering, groundness") {
  Atom ma{"m", {"a"}};
  CHECK(ma.toString() == "m(a)");
  CHECK(Atom{"k", {"a", "b"}}.toString() == "k(a,b)");
  CHECK(ma.isGround());
  CHECK_FALSE(Atom{"m", {"X"}}.isGround());
  CHECK(isVariable("X"));
  CHECK(isVariable("Xyz"));
  CHECK_FALSE(isVariable("x"));
  CHECK_FALSE(isVariable("a1"));
  CHECK(Atom{"m", {"a"}} < Atom{"n", {"a"}});
  CHECK(Atom{"m", {"a"}} < Atom{"m", {"b"}});
}

TEST_CASE("concept expressions: construction and text form") {
  ConceptPtr c = conj(atomic("field"), exists("label", atomic("text")));
  CHECK(toString(c) == "(field & (exists label.text))");
  CHECK(toString(nominal("a")) == "{a}");
  CHECK(toString(top()) == "top");
  CHECK(toString(bottom()) == "bot");
  CHECK(conceptEqual(c, conj(atomic("field"), exists("label", atomic("text")))));
  CHECK_FALSE(conceptEqual(c, conj(atomic("field"), exists("label", atomic("blob")))));
  CHECK_FALSE(conceptEqual(atomic("a"), nominal("a")));
}

TEST_CASE("atomsUnify: shared-substitution unification") {
  CHECK(atomsUnify({"m", {"X"}}, {"m", {"a"}}));
  CHECK(atomsUnify({"m", {"a"}}, {"m", {"X"}}));
  CHECK(atomsUnify({"m", {"X"}}, {"m", {"Y"}}));
  CHECK(atomsUnify({"m", {"a"}}, {"m", {"a"}}));
  CHECK_FALSE(atomsUnify({"m", {"a"}}, {"m", {"b"}}));
  CHECK_FALSE(atomsUnify({"m", {"X"}}, {"n", {"X"}}));
  CHECK_FALSE(atomsUnify({"m", {"X"}}, {"k", {"X", "Y"}}));
  // The variable is shared: k(X,X) cannot become k(a,b).
  CHECK_FALSE(atomsUnify({"k", {"X", "X"}}, {"k", {"a", "b"}}));
  CHECK(atomsUnify({"k", {"X", "X"}}, {"k", {"a", "a"}}));
  CHECK(atomsUnify({"k", {"X", "Y"}}, {"k", {"a", "b"}}));
  // Chained variable bindings: X=Y, Y=a, then X must resolve to a.
  CHECK(atomsUnify({"k", {"X", "X"}}, {"k", {"Y", "a"}}));
  CHECK_FALSE(atomsUnify({"k", {"X", "X", "a"}}, {"k", {"Y", "b", "Y"}}));
}

TEST_CASE("atomsUnify properties: reflexive on variables, symmetric") {
  std::mt19937 rng(7);
  const std::vector<std::string> terms = {"X", "Y", "a", "b"};
  for (int trial = 0; trial < 500; ++trial) {
    Atom a{"k", {terms[rng() % 4], terms[rng() % 4]}};
    Atom b{"k", {terms[rng() % 4], terms[rng() % 4]}};
    CHECK(atomsUnify(a, a));
    CHECK(atomsUnify(a, b) == atomsUnify(b, a));
  }
}

TEST_CASE("validateAnnotation: well-formed annotations pass") {
  Signature sig = mnSignature();
  CHECK(validateAnnotation(ann({{{"m", {"a"}}, true}}), sig).ok());
  CHECK(validateAnnotation(ann({{{"m", {"X"}}, true}, {{"n", {"X"}}, false}}), sig).ok());
  CHECK(validateAnnotation(ann({}), sig).ok());
}

TEST_CASE("validateAnnotation: unknown predicate and arity mismatch are distinct") {
  Signature sig = mnSignature();
  Verdict v = validateAnnotation(
      ann({{{"zz", {"a"}}, true}, {{"m", {"a", "b"}}, true}}), sig);
  REQUIRE(v.problems.size() == 2);
  CHECK(v.problems[0].find("unknown predicate") != std::string::npos);
  CHECK(v.problems[1].find("arity mismatch") != std::string::npos);
}

TEST_CASE("validateAnnotation: unifiable pairs rejected") {
  Signature sig = mnSignature();
  CHECK_FALSE(validateAnnotation(ann({{{"m", {"X"}}, true}, {{"m", {"a"}}, false}}), sig).ok());
  // Same-value duplicates unify too; there is no value exemption.
  CHECK_FALSE(validateAnnotation(ann({{{"m", {"X"}}, true}, {{"m", {"Y"}}, true}}), sig).ok());
  // Distinct constants do not unify.
  CHECK(validateAnnotation(ann({{{"m", {"a"}}, true}, {{"m", {"b"}}, false}}), sig).ok());
}

TEST_CASE("validateCmln: conjunctive restriction") {
  MlnProgram m;
  m.formulas.push_back({{{"m", {"X"}}}, 1.5});
  m.formulas.push_back({{{"m", {"X"}}, {"n", {"X"}}}, 0.8});
  CHECK(validateCmln(m).ok());

  MlnProgram bad;
  bad.formulas.push_back({{}, 1.0});
  bad.formulas.push_back({{{"m", {"X"}}}, std::numeric_limits<double>::infinity()});
  Verdict v = validateCmln(bad);
  REQUIRE(v.problems.size() == 2);
  CHECK(v.problems[0].find("empty conjunction") != std::string::npos);
  CHECK(v.problems[1].find("non-finite weight") != std::string::npos);
}

TEST_CASE("checkElFragment: chain lengths and the composition/range interplay") {
  ElAxiom comp;
  comp.kind = ElAxiom::Kind::RoleInclusion;
  comp.chain = {"r", "s"};
  comp.superRole = "t";
  CHECK(checkElFragment(comp, {}).ok());

  ElAxiom longChain = comp;
  longChain.chain = {"r", "s", "t"};
  CHECK_FALSE(checkElFragment(longChain, {}).ok());

  ElAxiom ran;
  ran.kind = ElAxiom::Kind::RangeRestriction;
  ran.role = "t";
  ran.concept_ = atomic("ca");
  std::vector<AnnotatedAxiom> ctx{{ran, {}}};
  CHECK_FALSE(checkElFragment(comp, ctx).ok());
  ran.role = "r";  // range on a chained role (not the superrole) is fine
  ctx = {{ran, {}}};
  CHECK(checkElFragment(comp, ctx).ok());
}

TEST_CASE("validateKb: fixture KBs validate; name clashes rejected") {
  CHECK(validateKb(tcpel::testing::loadFixture("ex6.tcpkb")).ok());
  CHECK(validateKb(tcpel::testing::loadFixture("forms.tcpkb")).ok());

  TcpKnowledgeBase kb = tcpel::testing::loadFixture("ex6.tcpkb");
  kb.signature.conceptNames.insert("m");  // m is an MLN predicate
  CHECK_FALSE(validateKb(kb).ok());
}

TEST_CASE("validateKb: annotation variables on non-instantiable axiom kinds") {
  TcpKnowledgeBase kb;
  kb.signature.mlnPredicates = {{"m", 1}};
  kb.signature.roleNames = {"r"};
  kb.signature.conceptNames = {"ca"};

  ElAxiom ran;
  ran.kind = ElAxiom::Kind::RangeRestriction;
  ran.role = "r";
  ran.concept_ = atomic("ca");
  ran.subjectVar = "X";
  ran.fillerVar = "Y";
  kb.axioms.push_back({ran, ann({{{"m", {"Y"}}, true}})});
  CHECK_FALSE(validateKb(kb).ok());

  // A ground annotation on the same axiom is fine.
  kb.axioms[0].annotation = ann({{{"m", {"a"}}, true}});
  kb.signature.mlnConstants = {"a"};
  CHECK(validateKb(kb).ok());
}

TEST_CASE("kbEqual distinguishes annotation changes") {
  TcpKnowledgeBase a = tcpel::testing::loadFixture("ex6.tcpkb");
  TcpKnowledgeBase b = a;
  CHECK(kbEqual(a, b));
  b.axioms[1].annotation.pairs[0].second = false;
  CHECK_FALSE(kbEqual(a, b));
}
