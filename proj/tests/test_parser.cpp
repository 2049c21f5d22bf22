#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <string>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/random_kb.hpp"
#include "tcpel/mln.hpp"
#include "tcpel/parser.hpp"

using namespace tcpel;
using tcpel::testing::dataPath;
using tcpel::testing::readFile;

namespace {

bool anyDiagnosticContains(const ParseResult& r, const std::string& needle) {
  for (const auto& d : r.diagnostics)
    if (d.message.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("labeled-forms fixture: shape census") {
  ParseResult r = parseKb(readFile(dataPath("forms.tcpkb")));
  REQUIRE(r.ok());
  const TcpKnowledgeBase& kb = r.doc->kb;
  REQUIRE(kb.axioms.size() == 4);
  CHECK(kb.axioms[0].annotation.pairs.size() == 1);
  CHECK(kb.axioms[0].annotation.pairs[0].first.toString() == "canLabel(Y,X)");
  CHECK(kb.axioms[0].annotation.pairs[0].second == true);
  for (int i = 1; i < 4; ++i) CHECK(kb.axioms[i].annotation.empty());
  CHECK(kb.axioms[0].axiom.kind == ElAxiom::Kind::Gci);
  CHECK(kb.mln.formulas.size() == 4);
  CHECK(kb.mln.sortConstants.at("fieldsort") == std::vector<std::string>{"f"});
  CHECK(kb.mln.scopes.at("canLabel") ==
        std::vector<std::string>{"labelsort", "fieldsort"});
  CHECK(kb.signature.conceptNames.count("field") == 1);
  CHECK(kb.signature.roleNames.count("label") == 1);
  CHECK(kb.signature.mlnPredicates.at("canLabel") == 2);
}

TEST_CASE("six-atom fixture: source locations are tracked") {
  ParseResult r = parseKb(readFile(dataPath("ex6.tcpkb")));
  REQUIRE(r.ok());
  REQUIRE(r.doc->axiomLocs.size() == r.doc->kb.axioms.size());
  REQUIRE(r.doc->formulaLocs.size() == r.doc->kb.mln.formulas.size());
  for (std::size_t i = 1; i < r.doc->axiomLocs.size(); ++i)
    CHECK(r.doc->axiomLocs[i].line > r.doc->axiomLocs[i - 1].line);
  GroundMln g = ground(r.doc->kb.mln);
  CHECK(g.n() == 6);
  CHECK(g.formulas.size() == 6);
}

TEST_CASE("round trip: serialize then parse is the identity") {
  for (const char* name : {"ex6.tcpkb", "forms.tcpkb", "forms_facts.tcpkb"}) {
    TcpKnowledgeBase kb = tcpel::testing::loadFixture(name);
    ParseResult back = parseKb(serializeKb(kb));
    REQUIRE_MESSAGE(back.ok(), name);
    CHECK_MESSAGE(kbEqual(kb, back.doc->kb), name);
    // Serialization is canonical: a second pass is textually identical.
    CHECK(serializeKb(back.doc->kb) == serializeKb(kb));
  }

  std::mt19937 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    TcpKnowledgeBase kb = tcpel::testing::randomKb(rng);
    ParseResult back = parseKb(serializeKb(kb));
    REQUIRE_MESSAGE(back.ok(), serializeKb(kb));
    CHECK(kbEqual(kb, back.doc->kb));
  }
}

TEST_CASE("weights survive the round trip exactly") {
  TcpKnowledgeBase kb;
  kb.mln.constants = {"a"};
  kb.mln.formulas.push_back({{{"m", {"a"}}}, 1.0 / 3.0});
  kb.mln.formulas.push_back({{{"m", {"a"}}}, 0.1});
  kb.mln.formulas.push_back({{{"m", {"a"}}}, -2.5e-7});
  kb.signature.mlnPredicates = {{"m", 1}};
  kb.signature.mlnConstants = {"a"};
  ParseResult back = parseKb(serializeKb(kb));
  REQUIRE(back.ok());
  REQUIRE(back.doc->kb.mln.formulas.size() == 3);
  CHECK(back.doc->kb.mln.formulas[0].weight == 1.0 / 3.0);
  CHECK(back.doc->kb.mln.formulas[1].weight == 0.1);
  CHECK(back.doc->kb.mln.formulas[2].weight == -2.5e-7);
}

TEST_CASE("unifiable annotation pairs are rejected with a located message") {
  ParseResult r = parseKb(readFile(dataPath("bad_unify.tcpkb")));
  CHECK_FALSE(r.ok());
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(anyDiagnosticContains(r, "unify"));
  CHECK(r.diagnostics[0].loc.line >= 1);
}

TEST_CASE("unsupported surface syntax is a diagnostic, not a crash") {
  ParseResult r = parseKb(readFile(dataPath("bad_shape.tcpkb")));
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.doc.has_value());
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics[0].loc.line == 2);  // the offending axiom's line
}

TEST_CASE("predicate arity conflicts are reported") {
  ParseResult r = parseKb(
      "ca(i1)\nmln {\n  const a b\n  1.0 m(a)\n  1.0 m(a,b)\n}\n");
  CHECK_FALSE(r.ok());
  CHECK(anyDiagnosticContains(r, "arities"));
}

TEST_CASE("annotation variables on non-instantiable axioms are rejected") {
  ParseResult r = parseKb(
      "r(X,Y) -> ca(Y) @ {m(Y)=1}\nmln {\n  const a\n  1.0 m(a)\n}\n");
  CHECK_FALSE(r.ok());
  CHECK(anyDiagnosticContains(r, "binds variable"));

  // The same annotation shape is fine on a GCI.
  ParseResult ok = parseKb(
      "ca(X) -> cb(X) @ {m(X)=1}\nmln {\n  const a\n  1.0 m(a)\n}\n");
  CHECK(ok.ok());
}

TEST_CASE("free annotation variables are allowed") {
  // Z never occurs in the axiom: the axiom activates whenever some constant
  // satisfies the annotation, without specializing the axiom itself.
  ParseResult r = parseKb(
      "ca(X) -> cb(X) @ {m(Z)=1}\nmln {\n  const a\n  1.0 m(a)\n}\n");
  CHECK(r.ok());
}

TEST_CASE("comments and blank lines are ignored") {
  ParseResult r = parseKb(
      "# leading comment\n\nca(i1)  # trailing comment\n"
      "\nmln {\n  # inside the block\n  const a\n  1.0 m(a)\n}\n");
  REQUIRE(r.ok());
  CHECK(r.doc->kb.axioms.size() == 1);
  CHECK(r.doc->kb.mln.formulas.size() == 1);
}

TEST_CASE("all eight axiom shapes classify correctly") {
  ParseResult r = parseKb(
      "ca(i1)\n"
      "r(i1,i2)\n"
      "ca(X) & cb(X) -> cc(X)\n"
      "ca(X) -> exists Y.(r(X,Y) & cb(Y))\n"
      "r(X,Y) & cb(Y) -> ca(X)\n"
      "r(X,Y) -> s(X,Y)\n"
      "r(X,Y) & s(Y,Z) -> t(X,Z)\n"
      "r(X,Y) -> ca(X)\n"
      "r(X,Y) -> ca(Y)\n"
      "ca(X) & cb(X) -> false\n");
  REQUIRE(r.ok());
  const auto& axs = r.doc->kb.axioms;
  REQUIRE(axs.size() == 10);
  CHECK(axs[0].axiom.kind == ElAxiom::Kind::ConceptAssertion);
  CHECK(axs[1].axiom.kind == ElAxiom::Kind::RoleAssertion);
  CHECK(axs[2].axiom.kind == ElAxiom::Kind::Gci);
  CHECK(axs[3].axiom.kind == ElAxiom::Kind::Gci);
  CHECK(axs[4].axiom.kind == ElAxiom::Kind::Gci);
  CHECK(axs[5].axiom.kind == ElAxiom::Kind::RoleInclusion);
  CHECK(axs[5].axiom.chain == std::vector<std::string>{"r"});
  CHECK(axs[6].axiom.kind == ElAxiom::Kind::RoleInclusion);
  CHECK(axs[6].axiom.chain == std::vector<std::string>{"r", "s"});
  CHECK(axs[7].axiom.kind == ElAxiom::Kind::DomainRestriction);
  CHECK(axs[8].axiom.kind == ElAxiom::Kind::RangeRestriction);
  CHECK(axs[9].axiom.kind == ElAxiom::Kind::Gci);
  CHECK(axs[9].axiom.rhs->kind == ConceptExpr::Kind::Bottom);
}
