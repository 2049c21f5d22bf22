#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/random_kb.hpp"
#include "tcpel/binding.hpp"
#include "tcpel/oracle.hpp"

using namespace tcpel;
using tcpel::testing::loadFixture;

namespace {

std::size_t atomIndex(const GroundMln& g, const std::string& pred,
                      std::vector<std::string> args) {
  auto idx = g.indexOf({pred, std::move(args)});
  REQUIRE(idx.has_value());
  return static_cast<std::size_t>(*idx);
}

std::set<Atom> consequencesOf(const TcpKnowledgeBase& kb, const World& w,
                              const GroundMln& g) {
  Consequences c = atomicConsequences(induceOntology(kb, w, g), kb.signature,
                                      InconsistencyPolicy::Explode);
  REQUIRE(c.consistent);
  return c.atoms;
}

std::multiset<std::string> ontologyText(const std::vector<ElAxiom>& axs) {
  std::multiset<std::string> out;
  for (const auto& a : axs) out.insert(a.toString());
  return out;
}

}  // namespace

TEST_CASE("matchAnnotation anchors on the six-atom example") {
  TcpKnowledgeBase kb = loadFixture("ex6.tcpkb");
  GroundMln g = ground(kb.mln);
  const Annotation& ruleAnn = kb.axioms[0].annotation;  // {m(X)=1, n(X)=0}
  REQUIRE(ruleAnn.pairs.size() == 2);

  World allTrue(g.n(), true);
  CHECK(matchAnnotation(ruleAnn, allTrue, g).empty());

  World noNc = allTrue;
  noNc.set(atomIndex(g, "n", {"c"}), false);
  auto ms = matchAnnotation(ruleAnn, noNc, g);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0] == Substitution{{"X", "c"}});

  World noNaNc = noNc;
  noNaNc.set(atomIndex(g, "n", {"a"}), false);
  ms = matchAnnotation(ruleAnn, noNaNc, g);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0] == Substitution{{"X", "a"}});
  CHECK(ms[1] == Substitution{{"X", "c"}});

  // Ground annotations match with the empty substitution or not at all.
  const Annotation& factAnn = kb.axioms[1].annotation;  // {m(a)=1}
  auto gm = matchAnnotation(factAnn, allTrue, g);
  REQUIRE(gm.size() == 1);
  CHECK(gm[0].empty());
  CHECK(matchAnnotation(factAnn, World(g.n()), g).empty());

  // The empty annotation is crisp: always one empty substitution.
  auto em = matchAnnotation(Annotation{}, World(g.n()), g);
  REQUIRE(em.size() == 1);
  CHECK(em[0].empty());
}

TEST_CASE("matchAnnotation: atoms outside the grounding exclude the binding") {
  TcpKnowledgeBase kb = loadFixture("ex6.tcpkb");
  GroundMln g = ground(kb.mln);
  Annotation a;
  a.pairs = {{{"m", {"zz"}}, true}};  // no such ground atom
  CHECK(matchAnnotation(a, World(g.n(), true), g).empty());
}

TEST_CASE("instantiate: nominals pin the bound variables") {
  TcpKnowledgeBase forms = loadFixture("forms.tcpkb");
  const ElAxiom& ax = forms.axioms[0].axiom;  // field(X) -> exists Y.(...)
  REQUIRE(ax.kind == ElAxiom::Kind::Gci);

  ElAxiom inst = instantiate(ax, {{"X", "f"}, {"Y", "l"}});
  CHECK(inst.toString().find("{f}") != std::string::npos);
  CHECK(inst.toString().find("{l}") != std::string::npos);
  CHECK(inst.subjectVar.empty());
  CHECK(inst.fillerVar.empty());

  // Semantics: with field(f) asserted, the pinned instantiation yields the
  // concrete successor, not an anonymous one.
  ElAxiom fact;
  fact.kind = ElAxiom::Kind::ConceptAssertion;
  fact.concept_ = atomic("field");
  fact.subject = "f";
  Signature sig = forms.signature;
  Consequences c = atomicConsequences({inst, fact}, sig, InconsistencyPolicy::Explode);
  REQUIRE(c.consistent);
  CHECK(c.atoms.count({"label", {"f", "l"}}) == 1);
  CHECK(c.atoms.count({"text", {"l"}}) == 1);

  // An unbound variable stays universal.
  ElAxiom partial = instantiate(ax, {{"Y", "l"}});
  CHECK(partial.toString().find("{f}") == std::string::npos);
  CHECK(partial.toString().find("{l}") != std::string::npos);
}

TEST_CASE("instantiate: domain restriction becomes a GCI when pinned") {
  ParseResult r = parseKb("r(X,Y) -> ca(X)");
  REQUIRE(r.ok());
  const ElAxiom& dom = r.doc->kb.axioms[0].axiom;
  REQUIRE(dom.kind == ElAxiom::Kind::DomainRestriction);

  ElAxiom inst = instantiate(dom, {{"X", "a"}});
  CHECK(inst.kind == ElAxiom::Kind::Gci);
  CHECK(inst.toString().find("{a}") != std::string::npos);

  // Crisp instantiation (empty substitution) leaves the axiom untouched.
  ElAxiom same = instantiate(dom, {});
  CHECK(axiomEqual(same, dom));
}

TEST_CASE("induced ontologies of the trace worlds") {
  TcpKnowledgeBase kb = loadFixture("ex6.tcpkb");
  GroundMln g = ground(kb.mln);

  // Best world: every fact whose annotation holds, but the rule never fires.
  World c1(g.n(), true);
  CHECK(consequencesOf(kb, c1, g) == std::set<Atom>{{"p", {"a"}}, {"p", {"b"}}});

  // Second-best: n(c) false activates both the third fact and the rule at c.
  World c2 = c1;
  c2.set(atomIndex(g, "n", {"c"}), false);
  CHECK(consequencesOf(kb, c2, g) ==
        std::set<Atom>{{"p", {"a"}}, {"p", {"b"}}, {"p", {"c"}}, {"q", {"c"}}});

  // All-false world: only the second fact needs n(a)=1, so nothing survives.
  World none(g.n());
  CHECK(consequencesOf(kb, none, g).empty());
}

TEST_CASE("crisp KBs induce the full ontology in every world") {
  ParseResult r = parseKb(
      "ca(i1)\nca(X) -> cb(X)\nmln {\n  const a\n  1.0 m(a)\n}");
  REQUIRE(r.ok());
  const TcpKnowledgeBase& kb = r.doc->kb;
  GroundMln g = ground(kb.mln);
  REQUIRE(g.n() == 1);

  CHECK(annotationRelevantAtoms(kb, g).none());
  std::multiset<std::string> expect;
  for (const auto& aa : kb.axioms) expect.insert(aa.axiom.toString());
  for (std::uint64_t i = 0; i < 2; ++i) {
    World w = worldFromIndex(i, 1);
    CHECK(ontologyText(induceOntology(kb, w, g)) == expect);
    CHECK(consequencesOf(kb, w, g).count({"cb", {"i1"}}) == 1);
  }
}

TEST_CASE("annotationRelevantAtoms covers exactly the matchable atoms") {
  TcpKnowledgeBase kb = loadFixture("ex6.tcpkb");
  GroundMln g = ground(kb.mln);
  // m(X)/n(X) in the rule annotation make every ground atom relevant.
  CHECK(annotationRelevantAtoms(kb, g) == Bits(g.n(), true));

  // Drop the rule: only m(a), n(a), m(c), n(c) remain matchable.
  TcpKnowledgeBase factsOnly = kb;
  factsOnly.axioms.erase(factsOnly.axioms.begin());
  Bits rel = annotationRelevantAtoms(factsOnly, g);
  CHECK(rel.test(atomIndex(g, "m", {"a"})));
  CHECK(rel.test(atomIndex(g, "n", {"a"})));
  CHECK(rel.test(atomIndex(g, "m", {"c"})));
  CHECK(rel.test(atomIndex(g, "n", {"c"})));
  CHECK_FALSE(rel.test(atomIndex(g, "m", {"b"})));
  CHECK_FALSE(rel.test(atomIndex(g, "n", {"b"})));
}

TEST_CASE("property: flipping irrelevant atoms never changes the ontology") {
  std::mt19937 rng(31);
  int done = 0;
  for (int trial = 0; trial < 120 && done < 25; ++trial) {
    TcpKnowledgeBase kb = tcpel::testing::randomKb(rng);
    GroundMln g = ground(kb.mln);
    if (g.n() == 0) continue;
    Bits rel = annotationRelevantAtoms(kb, g);
    std::vector<std::size_t> irrelevant;
    for (std::size_t i = 0; i < g.n(); ++i)
      if (!rel.test(i)) irrelevant.push_back(i);
    if (irrelevant.empty()) continue;
    ++done;

    for (int rep = 0; rep < 8; ++rep) {
      World w(g.n());
      for (std::size_t i = 0; i < g.n(); ++i)
        if (rng() & 1) w.set(i);
      World flipped = w;
      std::size_t bit = irrelevant[rng() % irrelevant.size()];
      if (flipped.test(bit))
        flipped.set(bit, false);
      else
        flipped.set(bit);
      CHECK(ontologyText(induceOntology(kb, w, g)) ==
            ontologyText(induceOntology(kb, flipped, g)));
    }
  }
  CHECK(done >= 10);
}

TEST_CASE("consequence cache agrees with direct computation on all worlds") {
  TcpKnowledgeBase kb = loadFixture("ex6.tcpkb");
  GroundMln g = ground(kb.mln);
  ConsequenceCache cache(kb, g, InconsistencyPolicy::Explode);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << g.n()); ++i) {
    World w = worldFromIndex(i, g.n());
    const Consequences& cached = cache.lookup(w);
    Consequences direct = atomicConsequences(induceOntology(kb, w, g),
                                             kb.signature,
                                             InconsistencyPolicy::Explode);
    CHECK(cached.consistent == direct.consistent);
    CHECK(cached.atoms == direct.atoms);
  }
}

TEST_CASE("forms: an accepted labeling binds the existential to a real pair") {
  TcpKnowledgeBase kb = loadFixture("forms_facts.tcpkb");
  GroundMln g = ground(kb.mln);
  World w(g.n());
  w.set(atomIndex(g, "canLabel", {"l", "f"}));

  std::set<Atom> cons = consequencesOf(kb, w, g);
  CHECK(cons.count({"field", {"f"}}) == 1);
  CHECK(cons.count({"label", {"f", "l"}}) == 1);
  CHECK(cons.count({"text", {"l"}}) == 1);

  // Without the binding the successor stays anonymous.
  std::set<Atom> bare = consequencesOf(kb, World(g.n()), g);
  CHECK(bare.count({"field", {"f"}}) == 1);
  CHECK(bare.count({"label", {"f", "l"}}) == 0);
  CHECK(bare.count({"text", {"l"}}) == 0);
}
