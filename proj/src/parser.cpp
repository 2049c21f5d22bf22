#include "tcpel/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tcpel {

namespace {

// --- lexer --------------------------------------------------------------------

enum class Tok {
  Ident,   // lower-case start
  Var,     // upper-case start
  Number,
  LParen, RParen, LBrace, RBrace,
  Comma, Amp, Arrow, At, Eq, Dot, Colon,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

struct LexError {
  SourceLoc loc;
  std::string message;
};

std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto loc = [&] { return SourceLoc{line, col}; };
  auto advance = [&](std::size_t k = 1) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i < text.size() && text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) || c == ';') {
      advance();
      continue;
    }
    SourceLoc here = loc();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
              text[i] == '\'')) {
        s += text[i];
        advance();
      }
      out.push_back({std::isupper(static_cast<unsigned char>(s[0])) ? Tok::Var
                                                                    : Tok::Ident,
                     s, here});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < text.size() && text[i + 1] != '>') ||
        (c == '.' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::string s;
      if (c == '-') {
        s += c;
        advance();
      }
      bool seenDot = false, seenExp = false;
      while (i < text.size()) {
        char d = text[i];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          s += d;
          advance();
        } else if (d == '.' && !seenDot && !seenExp) {
          // Dot is also a token (exists Y.(...)), so only consume it when a
          // digit follows.
          if (i + 1 < text.size() &&
              std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            seenDot = true;
            s += d;
            advance();
          } else {
            break;
          }
        } else if ((d == 'e' || d == 'E') && !seenExp && i + 1 < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[i + 1])) ||
                    text[i + 1] == '-' || text[i + 1] == '+')) {
          seenExp = true;
          s += d;
          advance();
          if (text[i] == '-' || text[i] == '+') {
            s += text[i];
            advance();
          }
        } else {
          break;
        }
      }
      out.push_back({Tok::Number, s, here});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", here}); advance(); continue;
      case ')': out.push_back({Tok::RParen, ")", here}); advance(); continue;
      case '{': out.push_back({Tok::LBrace, "{", here}); advance(); continue;
      case '}': out.push_back({Tok::RBrace, "}", here}); advance(); continue;
      case ',': out.push_back({Tok::Comma, ",", here}); advance(); continue;
      case '&': out.push_back({Tok::Amp, "&", here}); advance(); continue;
      case '@': out.push_back({Tok::At, "@", here}); advance(); continue;
      case '=': out.push_back({Tok::Eq, "=", here}); advance(); continue;
      case '.': out.push_back({Tok::Dot, ".", here}); advance(); continue;
      case ':': out.push_back({Tok::Colon, ":", here}); advance(); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", here});
          advance(2);
          continue;
        }
        [[fallthrough]];
      default:
        diags.push_back({here, std::string("unexpected character '") + c + "'"});
        advance();
        continue;
    }
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

// --- parser -------------------------------------------------------------------

struct ParseError {
  SourceLoc loc;
  std::string message;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  KbDocument parse() {
    KbDocument doc;
    while (!at(Tok::End)) {
      if (at(Tok::Ident) && cur().text == "mln" && peekIs(1, Tok::LBrace)) {
        parseMlnBlock(doc);
      } else {
        parseAxiomStatement(doc);
      }
    }
    finishSignature(doc);
    return doc;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool peekIs(std::size_t d, Tok k) const {
    return pos_ + d < toks_.size() && toks_[pos_ + d].kind == k;
  }
  Token take() { return toks_[pos_++]; }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) throw ParseError{cur().loc, "expected " + what + ", found '" + cur().text + "'"};
    return take();
  }

  Atom parseAtom() {
    Token name = expect(Tok::Ident, "a predicate name");
    Atom a;
    a.pred = name.text;
    expect(Tok::LParen, "'('");
    while (true) {
      if (at(Tok::Ident) || at(Tok::Var)) {
        a.args.push_back(take().text);
      } else {
        throw ParseError{cur().loc, "expected a term"};
      }
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      break;
    }
    expect(Tok::RParen, "')'");
    return a;
  }

  std::vector<Atom> parseConj() {
    std::vector<Atom> atoms{parseAtom()};
    while (at(Tok::Amp)) {
      take();
      atoms.push_back(parseAtom());
    }
    return atoms;
  }

  Annotation parseAnnotation() {
    Annotation ann;
    expect(Tok::At, "'@'");
    expect(Tok::LBrace, "'{'");
    if (!at(Tok::RBrace)) {
      while (true) {
        Atom a = parseAtom();
        expect(Tok::Eq, "'='");
        Token v = expect(Tok::Number, "0 or 1");
        if (v.text != "0" && v.text != "1")
          throw ParseError{v.loc, "annotation value must be 0 or 1"};
        ann.pairs.emplace_back(std::move(a), v.text == "1");
        if (at(Tok::Comma)) {
          take();
          continue;
        }
        break;
      }
    }
    expect(Tok::RBrace, "'}'");
    return ann;
  }

  void parseAxiomStatement(KbDocument& doc) {
    SourceLoc loc = cur().loc;
    std::vector<Atom> lhs = parseConj();

    bool hasArrow = at(Tok::Arrow);
    std::string rhsKind = "none";  // none | false | exists | atom
    Atom rhsAtom;
    std::string existsVar, existsRole;
    std::vector<Atom> existsConcepts;
    Atom existsRoleAtom;

    if (hasArrow) {
      take();
      if (at(Tok::Ident) && cur().text == "false") {
        take();
        rhsKind = "false";
      } else if (at(Tok::Ident) && cur().text == "exists") {
        take();
        existsVar = expect(Tok::Var, "a variable").text;
        expect(Tok::Dot, "'.'");
        expect(Tok::LParen, "'('");
        std::vector<Atom> conj = parseConj();
        expect(Tok::RParen, "')'");
        bool haveRole = false;
        for (auto& a : conj) {
          if (a.args.size() == 2) {
            if (haveRole)
              throw ParseError{loc, "existential may contain only one role atom"};
            existsRoleAtom = a;
            haveRole = true;
          } else if (a.args.size() == 1) {
            existsConcepts.push_back(a);
          } else {
            throw ParseError{loc, "atoms must be unary or binary"};
          }
        }
        if (!haveRole)
          throw ParseError{loc, "existential must contain a role atom r(X," +
                                    existsVar + ")"};
        rhsKind = "exists";
      } else {
        rhsAtom = parseAtom();
        rhsKind = "atom";
      }
    }

    Annotation ann;
    if (at(Tok::At)) ann = parseAnnotation();

    AnnotatedAxiom aa;
    aa.annotation = std::move(ann);
    aa.axiom = classify(loc, lhs, rhsKind, rhsAtom, existsVar, existsRoleAtom,
                        existsConcepts, hasArrow);
    doc.kb.axioms.push_back(std::move(aa));
    doc.axiomLocs.push_back(loc);
  }

  static ConceptPtr conjOfAtomics(const std::vector<Atom>& unaries) {
    ConceptPtr c = atomic(unaries[0].pred);
    for (std::size_t i = 1; i < unaries.size(); ++i)
      c = conj(c, atomic(unaries[i].pred));
    return c;
  }

  ElAxiom classify(SourceLoc loc, const std::vector<Atom>& lhs,
                   const std::string& rhsKind, const Atom& rhsAtom,
                   const std::string& existsVar, const Atom& existsRoleAtom,
                   const std::vector<Atom>& existsConcepts, bool hasArrow) {
    auto fail = [&](const std::string& msg) -> ElAxiom {
      throw ParseError{loc, msg};
    };
    for (const auto& a : lhs)
      if (a.args.empty() || a.args.size() > 2)
        return fail("atom " + a.toString() + " must be unary or binary");

    if (!hasArrow) {
      // Ground facts.
      if (lhs.size() != 1)
        return fail("a fact must be a single atom (use separate statements)");
      const Atom& a = lhs[0];
      if (!a.isGround()) return fail("facts must be ground: " + a.toString());
      ElAxiom ax;
      if (a.args.size() == 1) {
        ax.kind = ElAxiom::Kind::ConceptAssertion;
        ax.concept_ = atomic(a.pred);
        ax.subject = a.args[0];
      } else {
        ax.kind = ElAxiom::Kind::RoleAssertion;
        ax.role = a.pred;
        ax.subject = a.args[0];
        ax.object = a.args[1];
      }
      return ax;
    }

    std::vector<Atom> unaries, binaries;
    for (const auto& a : lhs) {
      for (const auto& t : a.args)
        if (!isVariable(t))
          return fail("implication bodies must use variables, found constant '" +
                      t + "' (nearest shapes: A(X) -> B(X), r(X,Y) -> s(X,Y))");
      (a.args.size() == 1 ? unaries : binaries).push_back(a);
    }

    if (rhsKind == "exists") {
      // A1(X) & ... -> exists Y.(r(X,Y) & B(Y) & ...)
      if (binaries.size() != 0 || unaries.empty())
        return fail("left side of an existential axiom must be concept atoms "
                    "(shape: A(X) -> exists Y.(r(X,Y) & B(Y)))");
      std::string x = unaries[0].args[0];
      for (const auto& a : unaries)
        if (a.args[0] != x)
          return fail("all left-side atoms must share one variable");
      if (existsRoleAtom.args[0] != x || existsRoleAtom.args[1] != existsVar)
        return fail("existential role atom must be " + existsRoleAtom.pred + "(" +
                    x + "," + existsVar + ")");
      ConceptPtr filler = top();
      if (!existsConcepts.empty()) {
        for (const auto& a : existsConcepts)
          if (a.args[0] != existsVar)
            return fail("existential concept atoms must be over " + existsVar);
        filler = conjOfAtomics(existsConcepts);
      }
      ElAxiom ax;
      ax.kind = ElAxiom::Kind::Gci;
      ax.lhs = conjOfAtomics(unaries);
      ax.rhs = exists(existsRoleAtom.pred, filler);
      ax.subjectVar = x;
      ax.fillerVar = existsVar;
      return ax;
    }

    if (rhsKind == "false") {
      if (binaries.empty()) {
        if (unaries.empty()) return fail("empty left side");
        std::string x = unaries[0].args[0];
        for (const auto& a : unaries)
          if (a.args[0] != x) return fail("all left-side atoms must share one variable");
        ElAxiom ax;
        ax.kind = ElAxiom::Kind::Gci;
        ax.lhs = conjOfAtomics(unaries);
        ax.rhs = bottom();
        ax.subjectVar = x;
        return ax;
      }
      // fall through to the r(X,Y) & B(Y) -> ... handling below
    }

    if (binaries.empty()) {
      // A1(X) & ... & An(X) -> B(X) | false
      if (unaries.empty()) return fail("empty left side");
      std::string x = unaries[0].args[0];
      for (const auto& a : unaries)
        if (a.args[0] != x) return fail("all left-side atoms must share one variable");
      if (rhsAtom.args.size() != 1 || rhsAtom.args[0] != x)
        return fail("right side must be a concept atom over " + x +
                    " (nearest shape: A(X) -> B(X))");
      ElAxiom ax;
      ax.kind = ElAxiom::Kind::Gci;
      ax.lhs = conjOfAtomics(unaries);
      ax.rhs = atomic(rhsAtom.pred);
      ax.subjectVar = x;
      return ax;
    }

    if (binaries.size() == 1 && unaries.empty() && rhsKind == "atom") {
      const Atom& r = binaries[0];
      std::string x = r.args[0], y = r.args[1];
      if (x == y) return fail("role atom arguments must be distinct variables");
      if (rhsAtom.args.size() == 2) {
        // r(X,Y) -> s(X,Y)
        if (rhsAtom.args[0] != x || rhsAtom.args[1] != y)
          return fail("role inclusion must be " + rhsAtom.pred + "(" + x + "," + y +
                      ") (nearest shape: r(X,Y) -> s(X,Y))");
        ElAxiom ax;
        ax.kind = ElAxiom::Kind::RoleInclusion;
        ax.chain = {r.pred};
        ax.superRole = rhsAtom.pred;
        ax.subjectVar = x;
        ax.fillerVar = y;
        return ax;
      }
      // r(X,Y) -> C(X) [domain] or C(Y) [range]
      ElAxiom ax;
      ax.role = r.pred;
      ax.concept_ = atomic(rhsAtom.pred);
      ax.subjectVar = x;
      ax.fillerVar = y;
      if (rhsAtom.args[0] == x) {
        ax.kind = ElAxiom::Kind::DomainRestriction;
      } else if (rhsAtom.args[0] == y) {
        ax.kind = ElAxiom::Kind::RangeRestriction;
      } else {
        return fail("right side variable must be " + x + " or " + y);
      }
      return ax;
    }

    if (binaries.size() == 2 && unaries.empty() && rhsKind == "atom" &&
        rhsAtom.args.size() == 2) {
      // r(X,Y) & s(Y,Z) -> t(X,Z)
      const Atom &r = binaries[0], &s = binaries[1];
      if (r.args[1] != s.args[0])
        return fail("composition chain must share the middle variable "
                    "(nearest shape: r(X,Y) & s(Y,Z) -> t(X,Z))");
      if (rhsAtom.args[0] != r.args[0] || rhsAtom.args[1] != s.args[1])
        return fail("composition head must be " + rhsAtom.pred + "(" + r.args[0] +
                    "," + s.args[1] + ")");
      ElAxiom ax;
      ax.kind = ElAxiom::Kind::RoleInclusion;
      ax.chain = {r.pred, s.pred};
      ax.superRole = rhsAtom.pred;
      ax.subjectVar = r.args[0];
      ax.chainVar = r.args[1];
      ax.fillerVar = s.args[1];
      return ax;
    }

    if (binaries.size() == 1 &&
        (rhsKind == "false" || (rhsKind == "atom" && rhsAtom.args.size() == 1))) {
      // [A(X) &] r(X,Y) & B(Y) & ... -> C(X) | false
      const Atom& r = binaries[0];
      std::string x = r.args[0], y = r.args[1];
      if (x == y) return fail("role atom arguments must be distinct variables");
      std::vector<Atom> overX, overY;
      for (const auto& a : unaries) {
        if (a.args[0] == y)
          overY.push_back(a);
        else if (a.args[0] == x)
          overX.push_back(a);
        else
          return fail("unary atom " + a.toString() + " must be over " + x + " or " + y);
      }
      if (overY.empty())
        return fail("expected a concept atom over " + y +
                    " (nearest shape: r(X,Y) & B(Y) -> A(X))");
      if (rhsKind == "atom" && rhsAtom.args[0] != x)
        return fail("right side must be a concept atom over " + x);
      ConceptPtr lhsConcept = exists(r.pred, conjOfAtomics(overY));
      if (!overX.empty()) lhsConcept = conj(conjOfAtomics(overX), lhsConcept);
      ElAxiom ax;
      ax.kind = ElAxiom::Kind::Gci;
      ax.lhs = lhsConcept;
      ax.rhs = rhsKind == "false" ? bottom() : atomic(rhsAtom.pred);
      ax.subjectVar = x;
      ax.fillerVar = y;
      return ax;
    }

    return fail(
        "unsupported axiom shape; supported: A1(X)&..&An(X) -> B(X)|false, "
        "A(X) -> exists Y.(r(X,Y) & B(Y)), r(X,Y) & B(Y) -> A(X), "
        "r(X,Y) -> s(X,Y), r(X,Y) & s(Y,Z) -> t(X,Z), r(X,Y) -> C(X)|C(Y), "
        "ground facts A(a), r(a,b)");
  }

  void parseMlnBlock(KbDocument& doc) {
    take();  // 'mln'
    expect(Tok::LBrace, "'{'");
    MlnProgram& m = doc.kb.mln;
    while (!at(Tok::RBrace)) {
      if (at(Tok::End)) throw ParseError{cur().loc, "unterminated mln block"};
      if (at(Tok::Ident) && cur().text == "const") {
        take();
        std::string sort;
        if (at(Tok::Ident) && peekIs(1, Tok::Colon)) {
          sort = take().text;
          take();  // ':'
        }
        bool any = false;
        while (at(Tok::Ident) && cur().text != "const" && cur().text != "scope") {
          if (sort.empty())
            m.constants.push_back(take().text);
          else
            m.sortConstants[sort].push_back(take().text);
          any = true;
        }
        if (!any) throw ParseError{cur().loc, "expected constant names after 'const'"};
        continue;
      }
      if (at(Tok::Ident) && cur().text == "scope") {
        take();
        Token pred = expect(Tok::Ident, "a predicate name");
        expect(Tok::LParen, "'('");
        std::vector<std::string> sorts;
        while (true) {
          sorts.push_back(expect(Tok::Ident, "a sort name").text);
          if (at(Tok::Comma)) {
            take();
            continue;
          }
          break;
        }
        expect(Tok::RParen, "')'");
        m.scopes[pred.text] = std::move(sorts);
        continue;
      }
      if (at(Tok::Number)) {
        SourceLoc loc = cur().loc;
        double w = std::stod(take().text);
        MlnFormula f;
        f.weight = w;
        f.conjuncts = parseConj();
        m.formulas.push_back(std::move(f));
        doc.formulaLocs.push_back(loc);
        continue;
      }
      throw ParseError{cur().loc,
                       "expected a weighted formula, 'const', or 'scope' in mln block"};
    }
    take();  // '}'
  }

  void finishSignature(KbDocument& doc) {
    Signature& sig = doc.kb.signature;
    auto notePred = [&](const Atom& a, SourceLoc loc) {
      auto [it, inserted] = sig.mlnPredicates.emplace(a.pred, static_cast<int>(a.args.size()));
      if (!inserted && it->second != static_cast<int>(a.args.size()))
        throw ParseError{loc, "predicate '" + a.pred + "' used with arities " +
                                  std::to_string(it->second) + " and " +
                                  std::to_string(a.args.size())};
    };
    for (std::size_t i = 0; i < doc.kb.mln.formulas.size(); ++i)
      for (const auto& a : doc.kb.mln.formulas[i].conjuncts)
        notePred(a, doc.formulaLocs[i]);
    for (std::size_t i = 0; i < doc.kb.axioms.size(); ++i)
      for (const auto& [a, v] : doc.kb.axioms[i].annotation.pairs)
        if (sig.mlnPredicates.count(a.pred)) notePred(a, doc.axiomLocs[i]);
    // Annotation-only predicates stay undeclared; validateAnnotation flags them.

    for (const auto& c : doc.kb.mln.allConstants()) sig.mlnConstants.insert(c);

    std::function<void(const ConceptPtr&)> walk = [&](const ConceptPtr& c) {
      using K = ConceptExpr::Kind;
      switch (c->kind) {
        case K::Atomic: sig.conceptNames.insert(c->name); break;
        case K::Nominal: sig.individuals.insert(c->name); break;
        case K::Conjunction: walk(c->left); walk(c->right); break;
        case K::Existential: sig.roleNames.insert(c->name); walk(c->left); break;
        default: break;
      }
    };
    for (const auto& aa : doc.kb.axioms) {
      const ElAxiom& ax = aa.axiom;
      switch (ax.kind) {
        case ElAxiom::Kind::Gci: walk(ax.lhs); walk(ax.rhs); break;
        case ElAxiom::Kind::RoleInclusion:
          for (const auto& r : ax.chain) sig.roleNames.insert(r);
          sig.roleNames.insert(ax.superRole);
          break;
        case ElAxiom::Kind::DomainRestriction:
        case ElAxiom::Kind::RangeRestriction:
          sig.roleNames.insert(ax.role);
          walk(ax.concept_);
          break;
        case ElAxiom::Kind::ConceptAssertion:
          walk(ax.concept_);
          sig.individuals.insert(ax.subject);
          break;
        case ElAxiom::Kind::RoleAssertion:
          sig.roleNames.insert(ax.role);
          sig.individuals.insert(ax.subject);
          sig.individuals.insert(ax.object);
          break;
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parseKb(std::string_view text) {
  ParseResult result;
  std::vector<Token> toks = lex(text, result.diagnostics);
  if (!result.diagnostics.empty()) return result;
  try {
    Parser p(std::move(toks));
    KbDocument doc = p.parse();
    // Structural validation with locations.
    Verdict global = validateCmln(doc.kb.mln);
    for (const auto& prob : global.problems)
      result.diagnostics.push_back({{0, 0}, prob});
    for (const auto& [name, arity] : doc.kb.signature.mlnPredicates) {
      if (doc.kb.signature.conceptNames.count(name))
        result.diagnostics.push_back(
            {{0, 0}, "name '" + name + "' used both as MLN predicate and concept name"});
      if (doc.kb.signature.roleNames.count(name))
        result.diagnostics.push_back(
            {{0, 0}, "name '" + name + "' used both as MLN predicate and role name"});
    }
    for (std::size_t i = 0; i < doc.kb.axioms.size(); ++i) {
      Verdict v = validateAnnotation(doc.kb.axioms[i].annotation, doc.kb.signature);
      v.merge(checkElFragment(doc.kb.axioms[i].axiom, doc.kb.axioms));
      std::set<std::string> annVars;
      for (const auto& [atom, val] : doc.kb.axioms[i].annotation.pairs)
        for (const auto& arg : atom.args)
          if (isVariable(arg)) annVars.insert(arg);
      for (const auto& av : doc.kb.axioms[i].axiom.exposedVars())
        if (annVars.count(av) &&
            doc.kb.axioms[i].axiom.kind != ElAxiom::Kind::Gci &&
            doc.kb.axioms[i].axiom.kind != ElAxiom::Kind::DomainRestriction)
          v.add("annotation binds variable '" + av +
                "' of an axiom kind whose instantiation leaves the supported fragment");
      for (const auto& prob : v.problems)
        result.diagnostics.push_back({doc.axiomLocs[i], prob});
    }
    result.doc = std::move(doc);
  } catch (const ParseError& e) {
    result.diagnostics.push_back({e.loc, e.message});
  }
  return result;
}

// --- serializer ----------------------------------------------------------------

namespace {

std::string formatWeight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

// Flatten a concept into unary atoms over `var` plus at most one existential.
struct FlatConcept {
  std::vector<std::string> concepts;
  std::optional<std::string> role;
  std::vector<std::string> fillerConcepts;
  bool isBottom = false;
  bool ok = true;
};

void flatten(const ConceptPtr& c, FlatConcept& f, bool insideFiller) {
  using K = ConceptExpr::Kind;
  switch (c->kind) {
    case K::Atomic:
      (insideFiller ? f.fillerConcepts : f.concepts).push_back(c->name);
      break;
    case K::Bottom:
      f.isBottom = true;
      break;
    case K::Top:
      break;
    case K::Conjunction:
      flatten(c->left, f, insideFiller);
      flatten(c->right, f, insideFiller);
      break;
    case K::Existential:
      if (insideFiller || f.role) {
        f.ok = false;
        break;
      }
      f.role = c->name;
      flatten(c->left, f, true);
      break;
    default:
      f.ok = false;  // nominals are not surface-expressible
  }
}

std::string atomText(const std::string& pred, const std::string& a) {
  return pred + "(" + a + ")";
}
std::string atomText(const std::string& pred, const std::string& a,
                     const std::string& b) {
  return pred + "(" + a + "," + b + ")";
}

std::string axiomText(const ElAxiom& ax) {
  std::string x = ax.subjectVar.empty() ? "X" : ax.subjectVar;
  std::string y = ax.fillerVar.empty() ? "Y" : ax.fillerVar;
  std::ostringstream os;
  switch (ax.kind) {
    case ElAxiom::Kind::ConceptAssertion:
      return atomText(ax.concept_->name, ax.subject);
    case ElAxiom::Kind::RoleAssertion:
      return atomText(ax.role, ax.subject, ax.object);
    case ElAxiom::Kind::DomainRestriction:
      return atomText(ax.role, x, y) + " -> " + atomText(ax.concept_->name, x);
    case ElAxiom::Kind::RangeRestriction:
      return atomText(ax.role, x, y) + " -> " + atomText(ax.concept_->name, y);
    case ElAxiom::Kind::RoleInclusion:
      if (ax.chain.size() == 1)
        return atomText(ax.chain[0], x, y) + " -> " + atomText(ax.superRole, x, y);
      else {
        std::string z = ax.chainVar.empty() ? "Y" : ax.chainVar;
        std::string w = ax.fillerVar.empty() ? "Z" : ax.fillerVar;
        return atomText(ax.chain[0], x, z) + " & " + atomText(ax.chain[1], z, w) +
               " -> " + atomText(ax.superRole, x, w);
      }
    case ElAxiom::Kind::Gci: {
      FlatConcept lhs, rhs;
      flatten(ax.lhs, lhs, false);
      flatten(ax.rhs, rhs, false);
      if (!lhs.ok || !rhs.ok)
        throw std::invalid_argument("axiom not expressible in surface syntax: " +
                                    ax.toString());
      bool first = true;
      for (const auto& c : lhs.concepts) {
        if (!first) os << " & ";
        os << atomText(c, x);
        first = false;
      }
      if (lhs.role) {
        if (!first) os << " & ";
        os << atomText(*lhs.role, x, y);
        for (const auto& c : lhs.fillerConcepts) os << " & " << atomText(c, y);
        first = false;
      }
      os << " -> ";
      if (rhs.isBottom) {
        os << "false";
      } else if (rhs.role) {
        os << "exists " << y << ".(" << atomText(*rhs.role, x, y);
        for (const auto& c : rhs.fillerConcepts) os << " & " << atomText(c, y);
        os << ")";
      } else if (rhs.concepts.size() == 1) {
        os << atomText(rhs.concepts[0], x);
      } else {
        throw std::invalid_argument("axiom not expressible in surface syntax: " +
                                    ax.toString());
      }
      return os.str();
    }
  }
  return os.str();
}

}  // namespace

std::string serializeKb(const TcpKnowledgeBase& kb) {
  std::ostringstream os;
  for (const auto& aa : kb.axioms) {
    os << axiomText(aa.axiom);
    if (!aa.annotation.empty()) {
      os << " @ {";
      for (std::size_t i = 0; i < aa.annotation.pairs.size(); ++i) {
        if (i) os << ", ";
        os << aa.annotation.pairs[i].first.toString() << "="
           << (aa.annotation.pairs[i].second ? "1" : "0");
      }
      os << "}";
    }
    os << "\n";
  }
  os << "mln {\n";
  if (!kb.mln.constants.empty()) {
    os << "  const";
    for (const auto& c : kb.mln.constants) os << " " << c;
    os << "\n";
  }
  for (const auto& [sort, cs] : kb.mln.sortConstants) {
    os << "  const " << sort << ":";
    for (const auto& c : cs) os << " " << c;
    os << "\n";
  }
  for (const auto& [pred, sorts] : kb.mln.scopes) {
    os << "  scope " << pred << "(";
    for (std::size_t i = 0; i < sorts.size(); ++i) {
      if (i) os << ",";
      os << sorts[i];
    }
    os << ")\n";
  }
  for (const auto& f : kb.mln.formulas) {
    os << "  " << formatWeight(f.weight);
    for (std::size_t i = 0; i < f.conjuncts.size(); ++i)
      os << (i ? " & " : " ") << f.conjuncts[i].toString();
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace tcpel
