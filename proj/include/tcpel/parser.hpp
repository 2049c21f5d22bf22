#ifndef TCPEL_PARSER_HPP
#define TCPEL_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcpel/kb.hpp"

namespace tcpel {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  SourceLoc loc;
  std::string message;
  std::string toString() const {
    return std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + message;
  }
};

// A parsed knowledge base plus source locations for error reporting.
struct KbDocument {
  TcpKnowledgeBase kb;
  std::vector<SourceLoc> axiomLocs;    // parallel to kb.axioms
  std::vector<SourceLoc> formulaLocs;  // parallel to kb.mln.formulas
};

struct ParseResult {
  std::optional<KbDocument> doc;  // absent on syntax / shape errors
  std::vector<Diagnostic> diagnostics;
  // True only when the document parsed and passed all structural validation.
  bool ok() const { return doc.has_value() && diagnostics.empty(); }
};

// Parse the .tcpkb text format. Structural validation (kb-model) runs on a
// successfully parsed document and its findings carry source locations.
ParseResult parseKb(std::string_view text);

// Canonical text for a KB; parsing it back yields a structurally equal KB.
std::string serializeKb(const TcpKnowledgeBase& kb);

}  // namespace tcpel

#endif  // TCPEL_PARSER_HPP
