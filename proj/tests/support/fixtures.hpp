#ifndef TESTS_SUPPORT_FIXTURES_HPP
#define TESTS_SUPPORT_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tcpel/parser.hpp"

namespace tcpel::testing {

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string dataPath(const std::string& name) {
  return std::string(TCPEL_DATA_DIR) + "/" + name;
}

inline TcpKnowledgeBase loadFixture(const std::string& name) {
  ParseResult r = parseKb(readFile(dataPath(name)));
  if (!r.ok()) {
    std::string msg = "fixture " + name + " failed to parse:";
    for (const auto& d : r.diagnostics) msg += "\n  " + d.toString();
    throw std::runtime_error(msg);
  }
  return r.doc->kb;
}

}  // namespace tcpel::testing

#endif  // TESTS_SUPPORT_FIXTURES_HPP
