#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcpel/mln.hpp"
#include "tcpel/oracle.hpp"
#include "tcpel/parser.hpp"
#include "tcpel/rank.hpp"
#include "tcpel/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRefusal = 2;
constexpr int kExitUsage = 64;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Parse + structural validation; prints diagnostics and returns nullopt on
// failure.
std::optional<tcpel::TcpKnowledgeBase> loadKb(const std::string& path) {
  auto text = slurp(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  tcpel::ParseResult result = tcpel::parseKb(*text);
  if (!result.ok()) {
    for (const auto& d : result.diagnostics)
      std::cerr << path << ":" << d.toString() << "\n";
    return std::nullopt;
  }
  tcpel::Verdict v = tcpel::validateKb(result.doc->kb);
  if (!v.ok()) {
    for (const auto& p : v.problems) std::cerr << path << ": " << p << "\n";
    return std::nullopt;
  }
  return result.doc->kb;
}

void writeOut(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(outPath, std::ios::binary);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic EL++ ranking engine over tightly coupled "
               "probabilistic knowledge bases"};
  app.require_subcommand(1);

  // rank
  auto* rank = app.add_subcommand("rank", "Anytime ranking with certified bounds");
  std::string rankFile, inconsistency = "explode", output = "json", outPath;
  std::optional<std::uint64_t> maxClasses, maxWorlds;
  std::optional<double> maxSeconds, targetBound;
  bool tightBound = false;
  rank->add_option("file", rankFile, "knowledge base (.tcpkb)")->required();
  rank->add_option("--max-classes", maxClasses, "stop after N classes");
  rank->add_option("--max-worlds", maxWorlds, "stop after N worlds");
  rank->add_option("--max-seconds", maxSeconds, "wall-clock budget");
  rank->add_option("--target-bound", targetBound, "stop once U <= this");
  rank->add_option("--inconsistency", inconsistency, "explode|skip")
      ->check(CLI::IsMember({"explode", "skip"}));
  rank->add_flag("--tight-bound", tightBound, "skip empty classes when bounding");
  rank->add_option("--output", output, "json|tsv")
      ->check(CLI::IsMember({"json", "tsv"}));
  rank->add_option("--out", outPath, "write the report to PATH");

  // exact
  auto* exact = app.add_subcommand("exact", "Exact brute-force ranking");
  std::string exactFile;
  std::size_t cap = tcpel::kDefaultOracleCap;
  exact->add_option("file", exactFile, "knowledge base (.tcpkb)")->required();
  exact->add_option("--cap", cap, "refuse above this many ground atoms");

  // validate
  auto* validate = app.add_subcommand("validate", "Parse and validate a KB");
  std::string validateFile;
  validate->add_option("file", validateFile, "knowledge base (.tcpkb)")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Grounding size statistics");
  std::string statsFile;
  stats->add_option("file", statsFile, "knowledge base (.tcpkb)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (rank->parsed()) {
      auto kb = loadKb(rankFile);
      if (!kb) return kExitValidation;
      tcpel::GroundMln g = tcpel::ground(kb->mln);
      tcpel::RankConfig cfg;
      cfg.stop.maxClasses = maxClasses;
      cfg.stop.maxWorlds = maxWorlds;
      cfg.stop.maxSeconds = maxSeconds;
      cfg.stop.targetBound = targetBound;
      cfg.policy = inconsistency == "skip" ? tcpel::InconsistencyPolicy::Skip
                                           : tcpel::InconsistencyPolicy::Explode;
      cfg.tightBound = tightBound;
      tcpel::RankingResult r = tcpel::anytimeRank(*kb, g, cfg);
      writeOut(tcpel::emitReport(r, output == "tsv" ? tcpel::ReportFormat::Tsv
                                                    : tcpel::ReportFormat::Json,
                                 cfg),
               outPath);
      return kExitOk;
    }

    if (exact->parsed()) {
      auto kb = loadKb(exactFile);
      if (!kb) return kExitValidation;
      tcpel::GroundMln g = tcpel::ground(kb->mln);
      tcpel::OracleScores s = tcpel::exactScores(
          *kb, g, tcpel::InconsistencyPolicy::Explode, true, cap);
      nlohmann::json doc;
      nlohmann::json atoms = nlohmann::json::array();
      auto num = [](double v) {
        return std::isfinite(v) ? nlohmann::json::parse(fmt17(v))
                                : nlohmann::json(nullptr);
      };
      for (const auto& [a, p] : tcpel::exactRank(
               *kb, g, tcpel::InconsistencyPolicy::Explode, cap))
        atoms.push_back({{"atom", a.toString()},
                         {"probability", num(p)},
                         {"logScore", num(s.logScore.at(a))}});
      doc["atoms"] = std::move(atoms);
      doc["logZ"] = num(s.logZ);
      doc["bottomMass"] = num(std::exp(s.bottomLogMass));
      std::cout << doc.dump(2) << "\n";
      return kExitOk;
    }

    if (validate->parsed()) {
      auto kb = loadKb(validateFile);
      if (!kb) return kExitValidation;
      std::cout << "ok\n";
      return kExitOk;
    }

    if (stats->parsed()) {
      auto kb = loadKb(statsFile);
      if (!kb) return kExitValidation;
      tcpel::GroundMln g = tcpel::ground(kb->mln);
      auto pow2 = [](std::size_t k) -> std::string {
        if (k >= 64) return "2^" + std::to_string(k);
        return std::to_string(std::uint64_t{1} << k);
      };
      std::cout << "groundAtoms\t" << g.n() << "\n";
      std::cout << "groundFormulas\t" << g.formulas.size() << "\n";
      std::cout << "worlds\t" << pow2(g.n()) << "\n";
      std::cout << "classes\t" << pow2(g.formulas.size()) << "\n";
      std::cout << "projectedGroundingSize\t"
                << tcpel::projectedGroundingSize(kb->mln) << "\n";
      return kExitOk;
    }
  } catch (const tcpel::RefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefusal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
