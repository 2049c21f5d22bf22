// Benchmark: serial reference oracle kernel vs the OpenMP-parallel one on a
// synthetic KB, verifying agreement while timing both.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tcpel/mln.hpp"
#include "tcpel/oracle.hpp"
#include "tcpel/parser.hpp"

namespace {

// n annotated concept assertions coupled to n unary MLN atoms plus pairwise
// conjunction formulas; the consequence cache does real per-world work.
std::string syntheticKb(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) {
    std::string c = "c" + std::to_string(i);
    text += "p(" + c + ") @ {m(" + c + ")=1}\n";
  }
  text += "mln {\n  const";
  for (int i = 0; i < n; ++i) text += " c" + std::to_string(i);
  text += "\n";
  for (int i = 0; i < n; ++i)
    text += "  " + std::to_string(0.1 * (i + 1)) + " m(c" + std::to_string(i) + ")\n";
  for (int i = 0; i + 1 < n; ++i)
    text += "  0.05 m(c" + std::to_string(i) + ") & m(c" + std::to_string(i + 1) +
            ")\n";
  text += "}\n";
  return text;
}

double seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oracle kernel benchmark: serial reference vs OpenMP"};
  int n = 16;
  int reps = 3;
  app.add_option("-n,--atoms", n, "ground atom count (worlds = 2^n)")
      ->check(CLI::Range(4, 20));
  app.add_option("-r,--reps", reps, "repetitions per kernel");
  CLI11_PARSE(app, argc, argv);

  tcpel::ParseResult parsed = tcpel::parseKb(syntheticKb(n));
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics)
      std::cerr << d.toString() << "\n";
    return 1;
  }
  const tcpel::TcpKnowledgeBase& kb = parsed.doc->kb;
  tcpel::GroundMln g = tcpel::ground(kb.mln);
  std::cout << "atoms=" << g.n() << " formulas=" << g.formulas.size()
            << " worlds=" << (1ull << g.n()) << "\n";

  using Clock = std::chrono::steady_clock;
  tcpel::OracleScores serial, parallel;
  double tSerial = 1e300, tParallel = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    serial = tcpel::exactScores(kb, g, tcpel::InconsistencyPolicy::Explode, false);
    tSerial = std::min(tSerial, seconds(Clock::now() - t0));
  }
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    parallel = tcpel::exactScores(kb, g, tcpel::InconsistencyPolicy::Explode, true);
    tParallel = std::min(tParallel, seconds(Clock::now() - t0));
  }

  double maxDiff = std::abs(serial.logZ - parallel.logZ);
  for (const auto& [a, ls] : serial.logScore)
    maxDiff = std::max(maxDiff, std::abs(ls - parallel.logScore.at(a)));
  std::printf("serial   best of %d: %.3fs\n", reps, tSerial);
  std::printf("parallel best of %d: %.3fs (speedup %.2fx)\n", reps, tParallel,
              tSerial / tParallel);
  std::printf("max |logScore diff| = %.3g\n", maxDiff);
  return maxDiff < 1e-9 ? 0 : 1;
}
