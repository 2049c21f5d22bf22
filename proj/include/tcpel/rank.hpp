#ifndef TCPEL_RANK_HPP
#define TCPEL_RANK_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tcpel/classes.hpp"
#include "tcpel/el.hpp"
#include "tcpel/kb.hpp"
#include "tcpel/mln.hpp"

namespace tcpel {

struct StopCondition {
  std::optional<std::uint64_t> maxClasses;
  std::optional<std::uint64_t> maxWorlds;
  std::optional<double> maxSeconds;
  std::optional<double> targetBound;  // stop once U <= targetBound
};

struct RankConfig {
  StopCondition stop;
  InconsistencyPolicy policy = InconsistencyPolicy::Explode;
  bool tightBound = false;   // skip empty classes when bounding
  bool recordTrace = false;  // record logU after every world (for tests)
  bool recordWorlds = false; // record analyzed worlds (for tests)
};

struct CertifiedPair {
  Atom lower, upper;  // Pr(lower) <= Pr(upper)
  bool strict;
};

struct RankingResult {
  struct Entry {
    Atom atom;
    double logScore;
  };
  std::vector<Entry> order;  // descending score, ties by canonical atom order
  std::uint64_t worldsAnalyzed = 0;
  std::uint64_t classesAnalyzed = 0;
  double logU = 0.0;  // -inf when U = 0
  double bottomLogMass = 0.0;
  std::vector<CertifiedPair> provablePairs;
  bool completed = false;

  std::vector<double> logUTrace;      // when recordTrace
  std::vector<World> analyzedWorlds;  // when recordWorlds
};

// The anytime ranking algorithm: consume classes best-first, stream member
// worlds, induce and saturate, and add exp(class log-score) to every atomic
// consequence. Deterministic for identical inputs (except wall-clock stops).
RankingResult anytimeRank(const TcpKnowledgeBase& kb, const GroundMln& g,
                          const RankConfig& cfg = {});

// U = (2^n - s) * exp(currentClassLogScore) in log space: the bound on the
// total score mass not yet assigned.
double logUnassignedBound(std::size_t atomCount, std::uint64_t worldsAnalyzed,
                          double currentClassLogScore);

// The certified partial order: (b <= a) iff s_b + U <= s_a, strict on strict
// inequality. Linear-space scores.
std::vector<CertifiedPair> provablePartialOrder(
    const std::vector<std::pair<Atom, double>>& scores, double U);

}  // namespace tcpel

#endif  // TCPEL_RANK_HPP
