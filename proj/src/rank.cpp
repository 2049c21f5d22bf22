#include "tcpel/rank.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tcpel/binding.hpp"
#include "tcpel/logsumexp.hpp"

namespace tcpel {

double logUnassignedBound(std::size_t atomCount, std::uint64_t worldsAnalyzed,
                          double currentClassLogScore) {
  double remaining = std::ldexp(1.0, static_cast<int>(atomCount)) -
                     static_cast<double>(worldsAnalyzed);
  if (remaining <= 0) return kNegInf;
  return std::log(remaining) + currentClassLogScore;
}

std::vector<CertifiedPair> provablePartialOrder(
    const std::vector<std::pair<Atom, double>>& scores, double U) {
  std::vector<CertifiedPair> out;
  for (const auto& [a, sa] : scores)
    for (const auto& [b, sb] : scores) {
      if (a == b) continue;
      if (sa + U <= sb) out.push_back({a, b, sa + U < sb});
    }
  return out;
}

RankingResult anytimeRank(const TcpKnowledgeBase& kb, const GroundMln& g,
                          const RankConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto& stop = cfg.stop;
  const std::size_t n = g.n();
  const double logTarget = stop.targetBound
                               ? (*stop.targetBound > 0 ? std::log(*stop.targetBound)
                                                        : kNegInf)
                               : kNegInf;

  ClassEnumerator classes(g);
  ConsequenceCache cache(kb, g, cfg.policy);

  std::map<Atom, LogAccumulator> scores;
  LogAccumulator bottom;
  RankingResult result;

  std::uint64_t s = 0;  // worlds analyzed
  std::uint64_t t = 0;  // class positions consumed (empty classes included)
  double boundScore = 0.0;
  bool stopped = false;

  auto elapsedSeconds = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  std::optional<EquivalenceClass> pending;  // class fetched at a boundary stop
  while (true) {
    std::optional<EquivalenceClass> c = classes.next();
    if (!c) {
      result.completed = true;
      break;
    }
    boundScore = c->logScore;  // this class is C_{t+1} at the boundary

    // Boundary stop checks (U then uses the next class's score).
    if ((stop.maxClasses && t >= *stop.maxClasses) ||
        (stop.maxWorlds && s >= *stop.maxWorlds) ||
        (stop.maxSeconds && elapsedSeconds() >= *stop.maxSeconds) ||
        (stop.targetBound && logUnassignedBound(n, s, boundScore) <= logTarget)) {
      stopped = true;
      pending = std::move(c);
      break;
    }

    ++t;
    if (isEmpty(*c)) continue;

    MemberStream members(*c, g);
    while (auto w = members.next()) {
      ++s;
      const Consequences& cons = cache.lookup(*w);
      if (!cons.consistent) bottom.add(c->logScore);
      for (const auto& a : cons.atoms) scores[a].add(c->logScore);
      if (cfg.recordWorlds) result.analyzedWorlds.push_back(*w);
      if (cfg.recordTrace)
        result.logUTrace.push_back(logUnassignedBound(n, s, c->logScore));

      // Mid-class stops; wall-clock is only checked between worlds.
      if ((stop.maxWorlds && s >= *stop.maxWorlds) ||
          (stop.maxSeconds && elapsedSeconds() >= *stop.maxSeconds) ||
          (stop.targetBound && logUnassignedBound(n, s, c->logScore) <= logTarget)) {
        stopped = true;
        break;
      }
    }
    if (stopped) break;  // mid-class: bound keeps this class's score
  }

  if (result.completed) {
    result.logU = kNegInf;
  } else {
    if (cfg.tightBound && pending) {
      // Skip empty classes when choosing the bounding score: all remaining
      // worlds live in non-empty classes, whose scores are no larger.
      while (pending && isEmpty(*pending)) pending = classes.next();
      boundScore = pending ? pending->logScore : kNegInf;
    }
    result.logU = logUnassignedBound(n, s, boundScore);
  }

  result.worldsAnalyzed = s;
  result.classesAnalyzed = t;
  result.bottomLogMass = bottom.logTotal();
  for (const auto& [a, acc] : scores)
    result.order.push_back({a, acc.logTotal()});
  std::stable_sort(result.order.begin(), result.order.end(),
                   [](const RankingResult::Entry& x, const RankingResult::Entry& y) {
                     if (x.logScore != y.logScore) return x.logScore > y.logScore;
                     return x.atom < y.atom;
                   });

  // Certified pairs in log space (robust to large weights).
  for (const auto& ea : result.order)
    for (const auto& eb : result.order) {
      if (ea.atom == eb.atom) continue;
      double lifted = logAddExp(ea.logScore, result.logU);
      if (lifted <= eb.logScore)
        result.provablePairs.push_back({ea.atom, eb.atom, lifted < eb.logScore});
    }
  (void)stopped;
  return result;
}

}  // namespace tcpel
