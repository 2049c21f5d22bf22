#include "tcpel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tcpel/binding.hpp"
#include "tcpel/logsumexp.hpp"

namespace tcpel {

void checkOracleCap(const GroundMln& g, std::size_t cap) {
  if (g.n() > cap)
    throw RefusalError("oracle refused: " + std::to_string(g.n()) +
                       " ground atoms exceed cap " + std::to_string(cap));
}

World worldFromIndex(std::uint64_t index, std::size_t n) {
  World w(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((index >> (n - 1 - i)) & 1) w.set(i);
  return w;
}

double logPartition(const GroundMln& g, std::size_t cap) {
  checkOracleCap(g, cap);
  const std::uint64_t total = std::uint64_t{1} << g.n();
  LogAccumulator acc;
  for (std::uint64_t i = 0; i < total; ++i)
    acc.add(worldLogScore(worldFromIndex(i, g.n()), g));
  return acc.logTotal();
}

double worldProbability(const World& w, const GroundMln& g, std::size_t cap) {
  return std::exp(worldLogScore(w, g) - logPartition(g, cap));
}

double marginalProbability(const std::vector<std::pair<Atom, bool>>& partial,
                           const GroundMln& g, std::size_t cap) {
  checkOracleCap(g, cap);
  std::vector<std::pair<std::size_t, bool>> constraints;
  for (const auto& [atom, value] : partial) {
    if (!atom.isGround())
      throw std::invalid_argument("marginal requires ground pairs: " + atom.toString());
    auto idx = g.indexOf(atom);
    if (!idx)
      throw std::invalid_argument("atom not in grounding: " + atom.toString());
    constraints.emplace_back(static_cast<std::size_t>(*idx), value);
  }
  const std::uint64_t total = std::uint64_t{1} << g.n();
  LogAccumulator acc;
  for (std::uint64_t i = 0; i < total; ++i) {
    World w = worldFromIndex(i, g.n());
    bool match = true;
    for (const auto& [ai, v] : constraints)
      if (w.test(ai) != v) {
        match = false;
        break;
      }
    if (match) acc.add(worldLogScore(w, g));
  }
  double logNum = acc.logTotal();
  if (logNum == kNegInf) return 0.0;
  return std::exp(logNum - logPartition(g, cap));
}

namespace {

struct PartialSums {
  std::map<Atom, double> atomSum;  // sum of exp(ls - shift)
  double zSum = 0.0;
  double bottomSum = 0.0;
};

PartialSums sumRange(const GroundMln& g, std::uint64_t begin,
                     std::uint64_t end, double shift, ConsequenceCache& cache) {
  PartialSums p;
  for (std::uint64_t i = begin; i < end; ++i) {
    World w = worldFromIndex(i, g.n());
    double contribution = std::exp(worldLogScore(w, g) - shift);
    p.zSum += contribution;
    const Consequences& cons = cache.lookup(w);
    if (!cons.consistent) p.bottomSum += contribution;
    for (const auto& a : cons.atoms) p.atomSum[a] += contribution;
  }
  return p;
}

}  // namespace

OracleScores exactScores(const TcpKnowledgeBase& kb, const GroundMln& g,
                         InconsistencyPolicy policy, bool parallel,
                         std::size_t cap) {
  checkOracleCap(g, cap);
  const std::uint64_t total = std::uint64_t{1} << g.n();

  // Shift everything by the maximum world log-score; the max is exact and
  // order-independent, so both kernels use the same shift. The all-false
  // world scores 0, so the max is never below 0.
  double shift = 0.0;
  for (std::uint64_t i = 0; i < total; ++i)
    shift = std::max(shift, worldLogScore(worldFromIndex(i, g.n()), g));

  PartialSums sums;
  if (!parallel) {
    ConsequenceCache cache(kb, g, policy);
    sums = sumRange(g, 0, total, shift, cache);
  } else {
    const std::uint64_t chunkSize = 4096;
    const std::uint64_t chunks = (total + chunkSize - 1) / chunkSize;
    std::vector<PartialSums> partials(chunks);
#ifdef _OPENMP
#pragma omp parallel
    {
      ConsequenceCache cache(kb, g, policy);
#pragma omp for schedule(dynamic)
      for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        std::uint64_t begin = static_cast<std::uint64_t>(c) * chunkSize;
        std::uint64_t end = std::min(begin + chunkSize, total);
        partials[c] = sumRange(g, begin, end, shift, cache);
      }
    }
#else
    ConsequenceCache cache(kb, g, policy);
    for (std::uint64_t c = 0; c < chunks; ++c) {
      std::uint64_t begin = c * chunkSize;
      std::uint64_t end = std::min(begin + chunkSize, total);
      partials[c] = sumRange(g, begin, end, shift, cache);
    }
#endif
    // Combine in chunk index order: deterministic for any thread count.
    for (const auto& p : partials) {
      sums.zSum += p.zSum;
      sums.bottomSum += p.bottomSum;
      for (const auto& [a, s] : p.atomSum) sums.atomSum[a] += s;
    }
  }

  OracleScores out;
  out.logZ = shift + std::log(sums.zSum);
  out.bottomLogMass =
      sums.bottomSum > 0 ? shift + std::log(sums.bottomSum) : kNegInf;
  for (const auto& [a, s] : sums.atomSum)
    if (s > 0) out.logScore[a] = shift + std::log(s);
  return out;
}

double exactAtomProbability(const TcpKnowledgeBase& kb, const GroundMln& g,
                            const Atom& a, InconsistencyPolicy policy,
                            std::size_t cap) {
  OracleScores s = exactScores(kb, g, policy, false, cap);
  auto it = s.logScore.find(a);
  if (it == s.logScore.end()) return 0.0;
  return std::exp(it->second - s.logZ);
}

std::vector<std::pair<Atom, double>> exactRank(const TcpKnowledgeBase& kb,
                                               const GroundMln& g,
                                               InconsistencyPolicy policy,
                                               std::size_t cap) {
  OracleScores s = exactScores(kb, g, policy, false, cap);
  std::vector<std::pair<Atom, double>> out;
  for (const auto& [a, ls] : s.logScore)
    out.emplace_back(a, std::exp(ls - s.logZ));
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  return out;
}

}  // namespace tcpel
