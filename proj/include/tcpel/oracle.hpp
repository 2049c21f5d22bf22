#ifndef TCPEL_ORACLE_HPP
#define TCPEL_ORACLE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "tcpel/el.hpp"
#include "tcpel/kb.hpp"
#include "tcpel/mln.hpp"

namespace tcpel {

// Exact brute-force semantics over all 2^n worlds. Exponential by design;
// refuses instances above the cap. Worlds are enumerated in plain numeric
// order, an independent path from the class machinery.
inline constexpr std::size_t kDefaultOracleCap = 20;

void checkOracleCap(const GroundMln& g, std::size_t cap);

// log Z, the log partition function.
double logPartition(const GroundMln& g, std::size_t cap = kDefaultOracleCap);

double worldProbability(const World& w, const GroundMln& g,
                        std::size_t cap = kDefaultOracleCap);

// Probability of a partial ground assignment: sum of worldProbability over
// all consistent completions. Pairs must be ground.
double marginalProbability(const std::vector<std::pair<Atom, bool>>& partial,
                           const GroundMln& g, std::size_t cap = kDefaultOracleCap);

struct OracleScores {
  std::map<Atom, double> logScore;  // log of unnormalized atom score
  double logZ;
  double bottomLogMass;  // mass of inconsistent worlds (skip policy target)
};

// Unnormalized per-atom scores summed over all worlds; score(a)/Z is the
// exact atom probability. `parallel` selects the OpenMP kernel; the serial
// path is the reference implementation.
OracleScores exactScores(const TcpKnowledgeBase& kb, const GroundMln& g,
                         InconsistencyPolicy policy = InconsistencyPolicy::Explode,
                         bool parallel = false,
                         std::size_t cap = kDefaultOracleCap);

double exactAtomProbability(const TcpKnowledgeBase& kb, const GroundMln& g,
                            const Atom& a,
                            InconsistencyPolicy policy = InconsistencyPolicy::Explode,
                            std::size_t cap = kDefaultOracleCap);

// All atoms with nonzero probability, descending, ties by canonical order.
std::vector<std::pair<Atom, double>> exactRank(
    const TcpKnowledgeBase& kb, const GroundMln& g,
    InconsistencyPolicy policy = InconsistencyPolicy::Explode,
    std::size_t cap = kDefaultOracleCap);

// Helpers shared with tests: build the world whose truth bits are the binary
// digits of `index` (atom 0 most significant).
World worldFromIndex(std::uint64_t index, std::size_t n);

}  // namespace tcpel

#endif  // TCPEL_ORACLE_HPP
