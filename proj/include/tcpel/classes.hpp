#ifndef TCPEL_CLASSES_HPP
#define TCPEL_CLASSES_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <vector>

#include "tcpel/bits.hpp"
#include "tcpel/mln.hpp"

namespace tcpel {

// One ~_M equivalence class: the set of worlds satisfying exactly the
// mask-true formulas.
struct EquivalenceClass {
  Bits mask;        // bit j = formula j satisfied
  double logScore;  // sum of weights of mask-true formulas
  Bits det;         // atoms forced true (union of mask-true formulas' atoms)
  std::vector<Bits> negClauses;  // atom sets of mask-false formulas
};

EquivalenceClass classFromMask(const Bits& mask, const GroundMln& g);
EquivalenceClass classOf(const World& w, const GroundMln& g);

// A class is empty iff some mask-false formula is forced true by det.
bool isEmpty(const EquivalenceClass& c);

// Streams the members of a class, each exactly once, in descending numeric
// order of the truth bit vector (atom 0 most significant). An empty class
// yields nothing.
class MemberStream {
 public:
  MemberStream(const EquivalenceClass& c, const GroundMln& g);
  std::optional<World> next();

 private:
  const GroundMln* g_;
  Bits det_;
  std::vector<Bits> negClauses_;
  std::vector<std::size_t> undet_;  // undetermined atom indices, ascending
  std::uint64_t cursor_ = 0;        // next assignment + 1; 0 = exhausted
};

// Best-first enumeration of all 2^|formulas| class masks in non-increasing
// logScore order, ties broken by descending lexicographic mask. Lazy
// successor generation over the formula-inclusion lattice; memory is
// proportional to the frontier.
class ClassEnumerator {
 public:
  explicit ClassEnumerator(const GroundMln& g);

  // The i-th call returns the i-th mask in the global order; may return
  // empty classes. nullopt once all 2^|formulas| masks were emitted.
  std::optional<EquivalenceClass> next();

  std::uint64_t emitted() const { return emitted_; }

 private:
  struct Node {
    double score;
    Bits mask;
    std::vector<int> flips;  // flipped positions in deviation order, ascending
  };
  struct NodeCmp {
    bool operator()(const Node& a, const Node& b) const {
      if (a.score != b.score) return a.score < b.score;       // max-heap on score
      return Bits::lexCompare(a.mask, b.mask) < 0;            // then desc-lex mask
    }
  };

  Node makeNode(std::vector<int> flips) const;
  void pushSuccessors(const Node& n);

  const GroundMln* g_;
  Bits bestMask_;
  std::vector<int> deviationOrder_;  // formula indices sorted by |weight| asc
  std::priority_queue<Node, std::vector<Node>, NodeCmp> heap_;
  std::deque<EquivalenceClass> tieBuffer_;
  std::uint64_t emitted_ = 0;
  std::uint64_t total_ = 0;  // 2^k, saturated at uint64 max for k >= 64
};

}  // namespace tcpel

#endif  // TCPEL_CLASSES_HPP
