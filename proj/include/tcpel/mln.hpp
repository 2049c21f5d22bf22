#ifndef TCPEL_MLN_HPP
#define TCPEL_MLN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcpel/bits.hpp"
#include "tcpel/kb.hpp"

namespace tcpel {

// Thrown when a configured size cap would be exceeded (grounding size,
// oracle world count). CLI maps it to exit code 2.
struct RefusalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A world is a total truth assignment over the ground atoms, bit i being the
// truth value of GroundMln::atoms[i].
using World = Bits;

struct GroundMln {
  struct GFormula {
    Bits atomSet;      // indices of the formula's ground atoms
    double weight;
    int programIndex;  // which program formula this grounding came from
  };

  std::vector<Atom> atoms;  // canonical order: pred lexicographic, then args
  std::map<Atom, int> atomIndex;
  std::vector<GFormula> formulas;

  std::size_t n() const { return atoms.size(); }
  std::optional<int> indexOf(const Atom& a) const {
    auto it = atomIndex.find(a);
    if (it == atomIndex.end()) return std::nullopt;
    return it->second;
  }
};

inline constexpr std::size_t kDefaultGroundingCap = 2'000'000;

// Number of ground formula instances the program would produce, computed
// without materializing them.
std::size_t projectedGroundingSize(const MlnProgram& m);

// All scoped substitutions applied to every formula. Duplicate groundings of
// the same program formula are merged; identical atom sets from different
// program formulas stay separate.
GroundMln ground(const MlnProgram& m, std::size_t cap = kDefaultGroundingCap);

// Indices of formulas whose every atom is true in w.
std::set<int> satisfiedFormulas(const World& w, const GroundMln& g);

// Sum of weights of satisfied formulas: the log of the unnormalized score.
double worldLogScore(const World& w, const GroundMln& g);

enum class Ordering { Less, Equal, Greater };

struct WorldComparison {
  Ordering ordering;
  double logRatio;  // worldLogScore(w1) - worldLogScore(w2)
};

// Probability ordering of two worlds; Z cancels so only numerators compare.
WorldComparison compareWorlds(const World& w1, const World& w2, const GroundMln& g);

}  // namespace tcpel

#endif  // TCPEL_MLN_HPP
