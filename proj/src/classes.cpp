#include "tcpel/classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tcpel {

EquivalenceClass classFromMask(const Bits& mask, const GroundMln& g) {
  EquivalenceClass c;
  c.mask = mask;
  c.logScore = 0.0;
  c.det = Bits(g.n());
  for (std::size_t j = 0; j < g.formulas.size(); ++j) {
    if (mask.test(j)) {
      c.logScore += g.formulas[j].weight;
      c.det |= g.formulas[j].atomSet;
    } else {
      c.negClauses.push_back(g.formulas[j].atomSet);
    }
  }
  return c;
}

EquivalenceClass classOf(const World& w, const GroundMln& g) {
  Bits mask(g.formulas.size());
  for (std::size_t j = 0; j < g.formulas.size(); ++j)
    if (g.formulas[j].atomSet.isSubsetOf(w)) mask.set(j);
  return classFromMask(mask, g);
}

bool isEmpty(const EquivalenceClass& c) {
  for (const auto& neg : c.negClauses)
    if (neg.isSubsetOf(c.det)) return true;
  return false;
}

// --- member stream ------------------------------------------------------------

MemberStream::MemberStream(const EquivalenceClass& c, const GroundMln& g)
    : g_(&g), det_(c.det), negClauses_(c.negClauses) {
  for (std::size_t i = 0; i < g.n(); ++i)
    if (!det_.test(i)) undet_.push_back(i);
  if (undet_.size() > 63)
    throw RefusalError("class member enumeration refused: " +
                       std::to_string(undet_.size()) +
                       " undetermined atoms (limit 63)");
  cursor_ = std::uint64_t{1} << undet_.size();
}

std::optional<World> MemberStream::next() {
  const std::size_t u = undet_.size();
  while (cursor_ > 0) {
    std::uint64_t assignment = cursor_ - 1;
    --cursor_;
    World w = det_;
    // undet_[0] is the most significant bit: descending numeric order of the
    // full truth vector with atom 0 read first.
    for (std::size_t i = 0; i < u; ++i)
      if ((assignment >> (u - 1 - i)) & 1) w.set(undet_[i]);
    bool valid = true;
    for (const auto& neg : negClauses_)
      if (neg.isSubsetOf(w)) {
        valid = false;
        break;
      }
    if (valid) return w;
  }
  return std::nullopt;
}

// --- best-first enumeration ----------------------------------------------------

ClassEnumerator::ClassEnumerator(const GroundMln& g) : g_(&g) {
  const std::size_t k = g.formulas.size();
  bestMask_ = Bits(k);
  for (std::size_t j = 0; j < k; ++j)
    if (g.formulas[j].weight > 0) bestMask_.set(j);
  deviationOrder_.resize(k);
  for (std::size_t j = 0; j < k; ++j) deviationOrder_[j] = static_cast<int>(j);
  std::stable_sort(deviationOrder_.begin(), deviationOrder_.end(),
                   [&](int a, int b) {
                     return std::abs(g.formulas[a].weight) <
                            std::abs(g.formulas[b].weight);
                   });
  total_ = k >= 64 ? std::numeric_limits<std::uint64_t>::max()
                   : (std::uint64_t{1} << k);
  heap_.push(makeNode({}));
}

ClassEnumerator::Node ClassEnumerator::makeNode(std::vector<int> flips) const {
  Node n;
  n.mask = bestMask_;
  for (int f : flips) {
    std::size_t j = static_cast<std::size_t>(deviationOrder_[f]);
    n.mask.set(j, !n.mask.test(j));
  }
  n.score = 0.0;
  for (std::size_t j = 0; j < g_->formulas.size(); ++j)
    if (n.mask.test(j)) n.score += g_->formulas[j].weight;
  n.flips = std::move(flips);
  return n;
}

void ClassEnumerator::pushSuccessors(const Node& n) {
  const int k = static_cast<int>(g_->formulas.size());
  if (n.flips.empty()) {
    if (k > 0) heap_.push(makeNode({0}));
    return;
  }
  int last = n.flips.back();
  if (last + 1 >= k) return;
  std::vector<int> extend = n.flips;
  extend.push_back(last + 1);
  heap_.push(makeNode(std::move(extend)));
  std::vector<int> sift = n.flips;
  sift.back() = last + 1;
  heap_.push(makeNode(std::move(sift)));
}

std::optional<EquivalenceClass> ClassEnumerator::next() {
  if (!tieBuffer_.empty()) {
    EquivalenceClass c = std::move(tieBuffer_.front());
    tieBuffer_.pop_front();
    ++emitted_;
    return c;
  }
  if (emitted_ >= total_ || heap_.empty()) return std::nullopt;

  // Drain the whole score-tie group so ties can be ordered by mask. A node's
  // successors never score higher, so equal-score successors pushed here are
  // picked up by the same loop.
  const double groupScore = heap_.top().score;
  std::vector<Node> group;
  while (!heap_.empty() && heap_.top().score == groupScore) {
    Node n = heap_.top();
    heap_.pop();
    pushSuccessors(n);
    group.push_back(std::move(n));
  }
  std::sort(group.begin(), group.end(), [](const Node& a, const Node& b) {
    return Bits::lexCompare(a.mask, b.mask) > 0;
  });
  for (auto& n : group) tieBuffer_.push_back(classFromMask(n.mask, *g_));

  EquivalenceClass c = std::move(tieBuffer_.front());
  tieBuffer_.pop_front();
  ++emitted_;
  return c;
}

}  // namespace tcpel
