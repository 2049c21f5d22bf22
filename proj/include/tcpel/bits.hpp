#ifndef TCPEL_BITS_HPP
#define TCPEL_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tcpel {

// Dynamic fixed-length bit vector. Used for worlds (truth over ground atoms),
// formula atom sets, and class masks.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n, bool value = false)
      : size_(n), blocks_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (blocks_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool v = true) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      blocks_[i >> 6] |= m;
    else
      blocks_[i >> 6] &= ~m;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(__builtin_popcountll(b));
    return c;
  }

  bool none() const {
    for (auto b : blocks_)
      if (b) return false;
    return true;
  }

  bool isSubsetOf(const Bits& other) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~other.blocks_[i]) return false;
    return true;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }

  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }

  friend bool operator==(const Bits& a, const Bits& b) = default;

  // Lexicographic comparison reading bit 0 first. Returns <0 if a comes
  // after b in descending-lex order (i.e. a < b), 0 if equal, >0 if a > b.
  static int lexCompare(const Bits& a, const Bits& b) {
    std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i) {
      bool x = a.test(i), y = b.test(i);
      if (x != y) return x ? 1 : -1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
  }

  std::string toString() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  std::size_t hash() const {
    std::size_t h = size_;
    for (auto b : blocks_) h = h * 1099511628211ull + b;
    return h;
  }

 private:
  void trim() {
    if (size_ & 63) blocks_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace tcpel

#endif  // TCPEL_BITS_HPP
