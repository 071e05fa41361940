#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace qksys {

// Fixed-width bitset sized at construction. The hot paths (pairwise clique
// intersection, cap DFS forbidden masks, solver chosen sets) only need
// set/test/and_count, so this stays minimal.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

  void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  int size() const { return bits_; }

  std::int64_t count() const {
    std::int64_t c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  void or_with(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }

  static std::int64_t and_count(const Bitset& a, const Bitset& b) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < a.w_.size(); ++i) c += std::popcount(a.w_[i] & b.w_[i]);
    return c;
  }

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace qksys
