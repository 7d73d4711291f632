#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace lifthull {

// Fixed-universe dynamic bitset for vertex index sets. Words beyond nbits
// stay zero, so equality and hashing are word-wise.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(size_t nbits)
      : n_(nbits), w_((nbits + 63) / 64, 0) {}

  static DynBitset of(size_t nbits, const std::vector<int>& idx) {
    DynBitset b(nbits);
    for (int i : idx) b.set(i);
    return b;
  }

  size_t universe() const { return n_; }
  void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  size_t count() const {
    size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool subset_of(const DynBitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  DynBitset operator&(const DynBitset& o) const {
    DynBitset r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }

  DynBitset operator|(const DynBitset& o) const {
    DynBitset r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }

  bool operator==(const DynBitset& o) const { return w_ == o.w_; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t w = w_[wi];
      while (w) {
        out.push_back(int(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  struct Hash {
    size_t operator()(const DynBitset& b) const {
      uint64_t h = 0xcbf29ce484222325ULL;
      for (uint64_t w : b.w_) {
        h ^= w;
        h *= 0x100000001b3ULL;
      }
      return size_t(h);
    }
  };

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
  friend struct Hash;
};

inline uint64_t fnv1a64(const std::vector<int>& data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (int v : data) {
    for (int byte = 0; byte < 4; ++byte) {
      h ^= uint64_t((v >> (8 * byte)) & 0xff);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace lifthull
