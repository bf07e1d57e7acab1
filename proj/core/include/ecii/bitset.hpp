#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace ecii {

/// Fixed-width bitset sized at runtime. Individuals are mapped to dense
/// indices so that candidate extensions reduce to word-parallel and/or/andnot.
class DynamicBitset {
 public:
  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  bool test(std::size_t i) const {
    assert(i < bits_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void set(std::size_t i) {
    assert(i < bits_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void reset(std::size_t i) {
    assert(i < bits_);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void clear() { words_.assign(words_.size(), 0); }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }

  DynamicBitset& operator|=(const DynamicBitset& o) {
    assert(bits_ == o.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DynamicBitset& operator&=(const DynamicBitset& o) {
    assert(bits_ == o.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// this \ o
  DynamicBitset& subtract(const DynamicBitset& o) {
    assert(bits_ == o.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend DynamicBitset operator|(DynamicBitset a, const DynamicBitset& b) { return a |= b; }
  friend DynamicBitset operator&(DynamicBitset a, const DynamicBitset& b) { return a &= b; }

  bool operator==(const DynamicBitset& o) const { return bits_ == o.bits_ && words_ == o.words_; }

  bool intersects(const DynamicBitset& o) const {
    assert(bits_ == o.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool subset_of(const DynamicBitset& o) const {
    assert(bits_ == o.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  static std::size_t count_and(const DynamicBitset& a, const DynamicBitset& b) {
    assert(a.bits_ == b.bits_);
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      n += std::popcount(a.words_[i] & b.words_[i]);
    return n;
  }
  /// |a \ b|
  static std::size_t count_andnot(const DynamicBitset& a, const DynamicBitset& b) {
    assert(a.bits_ == b.bits_);
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      n += std::popcount(a.words_[i] & ~b.words_[i]);
    return n;
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        unsigned bit = std::countr_zero(w);
        fn(wi * 64 + bit);
        w &= w - 1;
      }
    }
  }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ecii
