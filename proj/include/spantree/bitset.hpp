#pragma once

// Dynamically sized bitset over the runtime-dispatched word kernels.
// Trailing bits past size() are kept zero at all times.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spantree/kernels.hpp"

namespace spantree {

class DynBitset {
 public:
  using Word = kernels::Word;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  DynBitset() = default;
  explicit DynBitset(std::size_t n_bits)
      : n_(n_bits), w_((n_bits + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  std::size_t word_count() const { return w_.size(); }
  const Word* words() const { return w_.data(); }

  void set(std::size_t i) { w_[i >> 6] |= Word{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(Word{1} << (i & 63)); }
  bool test(std::size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }

  void reset_all() { std::fill(w_.begin(), w_.end(), Word{0}); }
  void set_all() {
    std::fill(w_.begin(), w_.end(), ~Word{0});
    clear_tail();
  }

  std::size_t count() const {
    return kernels::active_ops().popcount(w_.data(), w_.size());
  }
  bool any() const {
    for (Word w : w_)
      if (w != 0) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t intersect_count(const DynBitset& o) const {
    return kernels::active_ops().and_popcount(w_.data(), o.w_.data(),
                                              w_.size());
  }
  std::size_t union_count(const DynBitset& o) const {
    return kernels::active_ops().or_popcount(w_.data(), o.w_.data(),
                                             w_.size());
  }
  // |this \ o|
  std::size_t minus_count(const DynBitset& o) const {
    return kernels::active_ops().andnot_popcount(w_.data(), o.w_.data(),
                                                 w_.size());
  }

  DynBitset& operator&=(const DynBitset& o) {
    kernels::active_ops().and_inplace(w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    kernels::active_ops().or_inplace(w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  // this &= ~o
  DynBitset& operator-=(const DynBitset& o) {
    kernels::active_ops().andnot_inplace(w_.data(), o.w_.data(), w_.size());
    return *this;
  }

  bool covers_with(const DynBitset& other, const DynBitset& mask) const {
    return kernels::active_ops().or_covers(w_.data(), other.w_.data(),
                                           mask.w_.data(), w_.size());
  }

  bool operator==(const DynBitset& o) const {
    return n_ == o.n_ && w_ == o.w_;
  }

  std::size_t find_first() const { return find_from_word(0); }
  // First set bit strictly after i, or npos.
  std::size_t find_next(std::size_t i) const {
    ++i;
    if (i >= n_) return npos;
    std::size_t wi = i >> 6;
    Word w = w_[wi] & (~Word{0} << (i & 63));
    if (w != 0) return (wi << 6) + std::countr_zero(w);
    return find_from_word(wi + 1);
  }

  // j-th set bit (0-based); throws if fewer.
  std::size_t nth_set(std::size_t j) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      Word w = w_[wi];
      std::size_t c = static_cast<std::size_t>(std::popcount(w));
      if (j < c) {
        while (j > 0) {
          w &= w - 1;
          --j;
        }
        return (wi << 6) + std::countr_zero(w);
      }
      j -= c;
    }
    throw std::out_of_range("DynBitset::nth_set: not enough set bits");
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      Word w = w_[wi];
      while (w != 0) {
        fn((wi << 6) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](std::size_t i) { v.push_back(static_cast<int>(i)); });
    return v;
  }

 private:
  void clear_tail() {
    if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (Word{1} << (n_ % 64)) - 1;
  }
  std::size_t find_from_word(std::size_t wi) const {
    for (; wi < w_.size(); ++wi) {
      if (w_[wi] != 0) return (wi << 6) + std::countr_zero(w_[wi]);
    }
    return npos;
  }

  std::size_t n_ = 0;
  std::vector<Word> w_;
};

}  // namespace spantree
