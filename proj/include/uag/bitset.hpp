#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace uag {

/// Fixed-width dynamic bitset. Used for point sets (bit i = point i) and for
/// relations on the free algebra (bit f*k+g = pair (f,g)).
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  static BitSet full(std::size_t bits) {
    BitSet out(bits);
    for (auto& w : out.words_) w = ~std::uint64_t{0};
    out.trim();
    return out;
  }

  std::size_t size() const noexcept { return bits_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept {
    if (value)
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void reset(std::size_t i) noexcept { set(i, false); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }

  BitSet& operator|=(const BitSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  BitSet& operator&=(const BitSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// this \ o
  BitSet& subtract(const BitSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend BitSet operator|(BitSet a, const BitSet& b) noexcept { return a |= b; }
  friend BitSet operator&(BitSet a, const BitSet& b) noexcept { return a &= b; }

  BitSet complement() const {
    BitSet out(*this);
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

  bool is_subset_of(const BitSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool is_proper_subset_of(const BitSet& o) const noexcept { return is_subset_of(o) && *this != o; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(wi * 64 + bit);
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = bits_ * 0x9e3779b97f4a7c15ull;
    for (auto w : words_) h = (h ^ static_cast<std::size_t>(w)) * 0x100000001b3ull + (h >> 29);
    return h;
  }

  friend bool operator==(const BitSet&, const BitSet&) = default;

 private:
  void trim() noexcept {
    if (bits_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
  }

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Canonical order used for every deterministic listing: fewer members first,
/// then the sorted member lists compared lexicographically.
inline bool canonical_less(const BitSet& a, const BitSet& b) {
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  const auto ma = a.members();
  const auto mb = b.members();
  return ma < mb;
}

struct BitSetHash {
  std::size_t operator()(const BitSet& b) const noexcept { return b.hash(); }
};

}  // namespace uag
