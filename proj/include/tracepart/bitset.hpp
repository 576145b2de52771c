#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tracepart {

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

inline std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

inline std::size_t popcount_or(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] | b[i]));
  return n;
}

/// Fixed-size bit set used for use-case sets.
class DynamicBitset {
public:
  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t bits) : bits_(bits), words_(words_for(bits), 0) {}

  std::size_t size() const noexcept { return bits_; }
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool none() const { return count() == 0; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  DynamicBitset& operator|=(const DynamicBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (auto bits = words_[w]; bits != 0; bits &= bits - 1) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      }
    }
    return out;
  }

  bool operator==(const DynamicBitset&) const = default;

private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense square bit matrix, one bit row per class.
class BitMatrix {
public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), stride_(words_for(n)), words_(n * stride_, 0) {}

  std::size_t size() const noexcept { return n_; }
  void set(std::size_t r, std::size_t c) { words_[r * stride_ + c / 64] |= (std::uint64_t{1} << (c % 64)); }
  bool test(std::size_t r, std::size_t c) const {
    return (words_[r * stride_ + c / 64] >> (c % 64)) & 1U;
  }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return std::span<const std::uint64_t>(words_).subspan(r * stride_, stride_);
  }

private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tracepart
