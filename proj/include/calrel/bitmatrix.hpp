#pragma once

// Square boolean matrices over a dense node index, one bit per ordered pair.
// Rows are padded to whole 64-bit words; padding bits are always zero.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace calrel {

class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n);

  static BitMatrix identity(std::size_t n);
  static BitMatrix full(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return w_; }

  bool test(std::size_t i, std::size_t j) const noexcept { return (bits_[i * w_ + (j >> 6)] >> (j & 63)) & 1U; }
  void set(std::size_t i, std::size_t j) noexcept { bits_[i * w_ + (j >> 6)] |= std::uint64_t{1} << (j & 63); }
  void reset(std::size_t i, std::size_t j) noexcept { bits_[i * w_ + (j >> 6)] &= ~(std::uint64_t{1} << (j & 63)); }

  std::span<std::uint64_t> row(std::size_t i) noexcept { return {bits_.data() + i * w_, w_}; }
  std::span<const std::uint64_t> row(std::size_t i) const noexcept { return {bits_.data() + i * w_, w_}; }
  std::span<const std::uint64_t> words() const noexcept { return bits_; }
  std::span<std::uint64_t> words() noexcept { return bits_; }

  BitMatrix& operator|=(const BitMatrix& o);
  BitMatrix& operator&=(const BitMatrix& o);
  BitMatrix& operator-=(const BitMatrix& o);
  friend BitMatrix operator|(BitMatrix a, const BitMatrix& b) { return a |= b; }
  friend BitMatrix operator&(BitMatrix a, const BitMatrix& b) { return a &= b; }
  friend BitMatrix operator-(BitMatrix a, const BitMatrix& b) { return a -= b; }

  bool operator==(const BitMatrix& o) const;
  bool subset_of(const BitMatrix& o) const;
  bool empty() const;
  std::size_t count() const;

  /// Row-major list of set pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

 private:
  std::size_t n_ = 0;
  std::size_t w_ = 0;
  std::vector<std::uint64_t> bits_;
};

using PairSet = BitMatrix;

BitMatrix complement(const BitMatrix& m);
BitMatrix transpose(const BitMatrix& m);
BitMatrix compose(const BitMatrix& a, const BitMatrix& b);
// (a / b)(s,t) iff every v with (t,v) in b has (s,v) in a.
BitMatrix left_residual(const BitMatrix& a, const BitMatrix& b);
// (a \ b)(s,t) iff every v with (v,s) in a has (v,t) in b.
BitMatrix right_residual(const BitMatrix& a, const BitMatrix& b);
BitMatrix proj1(const BitMatrix& m);
BitMatrix proj2(const BitMatrix& m);
BitMatrix coproj1(const BitMatrix& m);
BitMatrix coproj2(const BitMatrix& m);
// Reflexive closure followed by `rounds` boolean squarings.
BitMatrix square_closure(const BitMatrix& m, std::size_t rounds);
// Reflexive-transitive closure.
BitMatrix star(const BitMatrix& m);

}  // namespace calrel
