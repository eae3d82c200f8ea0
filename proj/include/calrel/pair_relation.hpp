#pragma once

// Subsets of V1^2 x V2^2, stored as one |V2| x |V2| slice per pair of V1.

#include <cstddef>
#include <vector>

#include "calrel/bitmatrix.hpp"

namespace calrel {

class PairRelation {
 public:
  PairRelation() = default;
  PairRelation(std::size_t left_size, std::size_t right_size);

  static PairRelation full(std::size_t left_size, std::size_t right_size);

  std::size_t left_size() const noexcept { return n1_; }
  std::size_t right_size() const noexcept { return n2_; }

  /// Bounds-checked membership; throws std::out_of_range.
  bool contains(std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) const;

  bool get(std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) const noexcept {
    return slices_[a1 * n1_ + b1].test(a2, b2);
  }
  void set(std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) noexcept {
    slices_[a1 * n1_ + b1].set(a2, b2);
  }
  void reset(std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) noexcept {
    slices_[a1 * n1_ + b1].reset(a2, b2);
  }

  /// The pairs (a2,b2) related to (a1,b1).
  const BitMatrix& slice(std::size_t a1, std::size_t b1) const { return slices_.at(a1 * n1_ + b1); }
  BitMatrix& slice(std::size_t a1, std::size_t b1) { return slices_.at(a1 * n1_ + b1); }

  /// {(a2,b2,a1,b1) | (a1,b1,a2,b2) in this}.
  PairRelation flipped() const;

  bool subset_of(const PairRelation& o) const;
  std::size_t count() const;
  bool operator==(const PairRelation& o) const;

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::vector<BitMatrix> slices_;
};

}  // namespace calrel
