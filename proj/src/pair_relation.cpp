#include "calrel/pair_relation.hpp"

#include <stdexcept>

namespace calrel {

PairRelation::PairRelation(std::size_t left_size, std::size_t right_size)
    : n1_(left_size), n2_(right_size), slices_(left_size * left_size, BitMatrix(right_size)) {}

PairRelation PairRelation::full(std::size_t left_size, std::size_t right_size) {
  PairRelation z(left_size, right_size);
  for (auto& s : z.slices_) s = BitMatrix::full(right_size);
  return z;
}

bool PairRelation::contains(std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) const {
  if (a1 >= n1_ || b1 >= n1_ || a2 >= n2_ || b2 >= n2_) throw std::out_of_range("pair relation index out of range");
  return get(a1, b1, a2, b2);
}

PairRelation PairRelation::flipped() const {
  PairRelation out(n2_, n1_);
  for (std::size_t a1 = 0; a1 < n1_; ++a1) {
    for (std::size_t b1 = 0; b1 < n1_; ++b1) {
      for (auto [a2, b2] : slices_[a1 * n1_ + b1].pairs()) out.set(a2, b2, a1, b1);
    }
  }
  return out;
}

bool PairRelation::subset_of(const PairRelation& o) const {
  if (n1_ != o.n1_ || n2_ != o.n2_) return false;
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    if (!slices_[i].subset_of(o.slices_[i])) return false;
  }
  return true;
}

std::size_t PairRelation::count() const {
  std::size_t c = 0;
  for (const auto& s : slices_) c += s.count();
  return c;
}

bool PairRelation::operator==(const PairRelation& o) const {
  return n1_ == o.n1_ && n2_ == o.n2_ && slices_ == o.slices_;
}

}  // namespace calrel
