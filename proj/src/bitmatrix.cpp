#include "calrel/bitmatrix.hpp"

#include "calrel/kernels.hpp"

namespace calrel {

namespace {

std::uint64_t tail_mask(std::size_t n) {
  const std::size_t r = n & 63;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

}  // namespace

BitMatrix::BitMatrix(std::size_t n) : n_(n), w_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::full(std::size_t n) {
  BitMatrix m(n);
  if (n == 0) return m;
  const std::uint64_t last = tail_mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = m.row(i);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) r[k] = ~std::uint64_t{0};
    r[r.size() - 1] = last;
  }
  return m;
}

BitMatrix& BitMatrix::operator|=(const BitMatrix& o) {
  kernels::or_into(bits_, o.bits_);
  return *this;
}

BitMatrix& BitMatrix::operator&=(const BitMatrix& o) {
  kernels::and_into(bits_, o.bits_);
  return *this;
}

BitMatrix& BitMatrix::operator-=(const BitMatrix& o) {
  kernels::andnot_into(bits_, o.bits_);
  return *this;
}

bool BitMatrix::operator==(const BitMatrix& o) const { return n_ == o.n_ && kernels::equal(bits_, o.bits_); }

bool BitMatrix::subset_of(const BitMatrix& o) const { return !kernels::any_andnot(bits_, o.bits_); }

bool BitMatrix::empty() const {
  for (auto w : bits_) {
    if (w) return false;
  }
  return true;
}

std::size_t BitMatrix::count() const { return kernels::popcount(bits_); }

std::vector<std::pair<std::size_t, std::size_t>> BitMatrix::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (test(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

BitMatrix complement(const BitMatrix& m) {
  BitMatrix out = BitMatrix::full(m.size());
  out -= m;
  return out;
}

BitMatrix transpose(const BitMatrix& m) {
  const std::size_t n = m.size();
  BitMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m.test(i, j)) out.set(j, i);
    }
  }
  return out;
}

BitMatrix compose(const BitMatrix& a, const BitMatrix& b) {
  const std::size_t n = a.size();
  BitMatrix out(n);
  if (n == 0) return out;
  if (a.words_per_row() == 1) {
    kernels::active().compose_narrow(a.words().data(), b.words().data(), out.words().data(), n);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto dst = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (a.test(i, j)) kernels::or_into(dst, b.row(j));
    }
  }
  return out;
}

BitMatrix left_residual(const BitMatrix& a, const BitMatrix& b) {
  const std::size_t n = a.size();
  BitMatrix out(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (!kernels::any_andnot(b.row(t), a.row(s))) out.set(s, t);
    }
  }
  return out;
}

BitMatrix right_residual(const BitMatrix& a, const BitMatrix& b) {
  const BitMatrix at = transpose(a);
  const BitMatrix bt = transpose(b);
  const std::size_t n = a.size();
  BitMatrix out(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (!kernels::any_andnot(at.row(s), bt.row(t))) out.set(s, t);
    }
  }
  return out;
}

BitMatrix proj1(const BitMatrix& m) {
  BitMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (auto w : m.row(i)) {
      if (w) {
        out.set(i, i);
        break;
      }
    }
  }
  return out;
}

BitMatrix proj2(const BitMatrix& m) {
  BitMatrix any(m.size());
  auto acc = any.row(0);
  BitMatrix out(m.size());
  if (m.size() == 0) return out;
  for (std::size_t i = 0; i < m.size(); ++i) kernels::or_into(acc, m.row(i));
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (any.test(0, j)) out.set(j, j);
  }
  return out;
}

BitMatrix coproj1(const BitMatrix& m) { return BitMatrix::identity(m.size()) - proj1(m); }

BitMatrix coproj2(const BitMatrix& m) { return BitMatrix::identity(m.size()) - proj2(m); }

BitMatrix square_closure(const BitMatrix& m, std::size_t rounds) {
  BitMatrix p = m | BitMatrix::identity(m.size());
  for (std::size_t r = 0; r < rounds; ++r) {
    BitMatrix next = compose(p, p);
    if (next == p) break;
    p = std::move(next);
  }
  return p;
}

BitMatrix star(const BitMatrix& m) {
  BitMatrix p = m | BitMatrix::identity(m.size());
  for (;;) {
    BitMatrix next = compose(p, p);
    if (next == p) return p;
    p = std::move(next);
  }
}

}  // namespace calrel
