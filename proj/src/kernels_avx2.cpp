// AVX2 variants of the word kernels. Built with -mavx2 -mpopcnt; only
// reached through avx2_table() after the CPUID check in kernels.cpp.

#include <immintrin.h>

#include <bit>

#include "calrel/kernels.hpp"

namespace calrel::kernels {

namespace {

inline __m256i load(const std::uint64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::uint64_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void or_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] |= src[i];
}

void and_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

void andnot_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(a, b) computes ~a & b.
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_andnot_si256(load(src + i), load(dst + i)));
  for (; i < n; ++i) dst[i] &= ~src[i];
}

bool any_andnot_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_andnot_si256(load(b + i), load(a + i));
    if (!_mm256_testz_si256(v, v)) return true;
  }
  for (; i < n; ++i) {
    if (a[i] & ~b[i]) return true;
  }
  return false;
}

bool any_andnot_masked_avx2(const std::uint64_t* a, const std::uint64_t* b, const std::uint64_t* mask,
                            std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_andnot_si256(load(b + i), load(a + i));
    if (!_mm256_testz_si256(v, load(mask + i))) return true;
  }
  for (; i < n; ++i) {
    if (a[i] & ~b[i] & mask[i]) return true;
  }
  return false;
}

bool equal_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(v, v)) return false;
  }
  for (; i < n; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

std::size_t popcount_avx2(const std::uint64_t* a, std::size_t n) {
  // No vector popcount in AVX2 proper; four independent accumulators keep
  // the scalar popcnt units busy.
  std::size_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    c0 += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
    c1 += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 1]));
    c2 += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 2]));
    c3 += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 3]));
  }
  for (; i < n; ++i) c0 += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return c0 + c1 + c2 + c3;
}

// Four output rows at a time: for every column j, broadcast rhs[j] and keep
// it in the lanes whose lhs row has bit j set.
void compose_narrow_avx2(const std::uint64_t* lhs, const std::uint64_t* rhs, std::uint64_t* out,
                         std::size_t n) {
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i rows = load(lhs + i);
    __m256i acc = zero;
    for (std::size_t j = 0; j < n; ++j) {
      const __m256i shifted = _mm256_srlv_epi64(rows, _mm256_set1_epi64x(static_cast<long long>(j)));
      const __m256i sel = _mm256_sub_epi64(zero, _mm256_and_si256(shifted, one));
      acc = _mm256_or_si256(acc, _mm256_and_si256(sel, _mm256_set1_epi64x(static_cast<long long>(rhs[j]))));
    }
    store(out + i, acc);
  }
  for (; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::uint64_t bits = lhs[i]; bits != 0; bits &= bits - 1) acc |= rhs[std::countr_zero(bits)];
    out[i] = acc;
  }
}

const Table kAvx2{
    Isa::Avx2,       or_into_avx2, and_into_avx2,  andnot_into_avx2,   any_andnot_avx2,
    any_andnot_masked_avx2, equal_avx2,   popcount_avx2, compose_narrow_avx2,
};

}  // namespace

const Table* avx2_table() { return &kAvx2; }

}  // namespace calrel::kernels
