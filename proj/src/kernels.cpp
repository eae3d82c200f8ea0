#include "calrel/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>

#include "calrel/error.hpp"

namespace calrel::kernels {

namespace {

void or_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

void and_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

void andnot_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= ~src[i];
}

bool any_andnot_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] & ~b[i]) return true;
  }
  return false;
}

bool any_andnot_masked_scalar(const std::uint64_t* a, const std::uint64_t* b, const std::uint64_t* mask,
                              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] & ~b[i] & mask[i]) return true;
  }
  return false;
}

bool equal_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

std::size_t popcount_scalar(const std::uint64_t* a, std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

void compose_narrow_scalar(const std::uint64_t* lhs, const std::uint64_t* rhs, std::uint64_t* out,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::uint64_t bits = lhs[i]; bits != 0; bits &= bits - 1) {
      acc |= rhs[std::countr_zero(bits)];
    }
    out[i] = acc;
  }
}

const Table kScalar{
    Isa::Scalar,     or_into_scalar, and_into_scalar, andnot_into_scalar,   any_andnot_scalar,
    any_andnot_masked_scalar, equal_scalar,   popcount_scalar, compose_narrow_scalar,
};

const Table* initial_table() {
  if (const char* env = std::getenv("CALREL_ISA")) {
    if (std::string(env) == "scalar") return &kScalar;
  }
  if (avx2_available()) return avx2_table();
  return &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

}  // namespace

#if !defined(CALREL_HAVE_AVX2)
const Table* avx2_table() { return nullptr; }
#endif

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const Table& scalar_table() { return kScalar; }

bool avx2_available() {
#if defined(CALREL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return avx2_table() != nullptr && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const Table& active() { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) {
  if (isa == Isa::Scalar) {
    current().store(&kScalar);
    return;
  }
  if (!avx2_available()) throw Error("AVX2 kernels are not available on this build or CPU");
  current().store(avx2_table());
}

}  // namespace calrel::kernels
