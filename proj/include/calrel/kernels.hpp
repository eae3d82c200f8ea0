#pragma once

// Word-level boolean kernels behind every bit-matrix operation.
//
// Each kernel has a scalar reference implementation and, on x86-64 builds,
// an AVX2 variant compiled in its own translation unit. The active table is
// chosen once at startup from CPUID; setting CALREL_ISA=scalar in the
// environment (or calling select()) forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace calrel::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct Table {
  Isa isa;
  // dst |= src, dst &= src, dst &= ~src over n words.
  void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  void (*andnot_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  // (a & ~b) != 0
  bool (*any_andnot)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  // (a & ~b & mask) != 0
  bool (*any_andnot_masked)(const std::uint64_t* a, const std::uint64_t* b, const std::uint64_t* mask,
                            std::size_t n);
  bool (*equal)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t n);
  // Boolean product of two n x n matrices whose rows fit in one word (n <= 64):
  // out[i] = OR of rhs[j] over the bits j set in lhs[i].
  void (*compose_narrow)(const std::uint64_t* lhs, const std::uint64_t* rhs, std::uint64_t* out,
                         std::size_t n);
};

const Table& scalar_table();

/// Null when the build has no AVX2 variant.
const Table* avx2_table();

/// True when an AVX2 table is compiled in and the CPU supports it.
bool avx2_available();

const Table& active();

/// Force a specific table; throws calrel::Error if it is unavailable.
void select(Isa isa);

// Span wrappers over the active table.

inline void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().or_into(dst.data(), src.data(), dst.size());
}
inline void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().and_into(dst.data(), src.data(), dst.size());
}
inline void andnot_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().andnot_into(dst.data(), src.data(), dst.size());
}
inline bool any_andnot(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return active().any_andnot(a.data(), b.data(), a.size());
}
inline bool equal(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return a.size() == b.size() && active().equal(a.data(), b.data(), a.size());
}
inline std::size_t popcount(std::span<const std::uint64_t> a) { return active().popcount(a.data(), a.size()); }

}  // namespace calrel::kernels
