#pragma once

// Word-level set-algebra kernels behind DynBitset.
//
// Every operation exists as a scalar reference implementation and, on x86-64,
// as an AVX2 variant. The active implementation is selected once at startup:
// the SPANTREE_KERNEL environment variable ("scalar" or "avx2") overrides the
// CPU-feature autodetect. Scalar and AVX2 variants are equivalence-tested
// against each other in tests/test_kernels.cpp.

#include <cstddef>
#include <cstdint>

namespace spantree::kernels {

using Word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

struct Ops {
  const char* name;

  std::size_t (*popcount)(const Word* a, std::size_t nw);
  // |a & b|
  std::size_t (*and_popcount)(const Word* a, const Word* b, std::size_t nw);
  // |a | b|
  std::size_t (*or_popcount)(const Word* a, const Word* b, std::size_t nw);
  // |a & ~b|
  std::size_t (*andnot_popcount)(const Word* a, const Word* b, std::size_t nw);

  void (*and_inplace)(Word* a, const Word* b, std::size_t nw);
  void (*or_inplace)(Word* a, const Word* b, std::size_t nw);
  // a &= ~b
  void (*andnot_inplace)(Word* a, const Word* b, std::size_t nw);

  // (a | b) superset of mask, with early exit
  bool (*or_covers)(const Word* a, const Word* b, const Word* mask,
                    std::size_t nw);
};

const Ops& scalar_ops();

bool avx2_supported();
// Only valid to call when avx2_supported(); the function pointers execute
// AVX2 instructions unconditionally.
const Ops& avx2_ops();

// Selected implementation (env override, then CPU detect). Cached.
const Ops& active_ops();

}  // namespace spantree::kernels
