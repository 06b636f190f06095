#include "spantree/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

namespace spantree::kernels {

// ============================================================================
// Scalar reference kernels
// ============================================================================

namespace {

std::size_t sc_popcount(const Word* a, std::size_t nw) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nw; ++i) c += std::popcount(a[i]);
  return c;
}

std::size_t sc_and_popcount(const Word* a, const Word* b, std::size_t nw) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nw; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

std::size_t sc_or_popcount(const Word* a, const Word* b, std::size_t nw) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nw; ++i) c += std::popcount(a[i] | b[i]);
  return c;
}

std::size_t sc_andnot_popcount(const Word* a, const Word* b, std::size_t nw) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nw; ++i) c += std::popcount(a[i] & ~b[i]);
  return c;
}

void sc_and_inplace(Word* a, const Word* b, std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i) a[i] &= b[i];
}

void sc_or_inplace(Word* a, const Word* b, std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i) a[i] |= b[i];
}

void sc_andnot_inplace(Word* a, const Word* b, std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i) a[i] &= ~b[i];
}

bool sc_or_covers(const Word* a, const Word* b, const Word* mask,
                  std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i) {
    if (((a[i] | b[i]) & mask[i]) != mask[i]) return false;
  }
  return true;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",         sc_popcount,    sc_and_popcount, sc_or_popcount,
      sc_andnot_popcount, sc_and_inplace, sc_or_inplace,   sc_andnot_inplace,
      sc_or_covers,
  };
  return ops;
}

// ============================================================================
// Runtime selection
// ============================================================================

namespace {

const Ops& select_ops() {
  const char* env = std::getenv("SPANTREE_KERNEL");
  if (env != nullptr) {
    std::string want(env);
    if (want == "scalar") return scalar_ops();
    if (want == "avx2") {
      if (avx2_supported()) return avx2_ops();
      std::cerr << "spantree: SPANTREE_KERNEL=avx2 requested but AVX2 is "
                   "unavailable; using scalar kernels\n";
      return scalar_ops();
    }
    std::cerr << "spantree: unknown SPANTREE_KERNEL '" << want
              << "'; using autodetect\n";
  }
  return avx2_supported() ? avx2_ops() : scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& ops = select_ops();
  return ops;
}

}  // namespace spantree::kernels
