#include "spantree/kernels.hpp"

#include <bit>

#if defined(__x86_64__) || defined(__i386__)
#define SPANTREE_X86 1
#include <immintrin.h>
#else
#define SPANTREE_X86 0
#endif

namespace spantree::kernels {

#if SPANTREE_X86

// ============================================================================
// AVX2 kernels
//
// Popcounts use the nibble-LUT algorithm (Mula): per-byte counts via
// pshufb on the low and high nibbles, then horizontal sums with sad_epu8.
// Remainder words fall back to scalar code.
// ============================================================================

namespace {

__attribute__((target("avx2"))) inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2,
                                       3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                       2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  __m256i cnt8 = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                 _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt8, _mm256_setzero_si256());
}

__attribute__((target("avx2"))) inline std::size_t hsum_epi64(__m256i acc) {
  __m128i lo = _mm256_castsi256_si128(acc);
  __m128i hi = _mm256_extracti128_si256(acc, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::size_t>(_mm_extract_epi64(s, 0)) +
         static_cast<std::size_t>(_mm_extract_epi64(s, 1));
}

__attribute__((target("avx2"))) std::size_t v_popcount(const Word* a,
                                                       std::size_t nw) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(va));
  }
  std::size_t c = hsum_epi64(acc);
  for (; i < nw; ++i) c += std::popcount(a[i]);
  return c;
}

__attribute__((target("avx2"))) std::size_t v_and_popcount(const Word* a,
                                                           const Word* b,
                                                           std::size_t nw) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(va, vb)));
  }
  std::size_t c = hsum_epi64(acc);
  for (; i < nw; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

__attribute__((target("avx2"))) std::size_t v_or_popcount(const Word* a,
                                                          const Word* b,
                                                          std::size_t nw) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_or_si256(va, vb)));
  }
  std::size_t c = hsum_epi64(acc);
  for (; i < nw; ++i) c += std::popcount(a[i] | b[i]);
  return c;
}

__attribute__((target("avx2"))) std::size_t v_andnot_popcount(const Word* a,
                                                              const Word* b,
                                                              std::size_t nw) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // andnot computes ~first & second
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_andnot_si256(vb, va)));
  }
  std::size_t c = hsum_epi64(acc);
  for (; i < nw; ++i) c += std::popcount(a[i] & ~b[i]);
  return c;
}

__attribute__((target("avx2"))) void v_and_inplace(Word* a, const Word* b,
                                                   std::size_t nw) {
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i),
                        _mm256_and_si256(va, vb));
  }
  for (; i < nw; ++i) a[i] &= b[i];
}

__attribute__((target("avx2"))) void v_or_inplace(Word* a, const Word* b,
                                                  std::size_t nw) {
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i),
                        _mm256_or_si256(va, vb));
  }
  for (; i < nw; ++i) a[i] |= b[i];
}

__attribute__((target("avx2"))) void v_andnot_inplace(Word* a, const Word* b,
                                                      std::size_t nw) {
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i),
                        _mm256_andnot_si256(vb, va));
  }
  for (; i < nw; ++i) a[i] &= ~b[i];
}

__attribute__((target("avx2"))) bool v_or_covers(const Word* a, const Word* b,
                                                 const Word* mask,
                                                 std::size_t nw) {
  std::size_t i = 0;
  for (; i + 4 <= nw; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i vm = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i));
    // mask & ~(a|b) must be all-zero
    __m256i missing = _mm256_andnot_si256(_mm256_or_si256(va, vb), vm);
    if (!_mm256_testz_si256(missing, missing)) return false;
  }
  for (; i < nw; ++i) {
    if (((a[i] | b[i]) & mask[i]) != mask[i]) return false;
  }
  return true;
}

}  // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

const Ops& avx2_ops() {
  static const Ops ops = {
      "avx2",           v_popcount,    v_and_popcount, v_or_popcount,
      v_andnot_popcount, v_and_inplace, v_or_inplace,   v_andnot_inplace,
      v_or_covers,
  };
  return ops;
}

#else  // !SPANTREE_X86

bool avx2_supported() { return false; }

const Ops& avx2_ops() { return scalar_ops(); }

#endif

}  // namespace spantree::kernels
