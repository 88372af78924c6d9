#include "synckit/kernels.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#define SYNCKIT_X86 1
#include <immintrin.h>
#endif

namespace synckit::kernels {
namespace {

void compose_scalar(const uint8_t* f, const uint8_t* g, uint8_t* out, size_t n) {
  for (size_t i = 0; i < n; ++i) out[i] = g[f[i]];
}

void subset_image32_scalar(const uint32_t* in, uint32_t* out, size_t count,
                           const uint32_t* lut) {
  for (size_t i = 0; i < count; ++i) {
    uint32_t s = in[i];
    out[i] = lut[s & 0xff] | lut[256 + ((s >> 8) & 0xff)] |
             lut[512 + ((s >> 16) & 0xff)] | lut[768 + (s >> 24)];
  }
}

#ifdef SYNCKIT_X86

__attribute__((target("avx2"))) void compose_avx2(const uint8_t* f, const uint8_t* g,
                                                  uint8_t* out, size_t n) {
  if (n <= 16) {
    // whole table fits one 128-bit register
    uint8_t gb[16] = {0}, fb[16] = {0}, ob[16];
    memcpy(gb, g, n);
    memcpy(fb, f, n);
    __m128i r = _mm_shuffle_epi8(_mm_loadu_si128((const __m128i*)gb),
                                 _mm_loadu_si128((const __m128i*)fb));
    _mm_storeu_si128((__m128i*)ob, r);
    memcpy(out, ob, n);
    return;
  }
  if (n <= 32) {
    // two-halves table lookup; pshufb zeroes lanes whose index has bit 7 set
    uint8_t gb[32] = {0}, fb[32] = {0}, ob[32];
    memcpy(gb, g, n);
    memcpy(fb, f, n);
    __m256i lo = _mm256_broadcastsi128_si256(_mm_loadu_si128((const __m128i*)gb));
    __m256i hi = _mm256_broadcastsi128_si256(_mm_loadu_si128((const __m128i*)(gb + 16)));
    __m256i idx = _mm256_loadu_si256((const __m256i*)fb);
    __m256i in_hi = _mm256_cmpgt_epi8(idx, _mm256_set1_epi8(15));
    __m256i r = _mm256_or_si256(
        _mm256_shuffle_epi8(lo, _mm256_or_si256(idx, in_hi)),
        _mm256_shuffle_epi8(hi, _mm256_sub_epi8(idx, _mm256_set1_epi8(16))));
    _mm256_storeu_si256((__m256i*)ob, r);
    memcpy(out, ob, n);
    return;
  }
  // general case: widen indices, gather dwords from g (hence the padding
  // requirement), keep low bytes
  const __m256i mask = _mm256_set1_epi32(0xff);
  const __m256i pack = _mm256_setr_epi8(0, 4, 8, 12, -1, -1, -1, -1, -1, -1, -1, -1,
                                        -1, -1, -1, -1, 0, 4, 8, 12, -1, -1, -1, -1,
                                        -1, -1, -1, -1, -1, -1, -1, -1);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i idx = _mm256_cvtepu8_epi32(_mm_loadl_epi64((const __m128i*)(f + i)));
    __m256i v = _mm256_and_si256(_mm256_i32gather_epi32((const int*)g, idx, 1), mask);
    __m256i sh = _mm256_shuffle_epi8(v, pack);
    uint32_t a = (uint32_t)_mm_cvtsi128_si32(_mm256_castsi256_si128(sh));
    uint32_t b = (uint32_t)_mm_cvtsi128_si32(_mm256_extracti128_si256(sh, 1));
    memcpy(out + i, &a, 4);
    memcpy(out + i + 4, &b, 4);
  }
  for (; i < n; ++i) out[i] = g[f[i]];
}

__attribute__((target("avx2"))) void subset_image32_avx2(const uint32_t* in,
                                                         uint32_t* out, size_t count,
                                                         const uint32_t* lut) {
  const int* t0 = (const int*)lut;
  const __m256i mask = _mm256_set1_epi32(0xff);
  size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    __m256i s = _mm256_loadu_si256((const __m256i*)(in + i));
    __m256i r = _mm256_i32gather_epi32(t0, _mm256_and_si256(s, mask), 4);
    r = _mm256_or_si256(r, _mm256_i32gather_epi32(
                               t0 + 256,
                               _mm256_and_si256(_mm256_srli_epi32(s, 8), mask), 4));
    r = _mm256_or_si256(r, _mm256_i32gather_epi32(
                               t0 + 512,
                               _mm256_and_si256(_mm256_srli_epi32(s, 16), mask), 4));
    r = _mm256_or_si256(
        r, _mm256_i32gather_epi32(t0 + 768, _mm256_srli_epi32(s, 24), 4));
    _mm256_storeu_si256((__m256i*)(out + i), r);
  }
  if (i < count) subset_image32_scalar(in + i, out + i, count - i, lut);
}

#endif  // SYNCKIT_X86

const Kernels k_scalar{"scalar", compose_scalar, subset_image32_scalar};
#ifdef SYNCKIT_X86
const Kernels k_avx2{"avx2", compose_avx2, subset_image32_avx2};
#endif

}  // namespace

const Kernels& scalar() { return k_scalar; }

const Kernels* by_name(const char* n) {
  if (strcmp(n, "scalar") == 0) return &k_scalar;
#ifdef SYNCKIT_X86
  if (strcmp(n, "avx2") == 0 && __builtin_cpu_supports("avx2")) return &k_avx2;
#endif
  return nullptr;
}

const Kernels& active() {
  static const Kernels* sel = [] {
    if (const char* env = std::getenv("SYNCKIT_KERNEL"))
      if (const Kernels* k = by_name(env)) return k;
#ifdef SYNCKIT_X86
    if (__builtin_cpu_supports("avx2")) return &k_avx2;
#endif
    return &k_scalar;
  }();
  return *sel;
}

}  // namespace synckit::kernels
