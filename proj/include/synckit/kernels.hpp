#pragma once
#include <cstddef>
#include <cstdint>

// Low-level kernels with scalar reference implementations and SIMD variants
// selected once at startup (cpuid; override with SYNCKIT_KERNEL=scalar|avx2).
// Callers must not depend on which variant runs: all variants are bit-exact.

namespace synckit::kernels {

// out[i] = g[f[i]] for i in [0, n).  g must be readable up to g + n + 4
// (mapping buffers are padded; see Mapping).
using ComposeFn = void (*)(const uint8_t* f, const uint8_t* g, uint8_t* out, size_t n);

// out[i] = lut[in[i] & 0xff] | lut[256 + (in[i]>>8 & 0xff)]
//        | lut[512 + (in[i]>>16 & 0xff)] | lut[768 + (in[i]>>24)]
// Batched successor computation for subset-BFS frontiers (lut is 4*256 words).
using SubsetImage32Fn = void (*)(const uint32_t* in, uint32_t* out, size_t count,
                                 const uint32_t* lut);

struct Kernels {
  const char* name;
  ComposeFn compose;
  SubsetImage32Fn subset_image32;
};

const Kernels& active();               // runtime-selected
const Kernels& scalar();               // reference
const Kernels* by_name(const char* n); // nullptr if unknown/unsupported here

}  // namespace synckit::kernels
