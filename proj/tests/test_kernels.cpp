#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "synckit/kernels.hpp"

using namespace synckit::kernels;

TEST_CASE("kernel registry") {
  CHECK(by_name("scalar") == &scalar());
  CHECK(by_name("nope") == nullptr);
  CHECK(active().compose != nullptr);
  CHECK(active().subset_image32 != nullptr);
  CHECK(std::strcmp(scalar().name, "scalar") == 0);
}

static void check_compose(const Kernels& k) {
  std::mt19937 rng(123);
  for (size_t n : {1u, 2u, 3u, 7u, 8u, 15u, 16u, 17u, 31u, 32u, 33u, 47u, 64u,
                   100u, 255u, 256u}) {
    for (int it = 0; it < 40; ++it) {
      std::vector<uint8_t> f(n), g(n + 8, 0), want(n), got(n, 0xEE);
      for (auto& x : f) x = uint8_t(rng() % n);
      for (size_t i = 0; i < n; ++i) g[i] = uint8_t(rng() % n);
      for (size_t i = 0; i < n; ++i) want[i] = g[f[i]];
      k.compose(f.data(), g.data(), got.data(), n);
      REQUIRE(got == want);
    }
  }
}

static void check_subset(const Kernels& k) {
  std::mt19937 rng(321);
  std::vector<uint32_t> lut(4 * 256);
  for (auto& x : lut) x = rng();
  for (size_t count : {0u, 1u, 2u, 7u, 8u, 9u, 63u, 64u, 200u, 1000u}) {
    std::vector<uint32_t> in(count), want(count), got(count, 0xDEADBEEF);
    for (auto& x : in) x = rng();
    for (size_t i = 0; i < count; ++i)
      want[i] = lut[in[i] & 0xff] | lut[256 + ((in[i] >> 8) & 0xff)] |
                lut[512 + ((in[i] >> 16) & 0xff)] | lut[768 + (in[i] >> 24)];
    k.subset_image32(in.data(), got.data(), count, lut.data());
    REQUIRE(got == want);
  }
}

TEST_CASE("scalar kernels match the reference formulas") {
  check_compose(scalar());
  check_subset(scalar());
}

TEST_CASE("active kernels are bit-exact against scalar") {
  check_compose(active());
  check_subset(active());
}

TEST_CASE("every registered variant is bit-exact") {
  for (const char* name : {"scalar", "avx2"}) {
    const Kernels* k = by_name(name);
    if (!k) continue;  // variant not supported on this host
    check_compose(*k);
    check_subset(*k);
  }
}
