#include "synckit/exact.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "synckit/kernels.hpp"

namespace synckit {
namespace {

// Per-letter successor tables in the subset_image32 kernel layout:
// lut[a * 1024 + 256 * chunk + byte].
std::vector<uint32_t> letter_luts(const Dfa& d) {
  std::vector<uint32_t> lut(size_t(d.q) * 1024, 0);
  for (int a = 0; a < d.q; ++a)
    for (int c = 0; c < 4; ++c)
      for (int b = 0; b < 256; ++b) {
        uint32_t img = 0;
        for (int k = 0; k < 8; ++k) {
          int s = 8 * c + k;
          if (((b >> k) & 1) && s < d.n) img |= 1u << d.letter[a][s];
        }
        lut[size_t(a) * 1024 + 256 * c + b] = img;
      }
  return lut;
}

uint32_t image32(const uint32_t* t, uint32_t s) {
  return t[s & 0xff] | t[256 + ((s >> 8) & 0xff)] | t[512 + ((s >> 16) & 0xff)] |
         t[768 + (s >> 24)];
}

constexpr int kDenseMaxStates = 24;  // 2^n parent array is fine up to here
constexpr size_t kBlock = 8192;

// Parent pointers in a dense 2^n array; word rebuilt by walking them.
ExactResult exact_dense(const Dfa& d, const std::vector<uint32_t>& lut) {
  const int n = d.n;
  const uint32_t full = (1u << n) - 1;
  std::vector<int32_t> parent(size_t(1) << n, -1);
  std::vector<uint8_t> pletter(size_t(1) << n, 0);
  std::vector<uint32_t> cur{full}, next, buf(kBlock);
  parent[full] = int32_t(full);
  ExactResult r;
  r.visited = 1;
  uint64_t depth = 0;
  uint32_t found = 0;
  bool have = false;
  while (!have && !cur.empty()) {
    ++depth;
    next.clear();
    for (int a = 0; a < d.q; ++a) {
      const uint32_t* t = lut.data() + size_t(a) * 1024;
      for (size_t off = 0; off < cur.size(); off += kBlock) {
        size_t cnt = std::min(kBlock, cur.size() - off);
        kernels::active().subset_image32(cur.data() + off, buf.data(), cnt, t);
        for (size_t i = 0; i < cnt; ++i) {
          uint32_t img = buf[i];
          if (parent[img] >= 0) continue;
          parent[img] = int32_t(cur[off + i]);
          pletter[img] = uint8_t(a);
          ++r.visited;
          if ((img & (img - 1)) == 0) {
            if (!have || img < found) found = img;
            have = true;
          } else {
            next.push_back(img);
          }
        }
      }
    }
    cur.swap(next);
  }
  if (!have) return r;
  r.synchronizing = true;
  r.length = depth;
  for (uint32_t s = found; s != full; s = uint32_t(parent[s]))
    r.word.push_back(Letter(pletter[s]));
  std::reverse(r.word.begin(), r.word.end());
  return r;
}

// Bitmap for visited, kept frontiers for reconstruction; used when a dense
// parent array would be too large.
ExactResult exact_layered(const Dfa& d, const std::vector<uint32_t>& lut) {
  const int n = d.n;
  const uint32_t full = (1u << n) - 1;
  std::vector<uint64_t> seen(size_t(1) << (n - 6), 0);
  auto mark = [&](uint32_t v) {  // true if freshly marked
    uint64_t& w = seen[v >> 6];
    uint64_t bit = 1ull << (v & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  };
  std::vector<std::vector<uint32_t>> layers;
  layers.push_back({full});
  mark(full);
  ExactResult r;
  r.visited = 1;
  std::vector<uint32_t> buf(kBlock);
  uint64_t depth = 0;
  uint32_t found = 0;
  bool have = false;
  while (!have) {
    ++depth;
    const std::vector<uint32_t>& cur = layers.back();
    std::vector<uint32_t> next;
    for (int a = 0; a < d.q; ++a) {
      const uint32_t* t = lut.data() + size_t(a) * 1024;
      for (size_t off = 0; off < cur.size(); off += kBlock) {
        size_t cnt = std::min(kBlock, cur.size() - off);
        kernels::active().subset_image32(cur.data() + off, buf.data(), cnt, t);
        for (size_t i = 0; i < cnt; ++i) {
          uint32_t img = buf[i];
          if (!mark(img)) continue;
          ++r.visited;
          if ((img & (img - 1)) == 0) {
            if (!have || img < found) found = img;
            have = true;
          } else {
            next.push_back(img);
          }
        }
      }
    }
    if (have) break;
    if (next.empty()) return r;  // image lattice exhausted, no singleton
    layers.push_back(std::move(next));
  }
  r.synchronizing = true;
  r.length = depth;
  // walk the layers backwards, matching each target against its predecessors
  Word rev;
  uint32_t target = found;
  for (size_t lay = layers.size(); lay-- > 0;) {
    bool ok = false;
    for (size_t i = 0; i < layers[lay].size() && !ok; ++i)
      for (int a = 0; a < d.q && !ok; ++a)
        if (image32(lut.data() + size_t(a) * 1024, layers[lay][i]) == target) {
          rev.push_back(Letter(a));
          target = layers[lay][i];
          ok = true;
        }
    if (!ok) fail_domain("internal error: frontier chain broken");
  }
  r.word.assign(rev.rbegin(), rev.rend());
  return r;
}

}  // namespace

ExactResult minimal_sync_word(const Dfa& d) {
  validate_dfa(d);
  if (d.n > kMaxSubsetStates)
    fail_capacity("exact search enumerates image sets and is limited to " +
                  std::to_string(kMaxSubsetStates) + " states");
  if (d.n == 1) {
    ExactResult r;
    r.synchronizing = true;
    r.visited = 1;
    return r;
  }
  std::vector<uint32_t> lut = letter_luts(d);
  return d.n <= kDenseMaxStates ? exact_dense(d, lut) : exact_layered(d, lut);
}

std::optional<int> minimal_sync_length_bruteforce(const Dfa& d, int max_len) {
  validate_dfa(d);
  if (d.n == 1) return 0;
  StateSet full = StateSet::full(d.n);
  std::function<bool(const StateSet&, int)> dfs = [&](const StateSet& s, int left) {
    if (left == 0) return s.is_singleton();
    for (int a = 0; a < d.q; ++a)
      if (dfs(image_of_set(d, s, Letter(a)), left - 1)) return true;
    return false;
  };
  for (int len = 1; len <= max_len; ++len)
    if (dfs(full, len)) return len;
  return std::nullopt;
}

std::vector<std::string> minimal_word_patterns(const Dfa& d, int length, uint64_t cap) {
  validate_dfa(d);
  uint64_t total = 1;
  for (int i = 0; i < length; ++i) {
    if (total > cap / d.q) return {};
    total *= d.q;
  }
  std::set<std::string> pats;
  Word w(length);
  std::function<void(const StateSet&, int)> dfs = [&](const StateSet& s, int at) {
    if (at == length) {
      if (s.is_singleton()) pats.insert(word_pattern(w));
      return;
    }
    for (int a = 0; a < d.q; ++a) {
      w[at] = Letter(a);
      dfs(image_of_set(d, s, Letter(a)), at + 1);
    }
  };
  dfs(StateSet::full(d.n), 0);
  return std::vector<std::string>(pats.begin(), pats.end());
}

}  // namespace synckit
