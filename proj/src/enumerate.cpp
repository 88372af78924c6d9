#include "synckit/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <thread>

#include "synckit/exact.hpp"
#include "synckit/semigroup.hpp"

namespace synckit {
namespace {

// The factored generator precomputes conjugacy data over all n^n transition
// functions, which stops being cheap past six states.
constexpr int kMaxCensusStates = 6;
constexpr int kMaxCensusLetters = 3;

using Digits = std::array<uint8_t, 8>;

// Tables over all n^n transition functions.  A function's id is its base-n
// digit string with f(0) most significant, so id order equals lexicographic
// order on transition rows.
struct FnTables {
  int n = 0;
  int32_t fn_count = 0;
  int perm_count = 0;
  std::vector<Digits> perm;
  std::vector<Digits> perm_inv;
  std::vector<Digits> digits;       // id -> transition row
  std::vector<uint8_t> image;       // bitmask of the row's image
  std::vector<uint8_t> alone_sync;  // some power of the letter is constant
  std::vector<int32_t> canon1;      // least id conjugate to this one
  std::vector<int16_t> witness;     // perm index achieving canon1
  std::vector<std::vector<int16_t>> stab;  // filled for canonical ids only

  // conjugate: (p . f)(x) = p[f[p_inv[x]]]
  int32_t conj(int32_t f, int p) const {
    const Digits& d = digits[f];
    const Digits& fwd = perm[p];
    const Digits& inv = perm_inv[p];
    int32_t id = 0;
    for (int x = 0; x < n; ++x) id = id * n + fwd[d[inv[x]]];
    return id;
  }
};

FnTables build_tables(int n, bool with_canon) {
  FnTables t;
  t.n = n;
  t.fn_count = 1;
  for (int i = 0; i < n; ++i) t.fn_count *= n;

  Digits p{};
  std::iota(p.begin(), p.begin() + n, uint8_t(0));
  do {
    Digits inv{};
    for (int x = 0; x < n; ++x) inv[p[x]] = uint8_t(x);
    t.perm.push_back(p);
    t.perm_inv.push_back(inv);
  } while (std::next_permutation(p.begin(), p.begin() + n));
  t.perm_count = int(t.perm.size());

  t.digits.resize(t.fn_count);
  t.image.resize(t.fn_count);
  t.alone_sync.resize(t.fn_count);
  for (int32_t id = 0; id < t.fn_count; ++id) {
    Digits d{};
    int32_t rest = id;
    for (int x = n - 1; x >= 0; --x) {
      d[x] = uint8_t(rest % n);
      rest /= n;
    }
    t.digits[id] = d;
    uint8_t img = 0;
    for (int x = 0; x < n; ++x) img |= uint8_t(1u << d[x]);
    t.image[id] = img;
    // f^8 is constant iff the letter synchronizes by itself (any tail has
    // settled by then at n <= 6)
    Digits s = d;
    for (int square = 0; square < 3; ++square) {
      Digits s2{};
      for (int x = 0; x < n; ++x) s2[x] = s[s[x]];
      s = s2;
    }
    bool constant = true;
    for (int x = 1; x < n; ++x) constant = constant && s[x] == s[0];
    t.alone_sync[id] = uint8_t(constant);
  }

  if (with_canon) {
    t.canon1.resize(t.fn_count);
    t.witness.resize(t.fn_count);
    t.stab.resize(t.fn_count);
    for (int32_t id = 0; id < t.fn_count; ++id) {
      int32_t best = id;  // perm 0 is the identity
      int16_t best_p = 0;
      for (int pi = 1; pi < t.perm_count; ++pi) {
        int32_t c = t.conj(id, pi);
        if (c < best) {
          best = c;
          best_p = int16_t(pi);
        }
      }
      t.canon1[id] = best;
      t.witness[id] = best_p;
    }
    for (int32_t id = 0; id < t.fn_count; ++id) {
      if (t.canon1[id] != id) continue;
      for (int pi = 0; pi < t.perm_count; ++pi)
        if (t.conj(id, pi) == id) t.stab[id].push_back(int16_t(pi));
    }
  }
  return t;
}

bool image_covers(const FnTables& t, const int32_t* ids, int q) {
  uint8_t m = 0;
  for (int a = 0; a < q; ++a) m |= t.image[ids[a]];
  return m == uint8_t((1u << t.n) - 1);
}

bool strongly_connected_tuple(const FnTables& t, const int32_t* ids, int q) {
  const int n = t.n;
  uint8_t fwd[8] = {};
  uint8_t bwd[8] = {};
  for (int a = 0; a < q; ++a) {
    const Digits& d = t.digits[ids[a]];
    for (int s = 0; s < n; ++s) {
      fwd[s] |= uint8_t(1u << d[s]);
      bwd[d[s]] |= uint8_t(1u << s);
    }
  }
  auto reaches_all = [n](const uint8_t* adj) {
    uint8_t seen = 1;
    for (;;) {
      uint8_t next = seen;
      for (int s = 0; s < n; ++s)
        if (seen & (1u << s)) next |= adj[s];
      if (next == seen) break;
      seen = next;
    }
    return seen == uint8_t((1u << n) - 1);
  };
  return reaches_all(fwd) && reaches_all(bwd);
}

// True when no relabeling of states (and letters, if letter_perms) produces a
// lexicographically smaller tuple.  Assumes ids[0] is conjugacy-minimal and,
// with letter_perms, that ids is sorted.  Only permutations sending some
// letter's table onto ids[0] can improve the tuple, and those form
// Stab(ids[0]) composed with one transporter witness per letter.
bool tuple_canonical(const FnTables& t, const int32_t* ids, int q,
                     bool letter_perms) {
  const int32_t ta = ids[0];
  if (letter_perms) {
    for (int a = 1; a < q; ++a)
      if (t.canon1[ids[a]] < ta) return false;
  }
  const std::vector<int16_t>& stab = t.stab[ta];
  int32_t mapped[kMaxCensusLetters];
  const int sources = letter_perms ? q : 1;
  for (int a = 0; a < sources; ++a) {
    if (t.canon1[ids[a]] != ta) continue;
    const int16_t base = t.witness[ids[a]];
    for (int16_t s : stab) {
      for (int b = 0; b < q; ++b)
        mapped[b] = t.conj(t.conj(ids[b], base), s);
      if (letter_perms) std::sort(mapped, mapped + q);
      for (int b = 0; b < q; ++b) {
        if (mapped[b] != ids[b]) {
          if (mapped[b] < ids[b]) return false;
          break;
        }
      }
    }
  }
  return true;
}

// Pair-merging fixpoint: synchronizing iff every pair of states admits a
// merging word.
bool synchronizing_tuple(const FnTables& t, const int32_t* ids, int q) {
  const int n = t.n;
  if (n == 1) return true;
  auto bit = [n](int p, int r) { return p * n + r; };
  uint64_t all = 0;
  for (int p = 0; p < n; ++p)
    for (int r = p + 1; r < n; ++r) all |= 1ull << bit(p, r);
  uint64_t merged = 0;
  for (;;) {
    uint64_t before = merged;
    for (int p = 0; p < n; ++p)
      for (int r = p + 1; r < n; ++r) {
        uint64_t b = 1ull << bit(p, r);
        if (merged & b) continue;
        for (int a = 0; a < q; ++a) {
          int pp = t.digits[ids[a]][p];
          int rr = t.digits[ids[a]][r];
          if (pp == rr) {
            merged |= b;
            break;
          }
          if (pp > rr) std::swap(pp, rr);
          if (merged & (1ull << bit(pp, rr))) {
            merged |= b;
            break;
          }
        }
      }
    if (merged == before) break;
  }
  return merged == all;
}

// No proper nonempty subset of the letters synchronizes on its own.
bool subalphabet_minimal(const FnTables& t, const int32_t* ids, int q) {
  if (q < 2) return true;
  for (int a = 0; a < q; ++a)
    if (t.alone_sync[ids[a]]) return false;
  if (q >= 3) {
    int32_t rest[kMaxCensusLetters];
    for (int drop = 0; drop < q; ++drop) {
      int k = 0;
      for (int a = 0; a < q; ++a)
        if (a != drop) rest[k++] = ids[a];
      if (synchronizing_tuple(t, rest, q - 1)) return false;
    }
  }
  return true;
}

// Shortest reset length by subset BFS; assumes the tuple synchronizes.
int min_reset_len_tuple(const FnTables& t, const int32_t* ids, int q) {
  const int n = t.n;
  if (n == 1) return 0;
  const uint32_t full = (1u << n) - 1;
  int8_t dist[1 << kMaxCensusStates];
  std::fill(dist, dist + (1 << n), int8_t(-1));
  uint8_t queue[1 << kMaxCensusStates];
  int head = 0;
  int tail = 0;
  dist[full] = 0;
  queue[tail++] = uint8_t(full);
  while (head < tail) {
    const uint32_t s = queue[head++];
    for (int a = 0; a < q; ++a) {
      const Digits& d = t.digits[ids[a]];
      uint32_t img = 0;
      for (uint32_t rest = s; rest;) {
        img |= 1u << d[std::countr_zero(rest)];
        rest &= rest - 1;
      }
      if (dist[img] >= 0) continue;
      dist[img] = int8_t(dist[s] + 1);
      if ((img & (img - 1)) == 0) return dist[img];
      queue[tail++] = uint8_t(img);
    }
  }
  return -1;
}

Dfa materialize(const FnTables& t, const int32_t* ids, int q) {
  Dfa d = Dfa::make(t.n, q);
  for (int a = 0; a < q; ++a)
    for (int s = 0; s < t.n; ++s) d[a][s] = t.digits[ids[a]][s];
  return d;
}

ExtremalRecord make_record(const FnTables& t, const int32_t* ids, int q,
                           int len, uint64_t pattern_cap) {
  ExtremalRecord r;
  r.dfa = materialize(t, ids, q);
  r.min_length = len;
  r.patterns = minimal_word_patterns(r.dfa, len, pattern_cap);
  r.semigroup_size = semigroup_size(r.dfa).size;  // 6^6 < cap: never truncated
  return r;
}

void sort_records(std::vector<ExtremalRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ExtremalRecord& a, const ExtremalRecord& b) {
                     if (a.min_length != b.min_length)
                       return a.min_length > b.min_length;
                     return serialize_dfa(a.dfa) < serialize_dfa(b.dfa);
                   });
}

struct Shared {
  const SearchSpec* spec = nullptr;
  const FnTables* tables = nullptr;
  const std::vector<int32_t>* outer = nullptr;
  size_t lo = 0;
  size_t hi = 0;
  int threshold = 0;
  std::atomic<size_t> next{0};
  std::mutex merge_mutex;
  EnumerationReport* out = nullptr;
};

void bump(std::vector<uint64_t>& histogram, int len) {
  if (len >= int(histogram.size())) histogram.resize(len + 1, 0);
  ++histogram[len];
}

void scan_worker(Shared& sh) {
  const SearchSpec& spec = *sh.spec;
  const FnTables& t = *sh.tables;
  EnumerationReport local;
  int32_t ids[kMaxCensusLetters] = {};

  auto process = [&](const int32_t* tuple) {
    ++local.tuples;
    if (spec.require_strongly_connected) {
      if (!image_covers(t, tuple, spec.q)) return;
      ++local.image_covering;
      if (!strongly_connected_tuple(t, tuple, spec.q)) return;
    } else {
      ++local.image_covering;
    }
    ++local.strongly_connected;
    if (spec.dedup && !tuple_canonical(t, tuple, spec.q, spec.letter_perms))
      return;
    ++local.canonical;
    if (!synchronizing_tuple(t, tuple, spec.q)) return;
    ++local.synchronizing;
    if (spec.prune_subalphabet && !subalphabet_minimal(t, tuple, spec.q))
      return;
    ++local.alphabet_minimal;
    const int len = min_reset_len_tuple(t, tuple, spec.q);
    bump(local.histogram, len);
    local.max_length = std::max(local.max_length, len);
    if (len >= sh.threshold)
      local.records.push_back(
          make_record(t, tuple, spec.q, len, spec.pattern_cap));
  };

  for (;;) {
    const size_t i = sh.lo + sh.next.fetch_add(1);
    if (i >= sh.hi) break;
    ids[0] = (*sh.outer)[i];
    if (spec.q == 1) {
      process(ids);
      continue;
    }
    const bool sorted_letters = spec.dedup && spec.letter_perms;
    const int32_t lo_b = sorted_letters ? ids[0] : 0;
    for (ids[1] = lo_b; ids[1] < t.fn_count; ++ids[1]) {
      if (spec.q == 2) {
        process(ids);
        continue;
      }
      const int32_t lo_c = sorted_letters ? ids[1] : 0;
      for (ids[2] = lo_c; ids[2] < t.fn_count; ++ids[2]) process(ids);
    }
  }

  std::lock_guard<std::mutex> lock(sh.merge_mutex);
  EnumerationReport& out = *sh.out;
  out.tuples += local.tuples;
  out.image_covering += local.image_covering;
  out.strongly_connected += local.strongly_connected;
  out.canonical += local.canonical;
  out.synchronizing += local.synchronizing;
  out.alphabet_minimal += local.alphabet_minimal;
  if (local.histogram.size() > out.histogram.size())
    out.histogram.resize(local.histogram.size(), 0);
  for (size_t i = 0; i < local.histogram.size(); ++i)
    out.histogram[i] += local.histogram[i];
  out.max_length = std::max(out.max_length, local.max_length);
  for (ExtremalRecord& r : local.records) out.records.push_back(std::move(r));
}

}  // namespace

int auto_threshold(int n) {
  return std::max(1, (n - 1) * (n - 1) - (n - 2));
}

EnumerationReport enumerate_automata(const SearchSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxCensusStates)
    fail_capacity("census supports 1.." + std::to_string(kMaxCensusStates) +
                  " states, got " + std::to_string(spec.n));
  if (spec.q < 1 || spec.q > kMaxCensusLetters)
    fail_capacity("census supports 1.." + std::to_string(kMaxCensusLetters) +
                  " letters, got " + std::to_string(spec.q));
  if (spec.shards < 1 || spec.shard < 0 || spec.shard >= spec.shards)
    fail_usage("shard index must lie in [0, shards)");
  if (spec.jobs < 1) fail_usage("jobs must be positive");
  if (spec.threshold < -1) fail_usage("threshold must be -1 or nonnegative");

  const auto t0 = std::chrono::steady_clock::now();
  const FnTables tables = build_tables(spec.n, spec.dedup);

  std::vector<int32_t> outer;
  if (spec.dedup) {
    for (int32_t id = 0; id < tables.fn_count; ++id)
      if (tables.canon1[id] == id) outer.push_back(id);
  } else {
    outer.resize(tables.fn_count);
    std::iota(outer.begin(), outer.end(), 0);
  }

  EnumerationReport report;
  report.spec = spec;

  Shared sh;
  sh.spec = &spec;
  sh.tables = &tables;
  sh.outer = &outer;
  sh.lo = outer.size() * uint64_t(spec.shard) / spec.shards;
  sh.hi = outer.size() * uint64_t(spec.shard + 1) / spec.shards;
  sh.threshold = spec.threshold >= 0 ? spec.threshold : auto_threshold(spec.n);
  sh.out = &report;

  const int jobs = int(std::min<size_t>(size_t(spec.jobs),
                                        std::max<size_t>(1, sh.hi - sh.lo)));
  if (jobs <= 1) {
    scan_worker(sh);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back([&sh] { scan_worker(sh); });
    for (std::thread& th : pool) th.join();
  }

  sort_records(report.records);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

EnumerationReport merge_reports(const std::vector<EnumerationReport>& parts) {
  if (parts.empty()) fail_usage("nothing to merge");
  EnumerationReport out;
  out.spec = parts.front().spec;
  for (const EnumerationReport& p : parts) {
    if (p.spec.n != out.spec.n || p.spec.q != out.spec.q)
      fail_usage("cannot merge reports of different searches");
    out.tuples += p.tuples;
    out.image_covering += p.image_covering;
    out.strongly_connected += p.strongly_connected;
    out.canonical += p.canonical;
    out.synchronizing += p.synchronizing;
    out.alphabet_minimal += p.alphabet_minimal;
    if (p.histogram.size() > out.histogram.size())
      out.histogram.resize(p.histogram.size(), 0);
    for (size_t i = 0; i < p.histogram.size(); ++i)
      out.histogram[i] += p.histogram[i];
    out.max_length = std::max(out.max_length, p.max_length);
    for (const ExtremalRecord& r : p.records) out.records.push_back(r);
    out.seconds += p.seconds;
  }
  sort_records(out.records);
  return out;
}

}  // namespace synckit
