#include "lemma_checks.hpp"

#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "synckit/dfa.hpp"
#include "synckit/pair_table.hpp"
#include "synckit/reachability.hpp"
#include "synckit/sync_algorithms.hpp"

using namespace synckit;

namespace {

Dfa random_dfa(std::mt19937& rng, int n, int q) {
  Dfa d = Dfa::make(n, q);
  for (int a = 0; a < q; ++a)
    for (int s = 0; s < n; ++s) d[a][s] = uint8_t(rng() % n);
  return d;
}

Word random_word(std::mt19937& rng, int q, int len) {
  Word w(len);
  for (auto& a : w) a = Letter(rng() % q);
  return w;
}

// automaton over unordered state pairs {p, q}, diagonal included
Dfa pair_automaton(const Dfa& d) {
  int n = d.n;
  auto id = [n](int p, int q) {
    if (p > q) std::swap(p, q);
    return p * n - p * (p - 1) / 2 + (q - p);
  };
  Dfa out = Dfa::make(n * (n + 1) / 2, d.q);
  for (int a = 0; a < d.q; ++a)
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q)
        out[a][id(p, q)] = uint8_t(id(d[a][p], d[a][q]));
  return out;
}

std::string describe(const Dfa& d, const Word& w) {
  std::ostringstream os;
  os << "automaton:\n" << serialize_dfa(d) << "word: " << word_string(w);
  return os.str();
}

}  // namespace

LemmaReport check_pair_word_coincidence(uint64_t min_cases, uint32_t seed) {
  std::mt19937 rng(seed);
  LemmaReport rep;
  while (rep.cases < min_cases) {
    int n = 1 + int(rng() % 6), q = 1 + int(rng() % 3);
    Dfa d = random_dfa(rng, n, q);
    Dfa dd = pair_automaton(d);
    std::vector<Word> words;
    for (int i = 0; i < 4; ++i) words.push_back(random_word(rng, q, int(rng() % 15)));
    if (n > 1 && is_synchronizing(d)) words.push_back(eppstein_greedy(d).word);
    for (const Word& w : words) {
      ++rep.cases;
      if (is_reset_word(d, w) != is_reset_word(dd, w)) {
        rep.ok = false;
        rep.detail = "reset-word disagreement on the pair automaton\n" + describe(d, w);
        return rep;
      }
    }
  }
  return rep;
}

LemmaReport check_orbit_merge(uint64_t min_cases, uint32_t seed) {
  std::mt19937 rng(seed);
  LemmaReport rep;
  auto fail = [&](const std::string& why, const Dfa& d, const Word& s) {
    rep.ok = false;
    rep.detail = why + "\n" + describe(d, s);
  };
  while (rep.cases < min_cases) {
    int n = 2 + int(rng() % 7), q = 1 + int(rng() % 3);
    Dfa d = random_dfa(rng, n, q);
    Word s = random_word(rng, q, 1 + int(rng() % 8));
    Mapping m = mapping_of_word(d, s);
    std::vector<bool> in_image(n, false);
    for (int x = 0; x < n; ++x) in_image[m[x]] = true;
    int p = -1;
    for (int x = 0; x < n && p < 0; ++x)
      if (!in_image[x]) p = x;
    if (p < 0) continue;  // full image: the lemma has nothing to say
    ++rep.cases;

    // walk p, ps, ps^2, ... to the first repetition
    std::vector<int> orbit{p};
    std::vector<int> pos(n, -1);
    pos[p] = 0;
    int k = -1, r = -1;
    while (k < 0) {
      int nxt = m[orbit.back()];
      if (pos[nxt] >= 0) {
        k = pos[nxt];
        r = int(orbit.size()) - pos[nxt];
      } else {
        pos[nxt] = int(orbit.size());
        orbit.push_back(nxt);
      }
    }
    auto at = [&](int i) {  // p s^i, valid past the stored orbit
      return i < int(orbit.size()) ? orbit[i] : orbit[k + (i - k) % r];
    };

    if (k < 1) {
      fail("orbit start repeated although p lies outside the image", d, s);
      return rep;
    }
    Mapping mk = m.pow(k);
    if (p == at(r) || mk[p] != mk[at(r)]) {
      fail("s^k does not 2-reset (p, p s^r)", d, s);
      return rep;
    }
    for (int i = 0; i < k; ++i) {
      Mapping mi = m.pow(k - i);
      if (at(i) == at(r + i) || mi[at(i)] != mi[at(r + i)]) {
        fail("s^(k-i) does not 2-reset (p s^i, p s^(r+i))", d, s);
        return rep;
      }
      if (r == 1 && mi[at(i)] != mi[at(k)]) {
        fail("r = 1 case: s^(k-i) does not 2-reset (p s^i, p s^k)", d, s);
        return rep;
      }
    }
    int merged = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) merged += mk[u] == mk[v];
    if (merged < k) {
      fail("s^k merges fewer than k pairs", d, s);
      return rep;
    }
  }
  return rep;
}

LemmaReport check_fixed_point_rank(uint64_t min_cases, uint32_t seed) {
  std::mt19937 rng(seed);
  LemmaReport rep;
  while (rep.cases < min_cases) {
    int n = 1 + int(rng() % 10), q = 1 + int(rng() % 3);
    Dfa d = random_dfa(rng, n, q);
    Word u = random_word(rng, q, 1 + int(rng() % 6));
    Mapping f = mapping_of_word(d, u);
    MappingOrbits o = analyze_mapping(f);
    int64_t c = 1;
    for (int x = 0; x < n; ++x)
      if (o.depth[x] == 0) c = std::lcm(c, int64_t(o.cycle_length[x]));
    Mapping s = f.pow(uint64_t(c));  // realized by the word u^c
    ++rep.cases;

    int m = 0;
    for (int x = 0; x < n; ++x) m += s[x] == x;
    int k = -1;
    Mapping sk = Mapping::identity(n);
    for (int i = 0; i <= n; ++i) {
      if (sk == sk.then(s)) {
        k = i;
        break;
      }
      sk = sk.then(s);
    }
    auto fail = [&](const std::string& why) {
      rep.ok = false;
      rep.detail = why + "\n" + describe(d, u) + " (times " + std::to_string(c) + ")";
    };
    if (k < 0) {
      fail("no exponent k <= n with s^k = s^(k+1)");
      return rep;
    }
    if (sk.rank() != m) {
      fail("|image(s^k)| != number of fixed points of s");
      return rep;
    }
    // ground the transformation in an actual word when that stays small
    if (c * int64_t(u.size()) <= 64) {
      Word uc;
      for (int64_t i = 0; i < c; ++i) uc.insert(uc.end(), u.begin(), u.end());
      if (mapping_of_word(d, uc) != s) {
        fail("power mapping does not match the repeated word");
        return rep;
      }
    }
  }
  return rep;
}
