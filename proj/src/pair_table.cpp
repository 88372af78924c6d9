#include "synckit/pair_table.hpp"

#include <algorithm>

namespace synckit {

PairTable build_pair_table(const Dfa& d) {
  validate_dfa(d);
  PairTable t;
  t.n = d.n;
  const int pairs = t.pair_count();
  const int q = d.q;
  t.dist.assign(pairs, -1);
  t.first.assign(pairs, -1);

  // multi-source BFS on the reversed pair graph, sources = pairs some letter
  // merges outright
  std::vector<int> deg(pairs + 1, 0);
  auto succ = [&](int p, int r, int a) {
    int pp = d.letter[a][p], rr = d.letter[a][r];
    return pp == rr ? -1 : t.index(pp, rr);
  };
  std::vector<int> queue;
  for (int p = 0; p < t.n; ++p)
    for (int r = p + 1; r < t.n; ++r)
      for (int a = 0; a < q; ++a) {
        int s = succ(p, r, a);
        if (s < 0) {
          int idx = t.index(p, r);
          if (t.dist[idx] < 0) {
            t.dist[idx] = 1;
            queue.push_back(idx);
          }
        } else {
          ++deg[s + 1];
        }
      }
  for (int i = 0; i < pairs; ++i) deg[i + 1] += deg[i];
  std::vector<int> radj(deg[pairs]);
  {
    std::vector<int> fill(deg.begin(), deg.end() - 1);
    for (int p = 0; p < t.n; ++p)
      for (int r = p + 1; r < t.n; ++r)
        for (int a = 0; a < q; ++a) {
          int s = succ(p, r, a);
          if (s >= 0) radj[fill[s]++] = t.index(p, r);
        }
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (int e = deg[x]; e < deg[x + 1]; ++e) {
      int y = radj[e];
      if (t.dist[y] < 0) {
        t.dist[y] = t.dist[x] + 1;
        queue.push_back(y);
      }
    }
  }

  // least letter starting a shortest merging word
  t.all_finite = true;
  for (int p = 0; p < t.n; ++p)
    for (int r = p + 1; r < t.n; ++r) {
      int idx = t.index(p, r);
      if (t.dist[idx] < 0) {
        t.all_finite = false;
        continue;
      }
      for (int a = 0; a < q; ++a) {
        int s = succ(p, r, a);
        if ((s < 0 && t.dist[idx] == 1) || (s >= 0 && t.dist[s] == t.dist[idx] - 1)) {
          t.first[idx] = int8_t(a);
          break;
        }
      }
    }
  return t;
}

Word pair_word(const Dfa& d, const PairTable& t, int p, int q) {
  if (p < 0 || q < 0 || p >= d.n || q >= d.n) fail_usage("state out of range");
  Word w;
  while (p != q) {
    int idx = t.index(p, q);
    if (t.dist[idx] < 0) fail_domain("pair cannot be merged");
    Letter a = Letter(t.first[idx]);
    w.push_back(a);
    p = d.letter[a][p];
    q = d.letter[a][q];
  }
  return w;
}

std::vector<std::pair<int, int>> order_pairs_by_length(const PairTable& t) {
  int maxd = 0;
  for (int x : t.dist) maxd = std::max(maxd, x);
  std::vector<int> count(maxd + 2, 0);
  for (int x : t.dist)
    if (x >= 0) ++count[x + 1];
  for (int i = 0; i <= maxd; ++i) count[i + 1] += count[i];
  std::vector<std::pair<int, int>> out(count[maxd + 1]);
  for (int p = 0; p < t.n; ++p)
    for (int q = p + 1; q < t.n; ++q) {
      int ddist = t.dist[t.index(p, q)];
      if (ddist >= 0) out[count[ddist]++] = {p, q};
    }
  return out;
}

MappingOrbits analyze_mapping(const Mapping& m) {
  const int n = int(m.size());
  MappingOrbits o;
  o.entry.assign(n, -1);
  o.depth.assign(n, 0);
  o.basin.assign(n, 0);
  o.cycle_length.assign(n, 0);

  // locate cycles by walking each orbit once
  std::vector<char> color(n, 0);  // 0 new, 1 on current walk, 2 settled
  std::vector<char> on_cycle(n, 0);
  std::vector<int> own_cycle_len(n, 0);
  std::vector<int> walk;
  for (int s = 0; s < n; ++s) {
    if (color[s]) continue;
    walk.clear();
    int x = s;
    while (color[x] == 0) {
      color[x] = 1;
      walk.push_back(x);
      x = m[x];
    }
    if (color[x] == 1) {  // closed a new cycle at x
      size_t at = walk.size();
      while (walk[at - 1] != x) --at;
      int len = int(walk.size() - at + 1);
      for (size_t i = at - 1; i < walk.size(); ++i) {
        on_cycle[walk[i]] = 1;
        own_cycle_len[walk[i]] = len;
      }
    }
    for (int v : walk) color[v] = 2;
  }

  // entries and depths, resolved tail-first along each pending path
  for (int s = 0; s < n; ++s) {
    if (o.entry[s] >= 0) continue;
    walk.clear();
    int x = s;
    while (o.entry[x] < 0 && !on_cycle[x]) {
      walk.push_back(x);
      x = m[x];
    }
    int base_entry = on_cycle[x] ? x : o.entry[x];
    int base_depth = on_cycle[x] ? 0 : o.depth[x];
    if (on_cycle[x]) o.entry[x] = x;
    for (size_t i = walk.size(); i-- > 0;) {
      o.entry[walk[i]] = base_entry;
      o.depth[walk[i]] = base_depth + int(walk.size() - i);
    }
  }
  for (int s = 0; s < n; ++s) {
    ++o.basin[o.entry[s]];
    o.cycle_length[s] = own_cycle_len[o.entry[s]];
    o.stabilized_rank += on_cycle[s];
    o.tail_length = std::max(o.tail_length, o.depth[s]);
  }
  return o;
}

MergeStats merge_stats(const Mapping& m, int p, int q) {
  int n = int(m.size());
  if (p < 0 || q < 0 || p >= n || q >= n) fail_usage("state out of range");
  if (m[p] != m[q]) fail_domain("word does not merge the pair");
  MappingOrbits o = analyze_mapping(m);
  MergeStats s;
  s.merge_state = m[p];
  s.stabilized_rank = o.stabilized_rank;
  s.tail_length = o.tail_length;
  s.cycle_length = o.cycle_length[s.merge_state];
  // States eventually indistinguishable from p under repetition of the word:
  // count x with x.w^k == p.w^k once the image has stabilised.  The count is
  // the same for every k >= tail_length.
  int k = std::max(1, o.tail_length);
  Mapping mk = m.pow(k);
  int target = mk[p];
  s.preimage_count = 0;
  for (int x = 0; x < n; ++x)
    if (mk[x] == target) ++s.preimage_count;
  return s;
}

MergeStats merge_stats(const Dfa& d, int p, int q, const Word& w) {
  return merge_stats(mapping_of_word(d, w), p, q);
}

}  // namespace synckit
