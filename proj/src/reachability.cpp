#include "synckit/reachability.hpp"

#include <algorithm>
#include <queue>

namespace synckit {

SccInfo scc(const Dfa& d) {
  const int n = d.n, q = d.q;
  SccInfo out;
  out.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on(n, 0);
  std::vector<int> stk;
  stk.reserve(n);
  struct Frame {
    int v;
    int a;  // next letter to explore
  };
  std::vector<Frame> call;
  int next = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    index[root] = low[root] = next++;
    stk.push_back(root);
    on[root] = 1;
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.a < q) {
        int w = d.letter[f.a][f.v];
        ++f.a;
        if (index[w] < 0) {
          index[w] = low[w] = next++;
          stk.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            int w = stk.back();
            stk.pop_back();
            on[w] = 0;
            out.comp[w] = out.count;
            if (w == v) break;
          }
          ++out.count;
        }
      }
    }
  }
  std::vector<char> leaves(out.count, 1);
  for (int a = 0; a < q; ++a)
    for (int s = 0; s < n; ++s)
      if (out.comp[s] != out.comp[d.letter[a][s]]) leaves[out.comp[s]] = 0;
  for (int c = 0; c < out.count; ++c)
    if (leaves[c]) out.sinks.push_back(c);
  return out;
}

bool is_strongly_connected(const Dfa& d) { return scc(d).count == 1; }

namespace {

// All unordered state pairs of `states` that can be merged by some word,
// found by reverse reachability from the pairs a single letter merges.
// Assumes `states` is closed under every letter.  Returns true when every
// pair is mergeable.
bool all_pairs_mergeable(const Dfa& d, const std::vector<int>& states) {
  const int m = int(states.size());
  if (m <= 1) return true;
  std::vector<int> local(d.n, -1);
  for (int i = 0; i < m; ++i) local[states[i]] = i;
  auto pidx = [m](int i, int j) {  // triangular index, i < j
    return i * (2 * m - i - 1) / 2 + (j - i - 1);
  };
  const int pairs = m * (m - 1) / 2;
  const int q = d.q;

  // CSR of the reversed pair graph; merged-in-one-step pairs seed the queue
  std::vector<int> deg(pairs + 1, 0);
  std::vector<char> seed(pairs, 0);
  auto succ = [&](int i, int j, int a) {
    int pi = local[d.letter[a][states[i]]];
    int pj = local[d.letter[a][states[j]]];
    if (pi == pj) return -1;
    return pi < pj ? pidx(pi, pj) : pidx(pj, pi);
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int a = 0; a < q; ++a) {
        int t = succ(i, j, a);
        if (t < 0)
          seed[pidx(i, j)] = 1;
        else
          ++deg[t + 1];
      }
  for (int p = 0; p < pairs; ++p) deg[p + 1] += deg[p];
  std::vector<int> radj(deg[pairs]);
  std::vector<int> fill(deg.begin(), deg.end() - 1);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int a = 0; a < q; ++a) {
        int t = succ(i, j, a);
        if (t >= 0) radj[fill[t]++] = pidx(i, j);
      }

  std::vector<char> marked(seed.begin(), seed.end());
  std::vector<int> queue;
  for (int p = 0; p < pairs; ++p)
    if (marked[p]) queue.push_back(p);
  size_t head = 0;
  int reached = int(queue.size());
  while (head < queue.size()) {
    int p = queue[head++];
    for (int e = deg[p]; e < deg[p + 1]; ++e) {
      int u = radj[e];
      if (!marked[u]) {
        marked[u] = 1;
        queue.push_back(u);
        ++reached;
      }
    }
  }
  return reached == pairs;
}

}  // namespace

SyncCheck check_synchronizing(const Dfa& d) {
  validate_dfa(d);
  SyncCheck r;
  SccInfo info = scc(d);
  if (info.sinks.size() != 1) return r;  // two closed sets can never merge
  r.sink_component = info.sinks[0];
  std::vector<int> sink_states;
  for (int s = 0; s < d.n; ++s)
    if (info.comp[s] == r.sink_component) sink_states.push_back(s);
  if (sink_states.size() == 1) {
    r.synchronizing = true;
    return r;
  }
  r.used_pair_stage = true;
  r.synchronizing = all_pairs_mergeable(d, sink_states);
  return r;
}

bool is_synchronizing(const Dfa& d) { return check_synchronizing(d).synchronizing; }

SinkWordResult word_into_sink_scc(const Dfa& d) {
  validate_dfa(d);
  SccInfo info = scc(d);
  if (info.sinks.size() != 1) fail_domain("automaton has no unique sink component");
  const int sink = info.sinks[0];
  SinkWordResult r;
  StateSet current = StateSet::full(d.n);
  auto outside = [&](const StateSet& s) {
    std::vector<int> v;
    s.for_each([&](int st) {
      if (info.comp[st] != sink) v.push_back(st);
    });
    return v;
  };
  r.outside_count = int(outside(current).size());
  while (true) {
    std::vector<int> out = outside(current);
    if (out.empty()) break;
    // shortest word from the lowest outside state into the sink component;
    // BFS with letters in order makes it the lexicographically least one
    int start = out[0];
    std::vector<int> par(d.n, -1);
    std::vector<int8_t> via(d.n, -1);
    std::vector<int> queue{start};
    par[start] = start;
    int goal = -1;
    for (size_t head = 0; head < queue.size() && goal < 0; ++head) {
      int v = queue[head];
      for (int a = 0; a < d.q && goal < 0; ++a) {
        int w = d.letter[a][v];
        if (par[w] >= 0) continue;
        par[w] = v;
        via[w] = int8_t(a);
        if (info.comp[w] == sink)
          goal = w;
        else
          queue.push_back(w);
      }
    }
    if (goal < 0) fail_domain("sink component unreachable");  // cannot happen
    Word piece;
    for (int v = goal; v != start; v = par[v]) piece.push_back(Letter(via[v]));
    std::reverse(piece.begin(), piece.end());
    current = image_of_word(d, current, piece);
    r.word.insert(r.word.end(), piece.begin(), piece.end());
  }
  return r;
}

}  // namespace synckit
