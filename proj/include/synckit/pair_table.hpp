#pragma once
#include "synckit/dfa.hpp"

namespace synckit {

// For every unordered state pair, the length of a shortest merging word and
// the first letter of one such word (the least letter that starts a shortest
// merging word).  dist == -1 marks pairs no word merges.
struct PairTable {
  int n = 0;
  std::vector<int32_t> dist;
  std::vector<int8_t> first;
  bool all_finite = false;

  int index(int p, int q) const {  // p != q, order irrelevant
    if (p > q) std::swap(p, q);
    return p * (2 * n - p - 1) / 2 + (q - p - 1);
  }
  int pair_count() const { return n * (n - 1) / 2; }
};

PairTable build_pair_table(const Dfa& d);

// A shortest merging word for {p, q}, rebuilt by following first letters.
// Empty when p == q; Domain error when the pair cannot merge.
Word pair_word(const Dfa& d, const PairTable& t, int p, int q);

// Mergeable pairs in ascending dist order (counting sort; ties keep pair
// index order), as (p, q) with p < q.
std::vector<std::pair<int, int>> order_pairs_by_length(const PairTable& t);

// Structure of a transformation's functional graph (each node has one
// outgoing edge m[x]).
struct MappingOrbits {
  int stabilized_rank = 0;        // states lying on cycles
  int tail_length = 0;            // least k with image(m^k) == image(m^(k+1))
  std::vector<int> entry;         // first on-cycle node of each orbit
  std::vector<int> depth;         // steps from the node to its entry
  std::vector<int> basin;         // for on-cycle c: |{x : entry[x] == c}|
  std::vector<int> cycle_length;  // length of the cycle through entry[x]
};
MappingOrbits analyze_mapping(const Mapping& m);

// How a merging word w for {p, q} behaves under repetition.
struct MergeStats {
  int merge_state;       // p.w == q.w
  int stabilized_rank;   // rank of w^k once images stop shrinking
  int preimage_count;    // |{x : x.w^k == p.w^k}| for any k >= tail_length
  int tail_length;       // least such k
  int cycle_length;      // period of the merge state's orbit
};
MergeStats merge_stats(const Mapping& m, int p, int q);
MergeStats merge_stats(const Dfa& d, int p, int q, const Word& w);

}  // namespace synckit
