#pragma once
#include <string>
#include <vector>

#include "synckit/dfa.hpp"

namespace synckit {

// Exhaustive scan of complete automata with n states and q letters.  The
// census keeps one representative per isomorphism class (state relabeling
// plus letter renaming), restricted to strongly connected synchronizing
// automata in which no proper subset of the letters already synchronizes.
// Each of those restrictions can be switched off.
struct SearchSpec {
  int n = 0;
  int q = 0;
  int threshold = -1;        // record automata at this minimal length and up;
                             // -1 picks auto_threshold(n)
  uint64_t pattern_cap = 1ull << 20;  // skip pattern listing past this q^len
  int shards = 1;            // split of the first-letter classes ...
  int shard = 0;             // ... and the piece to run here
  int jobs = 1;              // worker threads
  bool letter_perms = true;  // identify letter renamings
  bool require_strongly_connected = true;
  bool prune_subalphabet = true;
  bool dedup = true;         // false: count labeled automata (validation mode)
};

// Records start close under the best known minimal length (n-1)^2.
int auto_threshold(int n);

struct ExtremalRecord {
  Dfa dfa;  // canonical representative
  int min_length = 0;
  std::vector<std::string> patterns;  // of all minimal words; empty if capped
  uint64_t semigroup_size = 0;
};

// Counters are survivors of each stage in order: tuples enumerated, image
// cover, strong connectivity, canonicity, synchronizability, sub-alphabet
// minimality.  Disabled stages pass everything through.
struct EnumerationReport {
  SearchSpec spec;
  uint64_t tuples = 0;
  uint64_t image_covering = 0;
  uint64_t strongly_connected = 0;
  uint64_t canonical = 0;
  uint64_t synchronizing = 0;
  uint64_t alphabet_minimal = 0;
  std::vector<uint64_t> histogram;  // census counts by minimal reset length
  int max_length = -1;              // -1 when the census is empty
  std::vector<ExtremalRecord> records;
  double seconds = 0;
};

EnumerationReport enumerate_automata(const SearchSpec& spec);

// Combine shard reports of the same search (counters add up, records merge).
EnumerationReport merge_reports(const std::vector<EnumerationReport>& parts);

}  // namespace synckit
