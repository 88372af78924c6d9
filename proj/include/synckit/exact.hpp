#pragma once
#include <optional>

#include "synckit/dfa.hpp"

namespace synckit {

// Shortest reset word by breadth-first search over reachable image sets.
// Limited to kMaxSubsetStates states.  Deterministic: the layer containing
// the first singleton is completed and the least-numbered singleton wins.
struct ExactResult {
  bool synchronizing = false;
  Word word;
  uint64_t length = 0;
  uint64_t visited = 0;  // distinct image sets seen (full set included)
};
ExactResult minimal_sync_word(const Dfa& d);

// Reference oracle: tries every word of length 0, 1, ... up to max_len and
// returns the first length that resets.  Exponential; test sizes only.
std::optional<int> minimal_sync_length_bruteforce(const Dfa& d, int max_len);

// Distinct first-occurrence letter patterns among all reset words of exactly
// `length`.  Empty when q^length exceeds cap.
std::vector<std::string> minimal_word_patterns(const Dfa& d, int length,
                                               uint64_t cap = 1ull << 26);

}  // namespace synckit
