#pragma once
#include "synckit/dfa.hpp"

namespace synckit {

// Transition semigroup: all distinct transformations induced by nonempty
// words, enumerated breadth-first so each element's witness word is a
// shortest one.  Stops once size_cap distinct elements exist.
struct ClosureResult {
  bool capped = false;
  uint64_t size = 0;
  std::vector<Mapping> elems;                      // discovery (BFS) order
  std::vector<std::pair<int32_t, int8_t>> parent;  // elems[i] = elems[first].then(letter)
                                                   // with first == -1 for letters
  int first_constant = -1;                         // least index of a rank-1 element
  Word witness(size_t idx) const;
};
ClosureResult semigroup_closure(const Dfa& d, uint64_t size_cap = 1000000);

struct SemigroupSize {
  bool capped = false;
  uint64_t size = 0;  // meaningful only when !capped
};
SemigroupSize semigroup_size(const Dfa& d, uint64_t size_cap = 1000000);

}  // namespace synckit
