#pragma once
#include "synckit/dfa.hpp"
#include "synckit/pair_table.hpp"

namespace synckit {

enum class Algo { Eppstein, Cycle, Semigroup };
const char* algo_name(Algo a);

// Secondary ordering of the marked merging words in the semigroup algorithm.
// CostPerMerge ranks by |w| / preimage_count, so a slightly longer word that
// collapses many states beats a short one that merges a single pair.
enum class SecondOrder { CostPerMerge, LengthFirst, PreimageFirst };

struct SyncStep {
  std::string kind;    // "pair", "power", "product", "adjoin"
  int p = -1, q = -1;  // the pair driving the step, when there is one
  Word piece;          // unit this step appended
  int repeat = 1;      // how many copies of piece were appended
  int set_before = 0;  // |S| entering the step
  int set_after = 0;   // |S| leaving it
};

struct SyncResult {
  Algo algorithm = Algo::Eppstein;
  Word word;
  std::vector<SyncStep> trace;
  bool over_quadratic = false;  // length exceeded n^2 (soft flag, never an error)
  int length() const { return int(word.size()); }
};

// The pair of distinct states of s with the shortest merging word; ties fall
// to the lexicographically least (p, q).  Domain error if none can merge.
std::pair<int, int> closest_pair(const PairTable& t, const StateSet& s);

// Repeatedly merge the closest pair of the current image.
SyncResult eppstein_greedy(const Dfa& d);

// Like eppstein_greedy, but after each merge keep applying a repeated unit
// while the image shrinks.  With power_completion the unit is chosen among
// the pair word and the cycle words through the two states the pair occupies
// just before its final letter; without it only the pair word is repeated.
SyncResult cycle_greedy(const Dfa& d, bool power_completion = true);

// Maintain a marked set of merging words (cheapest pair words, their
// stabilised powers, products, and adjoined generators); each round applies
// the best-ranked marked word that shrinks the image, falling back to
// products of marked words and then to adjoining a new generator.
SyncResult semigroup_greedy(const Dfa& d,
                            SecondOrder order = SecondOrder::CostPerMerge);

}  // namespace synckit
