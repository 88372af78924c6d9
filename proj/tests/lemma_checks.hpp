#pragma once
#include <cstdint>
#include <string>

// Randomized property checks shared by the unit tests and the acceptance
// runner.  Each drives at least min_cases independent cases and reports the
// first violation, if any.

struct LemmaReport {
  uint64_t cases = 0;
  bool ok = true;
  std::string detail;  // set when !ok
};

// A word resets an automaton exactly when it resets the automaton of
// unordered state pairs.
LemmaReport check_pair_word_coincidence(uint64_t min_cases, uint32_t seed);

// For a state p outside the image of word s, the orbit p, ps, ps^2, ...
// enters a loop at minimal (k, r); s^k then 2-resets (p, ps^r), s^(k-i)
// 2-resets (ps^i, ps^(r+i)), and s^k merges at least k distinct pairs.
LemmaReport check_orbit_merge(uint64_t min_cases, uint32_t seed);

// If s fixes exactly m states and s^k = s^(k+1), the image of s^k has
// exactly m states.
LemmaReport check_fixed_point_rank(uint64_t min_cases, uint32_t seed);
