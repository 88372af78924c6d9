#pragma once
#include "synckit/dfa.hpp"

namespace synckit {

// perm maps old state ids to new ones: new_delta[a][perm[s]] = perm[delta[a][s]].
Dfa relabel_states(const Dfa& d, const std::vector<uint8_t>& perm);

// order[i] names the old letter that becomes new letter i.
Dfa reorder_letters(const Dfa& d, const std::vector<uint8_t>& order);

// Lexicographically least serialized table over all state relabelings (and,
// if with_letter_perms, all letter reorderings).  Exhaustive over n! * q!
// candidates, so capped at small n; the enumeration engine has its own
// incremental canonicity test and never calls this.
Dfa canonical_form(const Dfa& d, bool with_letter_perms = true);
bool is_canonical(const Dfa& d, bool with_letter_perms = true);
bool isomorphic(const Dfa& a, const Dfa& b, bool with_letter_perms = true);

}  // namespace synckit
