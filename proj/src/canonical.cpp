#include "synckit/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace synckit {
namespace {

constexpr int kCanonMaxStates = 8;  // n! * q! candidates; keep it honest

std::vector<uint8_t> table_key(const Dfa& d) {
  std::vector<uint8_t> key;
  key.reserve(size_t(d.n) * d.q);
  for (const Mapping& m : d.letter)
    for (size_t s = 0; s < m.size(); ++s) key.push_back(m[s]);
  return key;
}

}  // namespace

Dfa relabel_states(const Dfa& d, const std::vector<uint8_t>& perm) {
  if (int(perm.size()) != d.n) fail_usage("state permutation has wrong size");
  std::vector<bool> seen(d.n, false);
  for (uint8_t p : perm) {
    if (p >= d.n || seen[p]) fail_usage("not a state permutation");
    seen[p] = true;
  }
  Dfa out = Dfa::make(d.n, d.q);
  for (int a = 0; a < d.q; ++a)
    for (int s = 0; s < d.n; ++s) out.letter[a][perm[s]] = perm[d.letter[a][s]];
  return out;
}

Dfa reorder_letters(const Dfa& d, const std::vector<uint8_t>& order) {
  if (int(order.size()) != d.q) fail_usage("letter order has wrong size");
  Dfa out;
  out.n = d.n;
  out.q = int(order.size());
  std::vector<bool> seen(d.q, false);
  for (uint8_t a : order) {
    if (a >= d.q || seen[a]) fail_usage("not a letter permutation");
    seen[a] = true;
    out.letter.push_back(d.letter[a]);
  }
  return out;
}

Dfa canonical_form(const Dfa& d, bool with_letter_perms) {
  if (d.n > kCanonMaxStates)
    fail_capacity("canonical_form is exhaustive and limited to " +
                  std::to_string(kCanonMaxStates) + " states");
  std::vector<uint8_t> perm(d.n), order(d.q);
  std::iota(order.begin(), order.end(), 0);
  Dfa best;
  std::vector<uint8_t> best_key;
  do {
    Dfa base = with_letter_perms ? reorder_letters(d, order) : d;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Dfa cand = relabel_states(base, perm);
      std::vector<uint8_t> key = table_key(cand);
      if (best_key.empty() || key < best_key) {
        best_key = std::move(key);
        best = std::move(cand);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!with_letter_perms) break;
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

bool is_canonical(const Dfa& d, bool with_letter_perms) {
  return canonical_form(d, with_letter_perms) == d;
}

bool isomorphic(const Dfa& a, const Dfa& b, bool with_letter_perms) {
  if (a.n != b.n || a.q != b.q) return false;
  return canonical_form(a, with_letter_perms) == canonical_form(b, with_letter_perms);
}

}  // namespace synckit
