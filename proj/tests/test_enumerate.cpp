#include "synckit/enumerate.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "synckit/canonical.hpp"
#include "synckit/dfa.hpp"
#include "synckit/exact.hpp"
#include "synckit/reachability.hpp"
#include "synckit/semigroup.hpp"

using namespace synckit;

namespace {

std::map<int, uint64_t> hist_map(const std::vector<uint64_t>& h) {
  std::map<int, uint64_t> m;
  for (size_t i = 0; i < h.size(); ++i)
    if (h[i]) m[int(i)] = h[i];
  return m;
}

bool covers_all_states(const Dfa& d) {
  std::vector<bool> hit(d.n, false);
  for (int a = 0; a < d.q; ++a)
    for (int s = 0; s < d.n; ++s) hit[d[a][s]] = true;
  for (int s = 0; s < d.n; ++s)
    if (!hit[s]) return false;
  return true;
}

bool no_subalphabet_syncs(const Dfa& d) {
  if (d.q < 2) return true;
  for (int drop = 0; drop < d.q; ++drop) {
    // all proper nonempty subsets arise as singles (q=2) or drop-one (q=3)
    std::vector<Letter> keep;
    for (int a = 0; a < d.q; ++a)
      if (a != drop) keep.push_back(Letter(a));
    if (check_synchronizing(restrict_alphabet(d, keep)).synchronizing)
      return false;
    if (d.q >= 3 &&
        check_synchronizing(restrict_alphabet(d, {Letter(drop)})).synchronizing)
      return false;
  }
  return true;
}

// Independent census: walk every labeled transition table, apply the same
// filters through the public library calls, and reduce to isomorphism
// classes with canonical_form.
struct BruteCensus {
  uint64_t tuples = 0;
  uint64_t covering = 0;
  uint64_t sc = 0;
  uint64_t sync = 0;
  uint64_t minimal = 0;  // labeled survivors of every filter
  std::set<std::string> classes_sc;
  std::set<std::string> classes_sync;
  std::set<std::string> classes_minimal;
  std::map<int, uint64_t> class_hist;
  std::map<int, uint64_t> labeled_hist;
  int max_length = -1;
};

BruteCensus brute_census(int n, int q, bool require_sc = true,
                         bool prune = true, bool letter_perms = true) {
  BruteCensus out;
  int64_t fn_count = 1;
  for (int i = 0; i < n; ++i) fn_count *= n;
  int64_t total = 1;
  for (int a = 0; a < q; ++a) total *= fn_count;
  for (int64_t code = 0; code < total; ++code) {
    ++out.tuples;
    Dfa d = Dfa::make(n, q);
    int64_t rest = code;
    for (int a = 0; a < q; ++a) {
      int64_t f = rest % fn_count;
      rest /= fn_count;
      for (int s = n - 1; s >= 0; --s) {
        d[a][s] = uint8_t(f % n);
        f /= n;
      }
    }
    if (require_sc) {
      if (!covers_all_states(d)) continue;
      ++out.covering;
      if (!is_strongly_connected(d)) continue;
    } else {
      ++out.covering;
    }
    ++out.sc;
    out.classes_sc.insert(serialize_dfa(canonical_form(d, letter_perms)));
    if (!check_synchronizing(d).synchronizing) continue;
    ++out.sync;
    out.classes_sync.insert(serialize_dfa(canonical_form(d, letter_perms)));
    if (prune && !no_subalphabet_syncs(d)) continue;
    ++out.minimal;
    const int len = int(minimal_sync_word(d).length);
    ++out.labeled_hist[len];
    std::string canon = serialize_dfa(canonical_form(d, letter_perms));
    if (out.classes_minimal.insert(canon).second) {
      ++out.class_hist[len];
      out.max_length = std::max(out.max_length, len);
    }
  }
  return out;
}

EnumerationReport run(int n, int q) {
  SearchSpec s;
  s.n = n;
  s.q = q;
  return enumerate_automata(s);
}

void check_against_brute(const EnumerationReport& r, const BruteCensus& b) {
  CHECK(r.canonical == b.classes_sc.size());
  CHECK(r.synchronizing == b.classes_sync.size());
  CHECK(r.alphabet_minimal == b.classes_minimal.size());
  CHECK(hist_map(r.histogram) == b.class_hist);
  CHECK(r.max_length == b.max_length);
}

}  // namespace

TEST_CASE("small censuses match a labeled brute-force scan") {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
    CAPTURE(n);
    CAPTURE(q);
    check_against_brute(run(n, q), brute_census(n, q));
  }
}

TEST_CASE("census of four-state pairs matches the brute-force scan") {
  check_against_brute(run(4, 2), brute_census(4, 2));
}

TEST_CASE("filter toggles agree with the adjusted brute-force scan") {
  SearchSpec s;
  s.n = 3;
  s.q = 2;

  SUBCASE("without the sub-alphabet prune") {
    s.prune_subalphabet = false;
    EnumerationReport r = enumerate_automata(s);
    BruteCensus b = brute_census(3, 2, true, false);
    check_against_brute(r, b);
    CHECK(r.alphabet_minimal == r.synchronizing);  // stage passes through
    CHECK(r.alphabet_minimal == 21);
  }
  SUBCASE("without the strong-connectivity filter") {
    s.require_strongly_connected = false;
    EnumerationReport r = enumerate_automata(s);
    check_against_brute(r, brute_census(3, 2, false));
    CHECK(r.image_covering == r.tuples);
  }
  SUBCASE("without letter renaming") {
    s.letter_perms = false;
    EnumerationReport r = enumerate_automata(s);
    BruteCensus b = brute_census(3, 2, true, true, false);
    check_against_brute(r, b);
    // renaming-free classes outnumber full classes
    CHECK(r.alphabet_minimal >= run(3, 2).alphabet_minimal);
  }
}

TEST_CASE("labeled mode counts every transition table") {
  SearchSpec s;
  s.n = 3;
  s.q = 2;
  s.dedup = false;
  s.threshold = 99;
  EnumerationReport r = enumerate_automata(s);
  BruteCensus b = brute_census(3, 2);
  CHECK(r.tuples == 729);
  CHECK(r.tuples == b.tuples);
  CHECK(r.image_covering == b.covering);
  CHECK(r.strongly_connected == b.sc);
  CHECK(r.canonical == b.sc);  // dedup off: stage passes through
  CHECK(r.synchronizing == b.sync);
  CHECK(r.alphabet_minimal == b.minimal);
  CHECK(r.alphabet_minimal == 90);
  CHECK(hist_map(r.histogram) == b.labeled_hist);
  CHECK(r.records.empty());
}

TEST_CASE("census counters and histograms are stable") {
  SUBCASE("three states, two letters") {
    EnumerationReport r = run(3, 2);
    CHECK(r.tuples == 150);
    CHECK(r.image_covering == 117);
    CHECK(r.strongly_connected == 59);
    CHECK(r.canonical == 29);
    CHECK(r.synchronizing == 21);
    CHECK(r.alphabet_minimal == 8);
    CHECK(hist_map(r.histogram) ==
          std::map<int, uint64_t>{{2, 3}, {3, 3}, {4, 2}});
    CHECK(r.max_length == 4);
  }
  SUBCASE("three states, three letters") {
    EnumerationReport r = run(3, 3);
    CHECK(r.tuples == 1766);
    CHECK(r.canonical == 422);
    CHECK(r.synchronizing == 396);
    CHECK(r.alphabet_minimal == 2);
    CHECK(hist_map(r.histogram) == std::map<int, uint64_t>{{4, 2}});
  }
  SUBCASE("four states, two letters") {
    EnumerationReport r = run(4, 2);
    CHECK(r.tuples == 4191);
    CHECK(r.canonical == 460);
    CHECK(r.synchronizing == 395);
    CHECK(r.alphabet_minimal == 214);
    CHECK(hist_map(r.histogram) ==
          std::map<int, uint64_t>{{2, 18},
                                  {3, 57},
                                  {4, 52},
                                  {5, 49},
                                  {6, 20},
                                  {7, 11},
                                  {8, 5},
                                  {9, 2}});
  }
  SUBCASE("four states, three letters") {
    EnumerationReport r = run(4, 3);
    CHECK(r.tuples == 475000);
    CHECK(r.canonical == 78198);
    CHECK(r.synchronizing == 77176);
    CHECK(r.alphabet_minimal == 570);
    CHECK(hist_map(r.histogram) == std::map<int, uint64_t>{{3, 84},
                                                           {4, 188},
                                                           {5, 114},
                                                           {6, 113},
                                                           {7, 50},
                                                           {8, 19},
                                                           {9, 2}});
  }
  SUBCASE("five states, two letters") {
    EnumerationReport r = run(5, 2);
    CHECK(r.tuples == 133693);
    CHECK(r.canonical == 10701);
    CHECK(r.synchronizing == 10180);
    CHECK(r.alphabet_minimal == 6532);
    std::map<int, uint64_t> h = hist_map(r.histogram);
    CHECK(h[13] == 23);
    CHECK(h[14] == 11);
    CHECK(h[15] == 4);
    CHECK(h[16] == 1);
    CHECK(r.max_length == 16);
  }
}

TEST_CASE("extremal records carry verified data") {
  EnumerationReport r = run(4, 2);
  REQUIRE(!r.records.empty());
  CHECK(r.records.front().min_length == r.max_length);
  for (const ExtremalRecord& rec : r.records) {
    CAPTURE(serialize_dfa(rec.dfa));
    CHECK(is_canonical(rec.dfa));
    CHECK(rec.min_length >= auto_threshold(4));
    CHECK(minimal_sync_word(rec.dfa).length == uint64_t(rec.min_length));
    CHECK(rec.semigroup_size == semigroup_size(rec.dfa).size);
    CHECK(rec.patterns == minimal_word_patterns(rec.dfa, rec.min_length));
  }
  // records come sorted by length, longest first
  for (size_t i = 1; i < r.records.size(); ++i)
    CHECK(r.records[i - 1].min_length >= r.records[i].min_length);
}

TEST_CASE("the three-state maximum is 4, reached twice with one new class") {
  EnumerationReport r = run(3, 2);
  REQUIRE(r.records.size() == 5);  // everything of length 3 and up
  CHECK(r.records[0].min_length == 4);
  CHECK(r.records[1].min_length == 4);
  CHECK(r.records[2].min_length == 3);
  std::string c3 = serialize_dfa(canonical_form(cerny(3)));
  int hits = 0;
  for (int i = 0; i < 2; ++i) {
    const ExtremalRecord& rec = r.records[i];
    CHECK(rec.semigroup_size == 24);
    CHECK(rec.patterns == std::vector<std::string>{"0110"});
    if (serialize_dfa(rec.dfa) == c3) ++hits;
  }
  CHECK(hits == 1);  // one is the cyclic construction, the other is not
}

TEST_CASE("both three-letter extremal classes reach 4 with semigroup 27") {
  EnumerationReport r = run(3, 3);
  REQUIRE(r.records.size() == 2);
  for (const ExtremalRecord& rec : r.records) {
    CHECK(rec.min_length == 4);
    CHECK(rec.semigroup_size == 27);
    CHECK(rec.patterns == std::vector<std::string>{"0120"});
  }
  CHECK(serialize_dfa(r.records[0].dfa) != serialize_dfa(r.records[1].dfa));
}

TEST_CASE("four-state records: two classes at 9 for q=2 and two more for q=3") {
  EnumerationReport r2 = run(4, 2);
  REQUIRE(r2.records.size() >= 2);
  std::multiset<uint64_t> sems;
  std::string c4 = serialize_dfa(canonical_form(cerny(4)));
  int c4_hits = 0;
  for (int i = 0; i < 2; ++i) {
    CHECK(r2.records[i].min_length == 9);
    sems.insert(r2.records[i].semigroup_size);
    if (serialize_dfa(r2.records[i].dfa) == c4) {
      ++c4_hits;
      CHECK(r2.records[i].patterns == std::vector<std::string>{"011101110"});
    }
  }
  CHECK(r2.records[2].min_length == 8);
  CHECK(sems == std::multiset<uint64_t>{128, 145});
  CHECK(c4_hits == 1);

  EnumerationReport r3 = run(4, 3);
  REQUIRE(r3.records.size() >= 3);
  CHECK(r3.records[0].min_length == 9);
  CHECK(r3.records[1].min_length == 9);
  CHECK(r3.records[2].min_length == 8);
  std::multiset<uint64_t> sems3{r3.records[0].semigroup_size,
                                r3.records[1].semigroup_size};
  CHECK(sems3 == std::multiset<uint64_t>{148, 180});
  for (int i = 0; i < 2; ++i) {
    const auto& pats = r3.records[i].patterns;
    bool known = std::count(pats.begin(), pats.end(), "012020120") ||
                 std::count(pats.begin(), pats.end(), "012000120");
    CHECK(known);
  }
}

TEST_CASE("five states: the cyclic automaton alone reaches 16, then 15") {
  EnumerationReport r = run(5, 2);
  REQUIRE(!r.records.empty());
  const ExtremalRecord& top = r.records[0];
  CHECK(top.min_length == 16);
  CHECK(r.records[1].min_length == 15);
  CHECK(hist_map(r.histogram)[16] == 1);
  CHECK(serialize_dfa(top.dfa) == serialize_dfa(canonical_form(cerny(5))));
  CHECK(top.semigroup_size == 610);
  CHECK(top.patterns == std::vector<std::string>{"0111101111011110"});
}

TEST_CASE("six states: nothing at 24, two classes at 25") {
  SearchSpec s;
  s.n = 6;
  s.q = 2;
  s.threshold = 25;
  EnumerationReport r = enumerate_automata(s);
  CHECK(r.tuples == 5627201);
  CHECK(r.image_covering == 2540437);
  CHECK(r.strongly_connected == 1089437);
  CHECK(r.canonical == 329794);
  CHECK(r.synchronizing == 322095);
  CHECK(r.alphabet_minimal == 225386);
  CHECK(r.max_length == 25);
  std::map<int, uint64_t> h = hist_map(r.histogram);
  CHECK(h[23] == 2);
  CHECK(h.count(24) == 0);
  CHECK(h[25] == 2);
  REQUIRE(r.records.size() == 2);
  std::multiset<uint64_t> sems{r.records[0].semigroup_size,
                               r.records[1].semigroup_size};
  CHECK(sems == std::multiset<uint64_t>{2742, 17265});
  int c6_hits = 0;
  std::string c6 = serialize_dfa(canonical_form(cerny(6)));
  for (const ExtremalRecord& rec : r.records)
    if (serialize_dfa(rec.dfa) == c6) ++c6_hits;
  CHECK(c6_hits == 1);
}

TEST_CASE("shards partition the search and merge back exactly") {
  EnumerationReport whole = run(4, 2);
  std::vector<EnumerationReport> parts;
  for (int i = 0; i < 3; ++i) {
    SearchSpec s;
    s.n = 4;
    s.q = 2;
    s.shards = 3;
    s.shard = i;
    parts.push_back(enumerate_automata(s));
  }
  EnumerationReport merged = merge_reports(parts);
  CHECK(merged.tuples == whole.tuples);
  CHECK(merged.canonical == whole.canonical);
  CHECK(merged.synchronizing == whole.synchronizing);
  CHECK(merged.alphabet_minimal == whole.alphabet_minimal);
  CHECK(hist_map(merged.histogram) == hist_map(whole.histogram));
  CHECK(merged.max_length == whole.max_length);
  REQUIRE(merged.records.size() == whole.records.size());
  for (size_t i = 0; i < merged.records.size(); ++i) {
    CHECK(merged.records[i].min_length == whole.records[i].min_length);
    CHECK(serialize_dfa(merged.records[i].dfa) ==
          serialize_dfa(whole.records[i].dfa));
  }
}

TEST_CASE("worker count does not change the report") {
  SearchSpec s;
  s.n = 4;
  s.q = 2;
  s.jobs = 4;
  EnumerationReport par = enumerate_automata(s);
  EnumerationReport seq = run(4, 2);
  CHECK(par.tuples == seq.tuples);
  CHECK(par.alphabet_minimal == seq.alphabet_minimal);
  CHECK(hist_map(par.histogram) == hist_map(seq.histogram));
  REQUIRE(par.records.size() == seq.records.size());
  for (size_t i = 0; i < par.records.size(); ++i)
    CHECK(serialize_dfa(par.records[i].dfa) ==
          serialize_dfa(seq.records[i].dfa));
}

TEST_CASE("search limits and bad arguments are rejected") {
  SearchSpec s;
  s.n = 7;
  s.q = 2;
  CHECK_THROWS_AS(enumerate_automata(s), Error);
  s.n = 4;
  s.q = 4;
  CHECK_THROWS_AS(enumerate_automata(s), Error);
  s.q = 2;
  s.shard = 2;
  s.shards = 2;
  CHECK_THROWS_AS(enumerate_automata(s), Error);
  s.shard = 0;
  s.jobs = 0;
  CHECK_THROWS_AS(enumerate_automata(s), Error);
  CHECK_THROWS_AS(merge_reports({}), Error);

  CHECK(auto_threshold(3) == 3);
  CHECK(auto_threshold(4) == 7);
  CHECK(auto_threshold(5) == 13);
  CHECK(auto_threshold(6) == 21);
}
