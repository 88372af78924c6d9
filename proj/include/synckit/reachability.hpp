#pragma once
#include "synckit/dfa.hpp"

namespace synckit {

struct SccInfo {
  int count = 0;
  std::vector<int> comp;   // state -> component id, ids in reverse topological
                           // order (every edge goes to an equal or lower id)
  std::vector<int> sinks;  // component ids with no edges leaving them
};
SccInfo scc(const Dfa& d);

bool is_strongly_connected(const Dfa& d);

struct SyncCheck {
  bool synchronizing = false;
  bool used_pair_stage = false;  // false when the component structure already
                                 // decided the answer
  int sink_component = -1;       // valid when there is exactly one sink
};
SyncCheck check_synchronizing(const Dfa& d);
bool is_synchronizing(const Dfa& d);

// Greedy word driving every state into the unique sink component, moving one
// outside state at a time.  outside_count is the number of states initially
// outside; the word length never exceeds outside_count * n.
struct SinkWordResult {
  Word word;
  int outside_count = 0;
};
SinkWordResult word_into_sink_scc(const Dfa& d);

}  // namespace synckit
