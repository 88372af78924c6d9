#include "synckit/semigroup.hpp"

#include <algorithm>
#include <unordered_map>

namespace synckit {

Word ClosureResult::witness(size_t idx) const {
  Word w;
  int32_t i = int32_t(idx);
  while (i >= 0) {
    w.push_back(Letter(parent[i].second));
    i = parent[i].first;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

ClosureResult semigroup_closure(const Dfa& d, uint64_t size_cap) {
  validate_dfa(d);
  if (size_cap == 0) fail_usage("size cap must be positive");
  ClosureResult r;
  std::unordered_map<Mapping, uint32_t, MappingHash> index;
  index.reserve(1024);
  auto add = [&](const Mapping& m, int32_t from, int8_t a) {
    if (index.find(m) != index.end()) return false;
    index.emplace(m, uint32_t(r.elems.size()));
    r.elems.push_back(m);
    r.parent.emplace_back(from, a);
    if (r.first_constant < 0 && m.rank() == 1) r.first_constant = int(r.elems.size()) - 1;
    return true;
  };
  for (int a = 0; a < d.q && r.elems.size() < size_cap; ++a)
    add(d.letter[a], -1, int8_t(a));
  // breadth-first over right products by one letter
  for (size_t head = 0; head < r.elems.size() && r.elems.size() < size_cap; ++head)
    for (int a = 0; a < d.q && r.elems.size() < size_cap; ++a)
      add(r.elems[head].then(d.letter[a]), int32_t(head), int8_t(a));
  r.size = r.elems.size();
  // capped means the enumeration may be incomplete: the queue still held
  // unexpanded elements when the cap was reached
  if (r.size >= size_cap) {
    bool frontier_done = true;
    for (size_t head = 0; head < r.elems.size() && frontier_done; ++head)
      for (int a = 0; a < d.q && frontier_done; ++a)
        if (index.find(r.elems[head].then(d.letter[a])) == index.end())
          frontier_done = false;
    r.capped = !frontier_done;
  }
  return r;
}

SemigroupSize semigroup_size(const Dfa& d, uint64_t size_cap) {
  ClosureResult r = semigroup_closure(d, size_cap);
  return {r.capped, r.size};
}

}  // namespace synckit
