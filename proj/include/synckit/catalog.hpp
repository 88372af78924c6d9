#pragma once
#include <string>
#include <vector>

#include "synckit/dfa.hpp"

namespace synckit {

// Named automata: the generated family "cerny:<n>" plus fixture files listed
// in <dir>/manifest.json.  Fixtures are re-verified on load — the shortest
// reset length and the transition-semigroup size are recomputed and checked
// against the manifest, so a corrupted file cannot slip through.
struct CatalogEntry {
  std::string name;
  std::string file;
  int min_length = 0;
  uint64_t semigroup_size = 0;
  std::string note;
};

std::vector<CatalogEntry> catalog_entries(const std::string& dir = "fixtures");

Dfa catalog_automaton(const std::string& name,
                      const std::string& dir = "fixtures");

}  // namespace synckit
