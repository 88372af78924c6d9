#include "synckit/catalog.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "synckit/exact.hpp"
#include "synckit/semigroup.hpp"

namespace synckit {
namespace {

// How to rebuild each fixture if it goes missing: the census search that
// produced it, at the threshold where it shows up as a record.
const std::map<std::string, std::string>& generators() {
  static const std::map<std::string, std::string> g = {
      {"cpr", "synckit enumerate -n 4 -q 2 --threshold 9"},
      {"new3-1", "synckit enumerate -n 3 -q 2 --threshold 4"},
      {"new3-2", "synckit enumerate -n 3 -q 3 --threshold 4"},
      {"new3-3", "synckit enumerate -n 3 -q 3 --threshold 4"},
      {"new4-1", "synckit enumerate -n 4 -q 3 --threshold 9"},
      {"new4-2", "synckit enumerate -n 4 -q 3 --threshold 9"},
      {"kari", "synckit enumerate -n 6 -q 2 --threshold 25"},
      {"roman", "synckit enumerate -n 5 -q 3 --threshold 16"},
  };
  return g;
}

[[noreturn]] void fail_missing(const std::string& what,
                               const std::string& name) {
  std::string msg = what;
  auto it = generators().find(name);
  if (it != generators().end())
    msg += "; regenerate it with `" + it->second + "`";
  fail_usage(msg);
}

nlohmann::json load_manifest(const std::string& dir) {
  const std::string path = dir + "/manifest.json";
  std::ifstream in(path);
  if (!in) fail_usage("cannot open fixture manifest " + path);
  nlohmann::json m;
  try {
    in >> m;
  } catch (const nlohmann::json::exception& e) {
    fail_usage(path + " is not valid JSON: " + e.what());
  }
  if (!m.is_object()) fail_usage(path + " must hold one object per fixture");
  return m;
}

CatalogEntry parse_entry(const std::string& name, const nlohmann::json& j) {
  CatalogEntry e;
  e.name = name;
  try {
    e.file = j.at("file").get<std::string>();
    e.min_length = j.at("min_length").get<int>();
    e.semigroup_size = j.at("semigroup_size").get<uint64_t>();
    e.note = j.value("note", "");
  } catch (const nlohmann::json::exception& ex) {
    fail_usage("fixture entry '" + name + "' is malformed: " + ex.what());
  }
  return e;
}

Dfa load_fixture(const CatalogEntry& e, const std::string& dir) {
  const std::string path = dir + "/" + e.file;
  std::ifstream in(path);
  if (!in) fail_missing("fixture file " + path + " is missing", e.name);
  std::stringstream buf;
  buf << in.rdbuf();
  Dfa d = parse_dfa(buf.str());
  const ExactResult exact = minimal_sync_word(d);
  if (!exact.synchronizing || exact.length != uint64_t(e.min_length))
    fail_domain("fixture '" + e.name + "' failed validation: shortest reset " +
                "word has length " +
                (exact.synchronizing ? std::to_string(exact.length)
                                     : std::string("none")) +
                ", manifest says " + std::to_string(e.min_length));
  const SemigroupSize sem = semigroup_size(d);
  if (sem.capped || sem.size != e.semigroup_size)
    fail_domain("fixture '" + e.name + "' failed validation: semigroup size " +
                std::to_string(sem.size) + ", manifest says " +
                std::to_string(e.semigroup_size));
  return d;
}

}  // namespace

std::vector<CatalogEntry> catalog_entries(const std::string& dir) {
  nlohmann::json m = load_manifest(dir);
  std::vector<CatalogEntry> out;
  for (const auto& [name, j] : m.items()) out.push_back(parse_entry(name, j));
  return out;
}

Dfa catalog_automaton(const std::string& name, const std::string& dir) {
  if (name.rfind("cerny:", 0) == 0) {
    int n = 0;
    try {
      size_t used = 0;
      n = std::stoi(name.substr(6), &used);
      if (used != name.size() - 6) throw std::invalid_argument(name);
    } catch (const std::exception&) {
      fail_usage("bad catalog name '" + name + "': want cerny:<states>");
    }
    return cerny(n);
  }
  nlohmann::json m = load_manifest(dir);
  if (!m.contains(name)) {
    std::string known = "cerny:<n>";
    for (const auto& [k, v] : m.items()) known += ", " + k;
    fail_missing("no fixture named '" + name + "' (have: " + known + ")",
                 name);
  }
  return load_fixture(parse_entry(name, m.at(name)), dir);
}

}  // namespace synckit
