#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "synckit/catalog.hpp"
#include "synckit/dfa.hpp"
#include "synckit/enumerate.hpp"
#include "synckit/exact.hpp"
#include "synckit/kernels.hpp"
#include "synckit/reachability.hpp"
#include "synckit/semigroup.hpp"
#include "synckit/sync_algorithms.hpp"

using namespace synckit;
using nlohmann::json;

namespace {

struct InputOpts {
  std::string file;
  std::string name;
  std::string fixtures = "fixtures";
};

void add_input(CLI::App* cmd, InputOpts& in) {
  cmd->add_option("file", in.file,
                  "transition table file ('-' reads standard input)");
  cmd->add_option("--name", in.name,
                  "catalog automaton instead of a file, e.g. cerny:9 or kari");
  cmd->add_option("--fixtures", in.fixtures, "fixture directory")
      ->capture_default_str();
}

Dfa load_input(const InputOpts& in) {
  if (!in.name.empty() && !in.file.empty())
    fail_usage("give either a file or --name, not both");
  if (!in.name.empty()) return catalog_automaton(in.name, in.fixtures);
  if (in.file.empty()) fail_usage("no automaton given; pass a file or --name");
  if (in.file == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return parse_dfa(buf.str());
  }
  return load_dfa_file(in.file);
}

std::string one_line(const Dfa& d) {
  std::string s = serialize_dfa(d);
  for (char& c : s)
    if (c == '\n') c = '/';
  if (!s.empty() && s.back() == '/') s.pop_back();
  return s;
}

json trace_json(const SyncResult& r) {
  json steps = json::array();
  for (const SyncStep& st : r.trace) {
    json j{{"kind", st.kind},
           {"piece", word_string(st.piece)},
           {"repeat", st.repeat},
           {"set_before", st.set_before},
           {"set_after", st.set_after}};
    if (st.p >= 0) {
      j["p"] = st.p;
      j["q"] = st.q;
    }
    steps.push_back(std::move(j));
  }
  return steps;
}

// ---- enumerate report (de)serialization, used for shard checkpoints ----

json spec_json(const SearchSpec& s) {
  return json{{"n", s.n},
              {"q", s.q},
              {"threshold", s.threshold},
              {"pattern_cap", s.pattern_cap},
              {"shards", s.shards},
              {"shard", s.shard},
              {"letter_perms", s.letter_perms},
              {"require_strongly_connected", s.require_strongly_connected},
              {"prune_subalphabet", s.prune_subalphabet},
              {"dedup", s.dedup}};
}

json report_json(const EnumerationReport& r) {
  json records = json::array();
  for (const ExtremalRecord& rec : r.records)
    records.push_back(json{{"dfa", serialize_dfa(rec.dfa)},
                           {"min_length", rec.min_length},
                           {"patterns", rec.patterns},
                           {"semigroup_size", rec.semigroup_size}});
  return json{{"spec", spec_json(r.spec)},
              {"tuples", r.tuples},
              {"image_covering", r.image_covering},
              {"strongly_connected", r.strongly_connected},
              {"canonical", r.canonical},
              {"synchronizing", r.synchronizing},
              {"alphabet_minimal", r.alphabet_minimal},
              {"histogram", r.histogram},
              {"max_length", r.max_length},
              {"records", records},
              {"seconds", r.seconds}};
}

EnumerationReport report_from_json(const json& j) {
  EnumerationReport r;
  const json& s = j.at("spec");
  r.spec.n = s.at("n").get<int>();
  r.spec.q = s.at("q").get<int>();
  r.spec.threshold = s.at("threshold").get<int>();
  r.spec.pattern_cap = s.at("pattern_cap").get<uint64_t>();
  r.spec.shards = s.at("shards").get<int>();
  r.spec.shard = s.at("shard").get<int>();
  r.spec.letter_perms = s.at("letter_perms").get<bool>();
  r.spec.require_strongly_connected =
      s.at("require_strongly_connected").get<bool>();
  r.spec.prune_subalphabet = s.at("prune_subalphabet").get<bool>();
  r.spec.dedup = s.at("dedup").get<bool>();
  r.tuples = j.at("tuples").get<uint64_t>();
  r.image_covering = j.at("image_covering").get<uint64_t>();
  r.strongly_connected = j.at("strongly_connected").get<uint64_t>();
  r.canonical = j.at("canonical").get<uint64_t>();
  r.synchronizing = j.at("synchronizing").get<uint64_t>();
  r.alphabet_minimal = j.at("alphabet_minimal").get<uint64_t>();
  r.histogram = j.at("histogram").get<std::vector<uint64_t>>();
  r.max_length = j.at("max_length").get<int>();
  for (const json& rec : j.at("records")) {
    ExtremalRecord e;
    e.dfa = parse_dfa(rec.at("dfa").get<std::string>());
    e.min_length = rec.at("min_length").get<int>();
    e.patterns = rec.at("patterns").get<std::vector<std::string>>();
    e.semigroup_size = rec.at("semigroup_size").get<uint64_t>();
    r.records.push_back(std::move(e));
  }
  r.seconds = j.at("seconds").get<double>();
  return r;
}

bool same_search(const SearchSpec& a, const SearchSpec& b) {
  return a.n == b.n && a.q == b.q && a.threshold == b.threshold &&
         a.pattern_cap == b.pattern_cap && a.shards == b.shards &&
         a.letter_perms == b.letter_perms &&
         a.require_strongly_connected == b.require_strongly_connected &&
         a.prune_subalphabet == b.prune_subalphabet && a.dedup == b.dedup;
}

void print_report(const EnumerationReport& r) {
  std::cout << "states: " << r.spec.n << "  letters: " << r.spec.q << "\n"
            << "tuples scanned: " << r.tuples << "\n"
            << "image-covering: " << r.image_covering << "\n"
            << "strongly connected: " << r.strongly_connected << "\n"
            << "canonical: " << r.canonical << "\n"
            << "synchronizing: " << r.synchronizing << "\n"
            << "alphabet-minimal: " << r.alphabet_minimal << "\n";
  std::cout << "minimal-length histogram:\n";
  for (size_t i = 0; i < r.histogram.size(); ++i)
    if (r.histogram[i])
      std::cout << "  " << i << ": " << r.histogram[i] << "\n";
  std::cout << "max minimal length: " << r.max_length << "\n";
  if (!r.records.empty()) {
    std::cout << "records:\n";
    for (const ExtremalRecord& rec : r.records) {
      std::cout << "  length " << rec.min_length << "  semigroup "
                << rec.semigroup_size;
      if (!rec.patterns.empty()) {
        std::cout << "  patterns";
        for (const std::string& p : rec.patterns) std::cout << ' ' << p;
      }
      std::cout << "\n    " << one_line(rec.dfa) << "\n";
    }
  }
  std::cout << "elapsed: " << r.seconds << " s\n";
}

// ---- subcommand bodies ----

int run_check(const InputOpts& in, bool as_json) {
  Dfa d = load_input(in);
  SyncCheck c = check_synchronizing(d);
  if (as_json)
    std::cout << json{{"synchronizing", c.synchronizing},
                      {"used_pair_stage", c.used_pair_stage},
                      {"sink_component", c.sink_component}}
                     .dump(2)
              << "\n";
  else
    std::cout << (c.synchronizing ? "synchronizing" : "not synchronizing")
              << "\n";
  return c.synchronizing ? 0 : 1;
}

int run_sync(const InputOpts& in, const std::string& algo,
             const std::string& order, bool plain_cycle, bool show_trace,
             bool as_json) {
  Dfa d = load_input(in);
  SyncResult r;
  if (algo == "eppstein") {
    r = eppstein_greedy(d);
  } else if (algo == "cycle") {
    r = cycle_greedy(d, !plain_cycle);
  } else if (algo == "semigroup") {
    SecondOrder so = SecondOrder::CostPerMerge;
    if (order == "length")
      so = SecondOrder::LengthFirst;
    else if (order == "preimage")
      so = SecondOrder::PreimageFirst;
    else if (order != "cost")
      fail_usage("unknown --order '" + order + "'");
    r = semigroup_greedy(d, so);
  } else {
    fail_usage("unknown --algo '" + algo + "'");
  }
  if (as_json) {
    json j{{"algorithm", algo_name(r.algorithm)},
           {"length", r.length()},
           {"word", word_string(r.word)},
           {"over_quadratic", r.over_quadratic}};
    if (show_trace) j["trace"] = trace_json(r);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "algorithm: " << algo_name(r.algorithm) << "\n"
            << "length: " << r.length() << "\n"
            << "word: " << word_string(r.word) << "\n";
  if (r.over_quadratic)
    std::cout << "note: length exceeds the square of the state count\n";
  if (show_trace)
    for (const SyncStep& st : r.trace) {
      std::cout << "  " << st.kind;
      if (st.p >= 0) std::cout << " (" << st.p << "," << st.q << ")";
      std::cout << " piece " << word_string(st.piece);
      if (st.repeat > 1) std::cout << " x" << st.repeat;
      std::cout << "  " << st.set_before << " -> " << st.set_after << "\n";
    }
  return 0;
}

int run_exact(const InputOpts& in, bool patterns, uint64_t cap, bool as_json) {
  Dfa d = load_input(in);
  ExactResult r = minimal_sync_word(d);
  if (!r.synchronizing) fail_domain("automaton is not synchronizing");
  std::vector<std::string> pats;
  if (patterns) pats = minimal_word_patterns(d, int(r.length), cap);
  if (as_json) {
    json j{{"length", r.length},
           {"word", word_string(r.word)},
           {"visited_sets", r.visited}};
    if (patterns) j["patterns"] = pats;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "length: " << r.length << "\n"
            << "word: " << word_string(r.word) << "\n"
            << "visited sets: " << r.visited << "\n";
  if (patterns) {
    if (pats.empty())
      std::cout << "patterns: skipped (past --cap)\n";
    else {
      std::cout << "patterns:\n";
      for (const std::string& p : pats) std::cout << "  " << p << "\n";
    }
  }
  return 0;
}

int run_semigroup(const InputOpts& in, uint64_t cap, bool as_json) {
  Dfa d = load_input(in);
  ClosureResult c = semigroup_closure(d, cap);
  Word w;
  if (c.first_constant >= 0) w = c.witness(c.first_constant);
  if (as_json) {
    json j{{"size", c.size}, {"capped", c.capped}};
    if (c.first_constant >= 0) {
      j["reset_word"] = word_string(w);
      j["reset_length"] = w.size();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "size: " << c.size << (c.capped ? " (capped)" : "") << "\n";
  if (c.first_constant >= 0)
    std::cout << "shortest reset word: " << word_string(w) << " (length "
              << w.size() << ")\n";
  else
    std::cout << "no constant map"
              << (c.capped ? " within the cap" : "; not synchronizing")
              << "\n";
  return 0;
}

int run_enumerate(SearchSpec spec, int shard_opt,
                  const std::string& checkpoint_dir, bool as_json) {
  EnumerationReport report;
  if (checkpoint_dir.empty()) {
    spec.shard = shard_opt < 0 ? 0 : shard_opt;
    if (shard_opt < 0 && spec.shards > 1)
      fail_usage("pick --shard, or add --checkpoint-dir to run every shard");
    report = enumerate_automata(spec);
  } else {
    if (shard_opt >= 0)
      fail_usage("--shard conflicts with --checkpoint-dir (which runs all)");
    namespace fs = std::filesystem;
    fs::create_directories(checkpoint_dir);
    std::vector<EnumerationReport> parts;
    for (int i = 0; i < spec.shards; ++i) {
      spec.shard = i;
      const std::string path = checkpoint_dir + "/shard-" +
                               std::to_string(i) + "-of-" +
                               std::to_string(spec.shards) + ".json";
      if (fs::exists(path)) {
        std::ifstream f(path);
        json j;
        try {
          f >> j;
          parts.push_back(report_from_json(j));
        } catch (const json::exception& e) {
          fail_usage(path + " is unreadable: " + std::string(e.what()));
        }
        if (!same_search(parts.back().spec, spec) ||
            parts.back().spec.shard != i)
          fail_usage(path + " comes from a different search; remove it");
        std::cerr << "shard " << i << ": reused " << path << "\n";
        continue;
      }
      parts.push_back(enumerate_automata(spec));
      std::ofstream f(path);
      f << report_json(parts.back()).dump(2) << "\n";
      if (!f) fail_usage("cannot write " + path);
      std::cerr << "shard " << i << ": wrote " << path << "\n";
    }
    report = merge_reports(parts);
  }
  if (as_json)
    std::cout << report_json(report).dump(2) << "\n";
  else
    print_report(report);
  return 0;
}

int run_catalog(const std::string& name, const std::string& fixtures,
                bool as_json) {
  if (name.empty()) {
    std::vector<CatalogEntry> entries = catalog_entries(fixtures);
    if (as_json) {
      json j = json::array();
      for (const CatalogEntry& e : entries)
        j.push_back(json{{"name", e.name},
                         {"file", e.file},
                         {"min_length", e.min_length},
                         {"semigroup_size", e.semigroup_size},
                         {"note", e.note}});
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    std::cout << "cerny:<n>  generated on demand, shortest reset word "
                 "(n-1)^2\n";
    for (const CatalogEntry& e : entries)
      std::cout << e.name << "  length " << e.min_length << ", semigroup "
                << e.semigroup_size << "  -- " << e.note << "\n";
    return 0;
  }
  Dfa d = catalog_automaton(name, fixtures);
  if (as_json) {
    ExactResult r = minimal_sync_word(d);
    std::cout << json{{"name", name},
                      {"dfa", serialize_dfa(d)},
                      {"min_length", r.length},
                      {"semigroup_size", semigroup_size(d).size}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::cout << serialize_dfa(d);  // parseable as-is
  return 0;
}

int run_kernels() {
  std::cout << "active: " << kernels::active().name << "\n";
  for (const char* n : {"scalar", "avx2"})
    std::cout << n << ": "
              << (kernels::by_name(n) ? "available" : "unavailable") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "synckit: synchronization of deterministic finite automata.\n"
      "Transition tables are 'n q' followed by one row per letter.\n"
      "Exit status: 0 success, 1 domain answer/failure, 2 bad usage."};
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  InputOpts in;
  CLI::App* check =
      app.add_subcommand("check", "decide synchronizability (exit 1 when not)");
  add_input(check, in);

  CLI::App* sync = app.add_subcommand("sync", "find a short reset word");
  add_input(sync, in);
  std::string algo = "semigroup";
  std::string order = "cost";
  bool plain_cycle = false;
  bool show_trace = false;
  sync->add_option("--algo", algo, "eppstein | cycle | semigroup")
      ->capture_default_str();
  sync->add_option("--order", order,
                   "semigroup ranking: cost | length | preimage")
      ->capture_default_str();
  sync->add_flag("--plain-cycle", plain_cycle,
                 "cycle algorithm without completion units");
  sync->add_flag("--trace", show_trace, "show per-step set sizes");

  CLI::App* exact =
      app.add_subcommand("exact", "shortest reset word (subset search)");
  add_input(exact, in);
  bool patterns = false;
  uint64_t pattern_cap = 1ull << 26;
  exact->add_flag("--patterns", patterns,
                  "list letter patterns of all shortest words");
  exact->add_option("--cap", pattern_cap,
                    "skip patterns when letters^length exceeds this")
      ->capture_default_str();

  CLI::App* semigroup =
      app.add_subcommand("semigroup", "transition-semigroup closure");
  add_input(semigroup, in);
  uint64_t closure_cap = 1000000;
  semigroup->add_option("--cap", closure_cap, "stop after this many elements")
      ->capture_default_str();

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "census of small automata");
  SearchSpec spec;
  int shard_opt = -1;
  std::string checkpoint_dir;
  enumerate->add_option("-n,--states", spec.n, "state count")->required();
  enumerate->add_option("-q,--letters", spec.q, "letter count")->required();
  enumerate->add_option("--threshold", spec.threshold,
                        "record automata at this length and up (-1: auto)");
  enumerate->add_option("--pattern-cap", spec.pattern_cap,
                        "skip record patterns past this letters^length")
      ->capture_default_str();
  enumerate->add_option("--shards", spec.shards, "split the search")
      ->capture_default_str();
  enumerate->add_option("--shard", shard_opt, "run only this piece");
  enumerate->add_option("--jobs", spec.jobs, "worker threads")
      ->capture_default_str();
  enumerate->add_option("--checkpoint-dir", checkpoint_dir,
                        "run all shards, caching each as JSON here");
  bool no_prune = false;
  bool no_dedup = false;
  bool no_letter_perm = false;
  bool no_sc = false;
  enumerate->add_flag("--no-prune", no_prune,
                      "keep automata whose letter subsets synchronize");
  enumerate->add_flag("--no-dedup", no_dedup,
                      "count labeled automata, not isomorphism classes");
  enumerate->add_flag("--no-letter-perm", no_letter_perm,
                      "treat letter renamings as distinct");
  enumerate->add_flag("--no-sc-filter", no_sc,
                      "include automata that are not strongly connected");

  CLI::App* catalog =
      app.add_subcommand("catalog", "list or print named automata");
  std::string cat_name;
  std::string cat_fixtures = "fixtures";
  catalog->add_option("name", cat_name, "entry to print (omit to list)");
  catalog->add_option("--fixtures", cat_fixtures, "fixture directory")
      ->capture_default_str();

  CLI::App* kern = app.add_subcommand("kernels", "show kernel dispatch");

  for (CLI::App* sub : {check, sync, exact, semigroup, enumerate, catalog, kern})
    sub->fallthrough();  // so --json may follow the subcommand

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check)) return run_check(in, as_json);
    if (app.got_subcommand(sync))
      return run_sync(in, algo, order, plain_cycle, show_trace, as_json);
    if (app.got_subcommand(exact))
      return run_exact(in, patterns, pattern_cap, as_json);
    if (app.got_subcommand(semigroup))
      return run_semigroup(in, closure_cap, as_json);
    if (app.got_subcommand(enumerate)) {
      spec.prune_subalphabet = !no_prune;
      spec.dedup = !no_dedup;
      spec.letter_perms = !no_letter_perm;
      spec.require_strongly_connected = !no_sc;
      return run_enumerate(spec, shard_opt, checkpoint_dir, as_json);
    }
    if (app.got_subcommand(catalog))
      return run_catalog(cat_name, cat_fixtures, as_json);
    if (app.got_subcommand(kern)) return run_kernels();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Domain ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
