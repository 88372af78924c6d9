#include "synckit/dfa.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include "synckit/kernels.hpp"

namespace synckit {

std::string word_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter a : w) s.push_back(char('a' + a));
  return s;
}

Word word_from_string(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    if (c < 'a' || c >= 'a' + kMaxLetters) fail_usage("bad letter in word: " + s);
    w.push_back(Letter(c - 'a'));
  }
  return w;
}

std::string word_pattern(const Word& w) {
  std::array<int, kMaxLetters> seen;
  seen.fill(-1);
  int next = 0;
  std::string out;
  out.reserve(w.size());
  for (Letter a : w) {
    if (seen[a] < 0) seen[a] = next++;
    out.push_back(char('0' + seen[a]));
  }
  return out;
}

Mapping::Mapping(std::initializer_list<uint8_t> init) : Mapping(init.size()) {
  size_t i = 0;
  for (uint8_t v : init) v_[i++] = v;
}

Mapping Mapping::identity(size_t n) {
  Mapping m(n);
  for (size_t i = 0; i < n; ++i) m[i] = uint8_t(i);
  return m;
}

Mapping Mapping::then(const Mapping& g) const {
  Mapping out(n_);
  kernels::active().compose(data(), g.data(), out.data(), n_);
  return out;
}

Mapping Mapping::pow(uint64_t k) const {
  Mapping acc = identity(n_);
  Mapping base = *this;
  while (k) {
    if (k & 1) acc = acc.then(base);
    base = base.then(base);
    k >>= 1;
  }
  return acc;
}

int Mapping::rank() const {
  std::array<uint64_t, kMaxStates / 64> seen{};
  for (size_t i = 0; i < n_; ++i) seen[v_[i] >> 6] |= 1ull << (v_[i] & 63);
  int r = 0;
  for (uint64_t x : seen) r += std::popcount(x);
  return r;
}

bool Mapping::operator==(const Mapping& o) const {
  return n_ == o.n_ && std::equal(v_.begin(), v_.begin() + n_, o.v_.begin());
}

bool Mapping::operator<(const Mapping& o) const {
  return std::lexicographical_compare(v_.begin(), v_.begin() + n_, o.v_.begin(),
                                      o.v_.begin() + o.n_);
}

size_t MappingHash::operator()(const Mapping& m) const {
  // FNV-1a over the value table
  uint64_t h = 1469598103934665603ull;
  for (size_t i = 0; i < m.size(); ++i) {
    h ^= m[i];
    h *= 1099511628211ull;
  }
  return size_t(h);
}

StateSet StateSet::full(int n) {
  StateSet s;
  for (int i = 0; i < n; ++i) s.set(i);
  return s;
}

StateSet StateSet::single(int st) {
  StateSet s;
  s.set(st);
  return s;
}

int StateSet::count() const {
  int c = 0;
  for (uint64_t x : w) c += std::popcount(x);
  return c;
}

bool StateSet::empty() const {
  for (uint64_t x : w)
    if (x) return false;
  return true;
}

int StateSet::lowest() const {
  for (size_t k = 0; k < w.size(); ++k)
    if (w[k]) return int(k * 64) + __builtin_ctzll(w[k]);
  return -1;
}

std::vector<int> StateSet::to_vector() const {
  std::vector<int> v;
  for_each([&](int s) { v.push_back(s); });
  return v;
}

Dfa Dfa::make(int n, int q) {
  if (n < 1 || n > kMaxStates) fail_capacity("state count out of range: " + std::to_string(n));
  if (q < 1 || q > kMaxLetters) fail_capacity("letter count out of range: " + std::to_string(q));
  Dfa d;
  d.n = n;
  d.q = q;
  d.letter.assign(q, Mapping(n));
  return d;
}

Dfa cerny(int n) {
  Dfa d = Dfa::make(n, 2);
  for (int s = 0; s < n; ++s) {
    d.letter[0][s] = uint8_t((s + 1) % n);
    d.letter[1][s] = uint8_t(s == 0 ? 1 % n : s);
  }
  return d;
}

State apply_letter(const Dfa& d, State s, Letter a) {
  if (a >= d.q || s >= d.n) fail_usage("state or letter out of range");
  return d.letter[a][s];
}

State apply_word(const Dfa& d, State s, const Word& w) {
  for (Letter a : w) s = apply_letter(d, s, a);
  return s;
}

StateSet image_of_set(const Dfa& d, const StateSet& s, Letter a) {
  if (a >= d.q) fail_usage("letter out of range");
  StateSet out;
  const Mapping& m = d.letter[a];
  s.for_each([&](int st) { out.set(m[st]); });
  return out;
}

StateSet image_of_word(const Dfa& d, StateSet s, const Word& w) {
  for (Letter a : w) s = image_of_set(d, s, a);
  return s;
}

Mapping mapping_of_word(const Dfa& d, const Word& w) {
  Mapping m = Mapping::identity(d.n);
  for (Letter a : w) {
    if (a >= d.q) fail_usage("letter out of range");
    m = m.then(d.letter[a]);
  }
  return m;
}

int word_rank(const Dfa& d, const Word& w) { return mapping_of_word(d, w).rank(); }

int word_defect(const Dfa& d, const Word& w) { return d.n - word_rank(d, w); }

bool is_reset_word(const Dfa& d, const Word& w) { return word_rank(d, w) == 1; }

Dfa restrict_alphabet(const Dfa& d, const std::vector<Letter>& keep) {
  if (keep.empty()) fail_usage("empty letter subset");
  Dfa out;
  out.n = d.n;
  out.q = int(keep.size());
  for (Letter a : keep) {
    if (a >= d.q) fail_usage("letter out of range in subset");
    out.letter.push_back(d.letter[a]);
  }
  return out;
}

void validate_dfa(const Dfa& d) {
  if (d.n < 1 || d.n > kMaxStates) fail_domain("state count out of range");
  if (d.q < 1 || d.q > kMaxLetters) fail_domain("letter count out of range");
  if (int(d.letter.size()) != d.q) fail_domain("letter table count mismatch");
  for (const Mapping& m : d.letter) {
    if (int(m.size()) != d.n) fail_domain("transition row length mismatch");
    for (size_t s = 0; s < m.size(); ++s)
      if (m[s] >= d.n) fail_domain("transition target out of range");
  }
}

Dfa parse_dfa(const std::string& text) {
  // strip comments, then read plain integers
  std::string clean;
  clean.reserve(text.size());
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    clean.push_back(comment ? ' ' : c);
  }
  std::istringstream in(clean);
  long n = 0, q = 0;
  if (!(in >> n >> q)) fail_domain("cannot read automaton header (want: n q)");
  if (n < 1 || n > kMaxStates || q < 1 || q > kMaxLetters)
    fail_domain("automaton header out of range");
  Dfa d = Dfa::make(int(n), int(q));
  for (int a = 0; a < q; ++a)
    for (int s = 0; s < n; ++s) {
      long t;
      if (!(in >> t)) fail_domain("truncated transition table");
      if (t < 0 || t >= n) fail_domain("transition target out of range");
      d.letter[a][s] = uint8_t(t);
    }
  long extra;
  if (in >> extra) fail_domain("trailing data after transition table");
  return d;
}

std::string serialize_dfa(const Dfa& d) {
  std::ostringstream out;
  out << d.n << ' ' << d.q << '\n';
  for (int a = 0; a < d.q; ++a) {
    for (int s = 0; s < d.n; ++s) out << (s ? " " : "") << int(d.letter[a][s]);
    out << '\n';
  }
  return out.str();
}

Dfa load_dfa_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail_usage("cannot open file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_dfa(buf.str());
}

}  // namespace synckit
