#pragma once
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace synckit {

inline constexpr int kMaxStates = 256;       // hard cap for every structure
inline constexpr int kMaxSubsetStates = 28;  // cap for subset-exhaustive search
inline constexpr int kMaxLetters = 26;       // 'a'..'z'

enum class ErrorKind { Usage, Domain, Capacity };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_usage(const std::string& m) { throw Error(ErrorKind::Usage, m); }
[[noreturn]] inline void fail_domain(const std::string& m) { throw Error(ErrorKind::Domain, m); }
[[noreturn]] inline void fail_capacity(const std::string& m) { throw Error(ErrorKind::Capacity, m); }

using State = uint8_t;
using Letter = uint8_t;            // 0-based; rendered as 'a' + letter
using Word = std::vector<Letter>;  // left-to-right application order

std::string word_string(const Word& w);
Word word_from_string(const std::string& s);

// First-occurrence renaming of a word's letters: "baab" and "abba" both
// become "0110".  Used to compare reset words across letter relabelings.
std::string word_pattern(const Word& w);

// Total map [0,n) -> [0,n).  Backing storage is padded by a few bytes so the
// gather kernels may read past the logical end.
class Mapping {
 public:
  Mapping() = default;
  explicit Mapping(size_t n) : n_(n), v_(n + kPad, 0) {}
  Mapping(std::initializer_list<uint8_t> init);
  static Mapping identity(size_t n);

  size_t size() const { return n_; }
  uint8_t operator[](size_t i) const { return v_[i]; }
  uint8_t& operator[](size_t i) { return v_[i]; }
  const uint8_t* data() const { return v_.data(); }
  uint8_t* data() { return v_.data(); }

  Mapping then(const Mapping& g) const;  // x -> g[(*this)[x]]
  Mapping pow(uint64_t k) const;
  int rank() const;  // number of distinct values

  bool operator==(const Mapping& o) const;
  bool operator<(const Mapping& o) const;  // lexicographic on the value table

 private:
  static constexpr size_t kPad = 8;
  size_t n_ = 0;
  std::vector<uint8_t> v_;
};

struct MappingHash {
  size_t operator()(const Mapping& m) const;
};

// Bit set over states 0..kMaxStates-1.
struct StateSet {
  std::array<uint64_t, kMaxStates / 64> w{};

  static StateSet full(int n);
  static StateSet single(int s);

  void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(1ull << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  int count() const;
  bool empty() const;
  bool is_singleton() const { return count() == 1; }
  int lowest() const;  // smallest member, -1 if empty
  bool operator==(const StateSet&) const = default;

  template <class F>
  void for_each(F f) const {
    for (size_t k = 0; k < w.size(); ++k)
      for (uint64_t bits = w[k]; bits; bits &= bits - 1)
        f(int(k * 64) + __builtin_ctzll(bits));
  }

  std::vector<int> to_vector() const;
};

// Deterministic complete automaton over states 0..n-1 and letters 0..q-1,
// stored letter-major: letter[a] is the transformation of letter a.
struct Dfa {
  int n = 0;
  int q = 0;
  std::vector<Mapping> letter;

  static Dfa make(int n, int q);
  const Mapping& operator[](size_t a) const { return letter[a]; }
  Mapping& operator[](size_t a) { return letter[a]; }
  bool operator==(const Dfa&) const = default;
};

// The n-state two-letter automaton with a cycling letter a and a letter b
// that moves only state 0; its shortest reset word has length (n-1)^2.
Dfa cerny(int n);

State apply_letter(const Dfa& d, State s, Letter a);
State apply_word(const Dfa& d, State s, const Word& w);
StateSet image_of_set(const Dfa& d, const StateSet& s, Letter a);
StateSet image_of_word(const Dfa& d, StateSet s, const Word& w);
Mapping mapping_of_word(const Dfa& d, const Word& w);
int word_rank(const Dfa& d, const Word& w);
int word_defect(const Dfa& d, const Word& w);  // n - rank
bool is_reset_word(const Dfa& d, const Word& w);

// Sub-automaton over a subset of the letters (states unchanged).
Dfa restrict_alphabet(const Dfa& d, const std::vector<Letter>& keep);

// Text format: first line "n q", then q lines of n transition targets
// (line a lists s*a for s = 0..n-1).  '#' starts a comment; blank lines are
// skipped.  serialize/parse round-trip exactly.
Dfa parse_dfa(const std::string& text);
std::string serialize_dfa(const Dfa& d);
Dfa load_dfa_file(const std::string& path);

void validate_dfa(const Dfa& d);  // throws Domain on malformed tables

}  // namespace synckit
