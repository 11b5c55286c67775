#pragma once

// Free-group word algebra over a rank-k alphabet.
//
// Letters are signed integers: +i is the i-th generator (1-based), -i its
// inverse. The empty word is a valid reduced word. All operations keep words
// freely reduced; cyclic words are kept cyclically reduced.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

using Letter = int;

inline Letter inv(Letter x) { return -x; }

// Fixed letter order a < a^-1 < b < b^-1 < ...; used for canonical rotations
// and deterministic edge exploration.
inline int letter_order_key(Letter x) {
  int idx = x > 0 ? x : -x;
  return 2 * (idx - 1) + (x < 0 ? 1 : 0);
}

inline Letter letter_from_order_key(int key) {
  int idx = key / 2 + 1;
  return (key % 2) ? -idx : idx;
}

struct Alphabet {
  int rank = 0;

  explicit Alphabet(int k) : rank(k) {
    if (k < 1) throw error("alphabet rank must be >= 1");
  }
  bool holds(Letter x) const {
    int idx = x > 0 ? x : -x;
    return idx >= 1 && idx <= rank;
  }
  bool operator==(const Alphabet& o) const { return rank == o.rank; }
};

class ReducedWord {
 public:
  ReducedWord() = default;
  ReducedWord(int k, std::vector<Letter> letters)
      : rank_(k), letters_(std::move(letters)) {
    validate();
  }
  static ReducedWord empty(int k) { return ReducedWord(k, {}); }

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool is_empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  bool operator==(const ReducedWord& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  bool operator!=(const ReducedWord& o) const { return !(*this == o); }
  bool operator<(const ReducedWord& o) const {
    return std::lexicographical_compare(
        letters_.begin(), letters_.end(), o.letters_.begin(), o.letters_.end(),
        [](Letter a, Letter b) {
          return letter_order_key(a) < letter_order_key(b);
        });
  }

 private:
  void validate() const {
    if (rank_ < 1) throw error("word needs an alphabet of rank >= 1");
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      Letter x = letters_[i];
      int idx = x > 0 ? x : -x;
      if (idx < 1 || idx > rank_)
        throw error("letter index out of alphabet range");
      if (i + 1 < letters_.size() && letters_[i + 1] == inv(x))
        throw error("word is not freely reduced");
    }
  }

  int rank_ = 0;
  std::vector<Letter> letters_;
};

// Stack-based free reduction; the unique reduced form of the input.
inline ReducedWord free_reduce(int k, const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    int idx = x > 0 ? x : -x;
    if (idx < 1 || idx > k) throw error("letter index out of alphabet range");
    if (!out.empty() && out.back() == inv(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  return ReducedWord(k, std::move(out));
}

inline ReducedWord invert(const ReducedWord& w) {
  std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
  for (Letter& x : out) x = inv(x);
  return ReducedWord(w.rank(), std::move(out));
}

inline ReducedWord concat(const ReducedWord& u, const ReducedWord& v) {
  if (u.rank() != v.rank()) throw error("alphabet mismatch in concat");
  std::vector<Letter> all = u.letters();
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return free_reduce(u.rank(), all);
}

inline ReducedWord prefix(const ReducedWord& w, std::size_t m) {
  if (m > w.size()) throw error("prefix length out of range");
  return ReducedWord(w.rank(),
                     {w.letters().begin(), w.letters().begin() + m});
}

inline ReducedWord pow(const ReducedWord& w, int m) {
  ReducedWord r = ReducedWord::empty(w.rank());
  ReducedWord base = m >= 0 ? w : invert(w);
  for (int i = 0; i < std::abs(m); ++i) r = concat(r, base);
  return r;
}

inline bool is_cyclically_reduced(const ReducedWord& w) {
  if (w.size() <= 1) return true;
  return w.letters().front() != inv(w.letters().back());
}

// Booth's least-rotation algorithm on the letter-order keys.
inline std::size_t least_rotation_index(const std::vector<Letter>& s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  auto at = [&](std::size_t i) { return letter_order_key(s[i % n]); };
  std::vector<long> f(2 * n, -1);
  std::size_t kk = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    long i = f[j - kk - 1];
    while (i != -1 && at(j) != at(kk + i + 1)) {
      if (at(j) < at(kk + i + 1)) kk = j - i - 1;
      i = f[i];
    }
    if (i == -1 && at(j) != at(kk)) {
      if (at(j) < at(kk)) kk = j;
      f[j - kk] = -1;
    } else {
      f[j - kk] = i + 1;
    }
  }
  return kk;
}

// A cyclically reduced word up to cyclic permutation (a conjugacy class).
// The canonical representative is the least rotation in the fixed letter
// order, so equality and hashing are deterministic.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(const ReducedWord& rep) : rank_(rep.rank()) {
    if (!is_cyclically_reduced(rep))
      throw error("cyclic word needs a cyclically reduced representative");
    const auto& ls = rep.letters();
    std::size_t r = least_rotation_index(ls);
    letters_.reserve(ls.size());
    for (std::size_t i = 0; i < ls.size(); ++i)
      letters_.push_back(ls[(r + i) % ls.size()]);
  }

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool is_empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter at(std::size_t i) const { return letters_[i % letters_.size()]; }
  ReducedWord representative() const { return ReducedWord(rank_, letters_); }

  bool operator==(const CyclicWord& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  bool operator!=(const CyclicWord& o) const { return !(*this == o); }

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;  // canonical rotation
};

struct CyclicReduction {
  ReducedWord conjugator;  // cancelling prefix plus the canonical rotation
  CyclicWord core;
};

// w = conjugator * core * conjugator^-1 as group elements.
inline CyclicReduction cyclic_reduce(const ReducedWord& w) {
  const auto& ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == inv(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  std::vector<Letter> conj(ls.begin(), ls.begin() + lo);
  std::vector<Letter> core(ls.begin() + lo, ls.begin() + hi);
  // The canonical representative is a rotation of the literal core; absorb
  // the rotation offset into the conjugator to keep the identity exact.
  if (!core.empty()) {
    std::size_t j = least_rotation_index(core);
    conj.insert(conj.end(), core.begin(), core.begin() + j);
  }
  return {ReducedWord(w.rank(), std::move(conj)),
          CyclicWord(ReducedWord(w.rank(), std::move(core)))};
}

// gamma_A = 2k(2k-1)^{A-1}; gamma_0 = 1 (the empty word).
inline BigInt count_reduced_words(int k, int length) {
  if (k < 1 || length < 0) throw error("count_reduced_words: bad arguments");
  if (length == 0) return 1;
  BigInt r = 2 * k;
  for (int i = 1; i < length; ++i) r *= 2 * k - 1;
  return r;
}

inline BigInt ball_size(int k, int radius) {
  BigInt total = 0;
  for (int a = 0; a <= radius; ++a) total += count_reduced_words(k, a);
  return total;
}

// Enumerates all reduced words of the given length in lexicographic
// letter order. Intended for small lengths (gamma_L words).
inline void for_each_reduced_word(
    int k, int length, const std::function<void(const ReducedWord&)>& fn) {
  std::vector<Letter> cur;
  cur.reserve(length);
  std::function<void()> rec = [&]() {
    if ((int)cur.size() == length) {
      fn(ReducedWord(k, cur));
      return;
    }
    for (int key = 0; key < 2 * k; ++key) {
      Letter x = letter_from_order_key(key);
      if (!cur.empty() && cur.back() == inv(x)) continue;
      cur.push_back(x);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

// --- word text format -------------------------------------------------------
//
// For k <= 26: 'a'..'z' are generators 1..26, 'A'..'Z' their inverses.
// For k > 26: whitespace-separated tokens "x3" / "X3".
// The empty word is the literal "1".

inline std::string print_word(const ReducedWord& w) {
  if (w.is_empty()) return "1";
  std::string out;
  if (w.rank() <= 26) {
    for (Letter x : w.letters())
      out += char((x > 0 ? 'a' : 'A') + (x > 0 ? x : -x) - 1);
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) {
      Letter x = w[i];
      if (i) out += ' ';
      out += (x > 0 ? 'x' : 'X') + std::to_string(x > 0 ? x : -x);
    }
  }
  return out;
}

inline std::string print_word(const CyclicWord& w) {
  return print_word(w.representative());
}

inline std::vector<Letter> parse_letters(int k, const std::string& text) {
  std::vector<Letter> ls;
  if (text == "1") return ls;
  if (k <= 26) {
    for (char c : text) {
      if (c == ' ' || c == '\t') continue;
      if (c >= 'a' && c <= 'z')
        ls.push_back(c - 'a' + 1);
      else if (c >= 'A' && c <= 'Z')
        ls.push_back(-(c - 'A' + 1));
      else
        throw error(std::string("bad letter '") + c + "' in word");
      int idx = std::abs(ls.back());
      if (idx > k) throw error("letter index out of alphabet range");
    }
  } else {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
      if (i >= text.size()) break;
      char c = text[i];
      if (c != 'x' && c != 'X')
        throw error(std::string("bad token at '") + c + "'");
      ++i;
      std::size_t j = i;
      while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
      if (j == i) throw error("missing generator index in token");
      int idx = std::stoi(text.substr(i, j - i));
      if (idx < 1 || idx > k) throw error("letter index out of alphabet range");
      ls.push_back(c == 'x' ? idx : -idx);
      i = j;
    }
  }
  return ls;
}

// Parses and freely reduces.
inline ReducedWord parse_word(int k, const std::string& text) {
  return free_reduce(k, parse_letters(k, text));
}

// Parses and requires the input to already be reduced.
inline ReducedWord parse_reduced_word(int k, const std::string& text) {
  return ReducedWord(k, parse_letters(k, text));
}

}  // namespace fg
