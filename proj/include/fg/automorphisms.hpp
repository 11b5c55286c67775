#pragma once

// Relabeling automorphisms, Whitehead automorphisms, and words in them.
//
// Whitehead automorphism convention, fixed once for the whole project: for a
// multiplier letter a and a cut set A with a in A, a^-1 not in A,
//   a      -> a
//   x in A, x^-1 not in A    -> x a
//   x not in A, x^-1 in A    -> a^-1 x
//   x in A and x^-1 in A     -> a^-1 x a
//   otherwise                -> x
// (x ranges over letters distinct from a, a^-1).

#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "fg/words.hpp"

namespace fg {

// An automorphism permuting X^{+-1}, commuting with inversion. Stored as the
// images of the positive letters.
class Relabeling {
 public:
  explicit Relabeling(int k) : image_(k) {
    std::iota(image_.begin(), image_.end(), 1);
  }
  Relabeling(int k, std::vector<Letter> images) : image_(std::move(images)) {
    if ((int)image_.size() != k) throw error("relabeling image size mismatch");
    std::vector<bool> seen(k, false);
    for (Letter x : image_) {
      int idx = std::abs(x);
      if (idx < 1 || idx > k || seen[idx - 1])
        throw error("relabeling image is not a signed permutation");
      seen[idx - 1] = true;
    }
  }

  int rank() const { return (int)image_.size(); }
  Letter apply(Letter x) const {
    Letter y = image_[std::abs(x) - 1];
    return x > 0 ? y : inv(y);
  }
  bool is_identity() const {
    for (int i = 0; i < rank(); ++i)
      if (image_[i] != i + 1) return false;
    return true;
  }
  Relabeling inverse() const {
    std::vector<Letter> img(rank());
    for (int i = 0; i < rank(); ++i) {
      Letter y = image_[i];
      img[std::abs(y) - 1] = y > 0 ? (i + 1) : -(i + 1);
    }
    return Relabeling(rank(), img);
  }
  bool operator==(const Relabeling& o) const { return image_ == o.image_; }

  ReducedWord apply(const ReducedWord& w) const {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter x : w.letters()) out.push_back(apply(x));
    return ReducedWord(w.rank(), std::move(out));
  }

 private:
  std::vector<Letter> image_;
};

// All 2^k * k! relabelings, in a deterministic order.
inline std::vector<Relabeling> enumerate_relabelings(int k) {
  if (k > 8) throw error("relabeling enumeration limited to rank <= 8");
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Relabeling> out;
  do {
    for (unsigned signs = 0; signs < (1u << k); ++signs) {
      std::vector<Letter> img(k);
      for (int i = 0; i < k; ++i)
        img[i] = (signs >> i) & 1 ? -perm[i] : perm[i];
      out.emplace_back(k, img);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

class WhiteheadAuto {
 public:
  WhiteheadAuto(int k, Letter multiplier, std::set<Letter> cut)
      : rank_(k), multiplier_(multiplier), cut_(std::move(cut)) {
    if (std::abs(multiplier_) < 1 || std::abs(multiplier_) > k)
      throw error("whitehead multiplier out of range");
    if (!cut_.count(multiplier_) || cut_.count(inv(multiplier_)))
      throw error("cut set must contain the multiplier and not its inverse");
    for (Letter x : cut_)
      if (std::abs(x) < 1 || std::abs(x) > k)
        throw error("cut set letter out of range");
  }

  int rank() const { return rank_; }
  Letter multiplier() const { return multiplier_; }
  const std::set<Letter>& cut() const { return cut_; }

  bool is_identity() const { return cut_.size() == 1; }
  bool is_inner() const { return (int)cut_.size() == 2 * rank_ - 1; }
  bool is_proper() const { return !is_identity() && !is_inner(); }

  // Image of a single letter, already freely reduced.
  std::vector<Letter> image(Letter x) const {
    const Letter a = multiplier_;
    if (x == a || x == inv(a)) return {x};
    bool in = cut_.count(x) > 0, in_inv = cut_.count(inv(x)) > 0;
    if (in && !in_inv) return {x, a};
    if (!in && in_inv) return {inv(a), x};
    if (in && in_inv) return {inv(a), x, a};
    return {x};
  }

  ReducedWord apply(const ReducedWord& w) const {
    if (w.rank() != rank_) throw error("alphabet mismatch in apply");
    std::vector<Letter> out;
    out.reserve(3 * w.size());
    for (Letter x : w.letters())
      for (Letter y : image(x)) {
        if (!out.empty() && out.back() == inv(y))
          out.pop_back();
        else
          out.push_back(y);
      }
    return ReducedWord(rank_, std::move(out));
  }

  // (a, A)^-1 = (a^-1, {a^-1} union (A minus {a})).
  WhiteheadAuto inverse() const {
    std::set<Letter> cut;
    cut.insert(inv(multiplier_));
    for (Letter x : cut_)
      if (x != multiplier_) cut.insert(x);
    return WhiteheadAuto(rank_, inv(multiplier_), cut);
  }

  bool operator==(const WhiteheadAuto& o) const {
    return rank_ == o.rank_ && multiplier_ == o.multiplier_ && cut_ == o.cut_;
  }

 private:
  int rank_;
  Letter multiplier_;
  std::set<Letter> cut_;
};

// All 2k * 2^(2k-2) Whitehead automorphisms of the second kind, in a
// deterministic order: multiplier by letter order, then cut subsets in
// bitmask order over the remaining letters.
inline std::vector<WhiteheadAuto> enumerate_whitehead(int k) {
  if (k < 1) throw error("enumerate_whitehead: rank must be >= 1");
  std::vector<WhiteheadAuto> out;
  for (int mk = 0; mk < 2 * k; ++mk) {
    Letter a = letter_from_order_key(mk);
    std::vector<Letter> rest;
    for (int key = 0; key < 2 * k; ++key) {
      Letter x = letter_from_order_key(key);
      if (x != a && x != inv(a)) rest.push_back(x);
    }
    for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
      std::set<Letter> cut{a};
      for (std::size_t i = 0; i < rest.size(); ++i)
        if ((mask >> i) & 1) cut.insert(rest[i]);
      out.emplace_back(k, a, cut);
    }
  }
  return out;
}

struct InnerBy {
  ReducedWord conjugator;  // g -> w g w^-1
};

using AutoFactor = std::variant<Relabeling, WhiteheadAuto, InnerBy>;

// A word in automorphism generators; factors compose right-to-left, so
// factors.back() acts first.
class AutoWord {
 public:
  AutoWord() = default;
  explicit AutoWord(std::vector<AutoFactor> fs) : factors_(std::move(fs)) {}

  const std::vector<AutoFactor>& factors() const { return factors_; }
  void push_outer(AutoFactor f) {
    factors_.insert(factors_.begin(), std::move(f));
  }
  void push_inner(AutoFactor f) { factors_.push_back(std::move(f)); }

  ReducedWord apply(const ReducedWord& w) const {
    ReducedWord cur = w;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
      cur = std::visit(
          [&](const auto& f) -> ReducedWord {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, InnerBy>)
              return concat(f.conjugator, concat(cur, invert(f.conjugator)));
            else
              return f.apply(cur);
          },
          *it);
    }
    return cur;
  }

 private:
  std::vector<AutoFactor> factors_;
};

inline ReducedWord apply(const Relabeling& f, const ReducedWord& w) {
  return f.apply(w);
}
inline ReducedWord apply(const WhiteheadAuto& f, const ReducedWord& w) {
  return f.apply(w);
}
inline ReducedWord apply(const AutoWord& f, const ReducedWord& w) {
  return f.apply(w);
}

// If alpha = ad_g (alpha(x) = g x g^-1 on every basis letter), returns g.
//
// If alpha is inner then alpha(x1) = g' x1 g'^-1 in reduced form, where
// g = g' x1^m and g' does not end in x1^{+-1}; g' is read off the image and
// the exponent m is recovered by trying the bounded range the image lengths
// allow.
inline std::optional<ReducedWord> is_inner(const AutoWord& alpha, int k) {
  std::vector<ReducedWord> images;
  std::size_t max_len = 1;
  for (int i = 1; i <= k; ++i) {
    images.push_back(alpha.apply(ReducedWord(k, {i})));
    max_len = std::max(max_len, images.back().size());
  }
  ReducedWord x1(k, {1});
  const ReducedWord& u1 = images[0];
  if (u1.size() % 2 != 1) return std::nullopt;
  std::size_t half = u1.size() / 2;
  if (u1[half] != 1) return std::nullopt;
  ReducedWord g0 = prefix(u1, half);
  if (invert(g0) != ReducedWord(k, {u1.letters().begin() + half + 1,
                                    u1.letters().end()}))
    return std::nullopt;
  int M = (int)max_len / 2 + 1;
  for (int m = -M; m <= M; ++m) {
    ReducedWord g = concat(g0, pow(x1, m));
    bool ok = true;
    for (int i = 1; i <= k && ok; ++i) {
      ReducedWord xi(k, {i});
      ok = images[i - 1] == concat(g, concat(xi, invert(g)));
    }
    if (ok) return g;
  }
  return std::nullopt;
}

// A rational eps0 such that every eps0-equidistributed cyclic word is
// strictly Whitehead minimal. The value is independent of word length.
//
// Derivation. For a Whitehead automorphism (a, A) with |A| = m and a cyclic
// word g of length l, the exact cyclic length change is
//   |phi(g)| - |g| = #{i : s_i in A, s_i != a}
//                  + #{i : s_i^-1 in A, s_i != a^-1}
//                  - 2 #{i : s_i in A, s_{i+1}^-1 in A}   (indices cyclic).
// At perfect equidistribution the change per letter is
//   delta(m) = (m-1)(2k-1-m) / (k(2k-1)),
// positive exactly for the proper automorphisms (2 <= m <= 2k-2). An
// eps-equidistributed word perturbs the three sums by at most
// 2(m-1)eps + 2m(m-1)eps = 2(m^2-1)eps per letter, so the change stays
// strictly positive whenever eps < min_m delta(m) / (2(m^2-1)); the minimum
// over m in [2, 2k-2] is 1/(2k(2k-1)^2), attained at m = 2k-2. Any rational
// strictly below it certifies minimality; bumping the denominator by one
// keeps the bound as tight as a unit fraction allows.
inline Rational epsilon0(int k) {
  if (k < 2) throw error("epsilon0 requires rank >= 2");
  return Rational(1, 2 * k * (2 * k - 1) * (2 * k - 1) + 1);
}

// --- automorphism text format ----------------------------------------------
//
// W(a;{a,b,B}) — Whitehead; R(a->b,b->A) — relabeling; I(w) — inner-by;
// factors ';'-separated, composing right-to-left.

inline std::string print_factor(const AutoFactor& f, int k) {
  auto letter_str = [&](Letter x) {
    return print_word(ReducedWord(k, {x}));
  };
  if (auto* w = std::get_if<WhiteheadAuto>(&f)) {
    std::string s = "W(" + letter_str(w->multiplier()) + ";{";
    // Cut letters in display order a < a^-1 < b < b^-1 < ...
    std::vector<Letter> cut(w->cut().begin(), w->cut().end());
    std::sort(cut.begin(), cut.end(), [](Letter x, Letter y) {
      return letter_order_key(x) < letter_order_key(y);
    });
    bool first = true;
    for (Letter x : cut) {
      if (!first) s += ",";
      s += letter_str(x);
      first = false;
    }
    return s + "})";
  }
  if (auto* r = std::get_if<Relabeling>(&f)) {
    std::string s = "R(";
    for (int i = 1; i <= k; ++i) {
      if (i > 1) s += ",";
      s += letter_str(i) + "->" + letter_str(r->apply(i));
    }
    return s + ")";
  }
  return "I(" + print_word(std::get<InnerBy>(f).conjugator) + ")";
}

inline std::string print_autoword(const AutoWord& a, int k) {
  std::string s;
  for (std::size_t i = 0; i < a.factors().size(); ++i) {
    if (i) s += ";";
    s += print_factor(a.factors()[i], k);
  }
  return s;
}

inline AutoFactor parse_factor(int k, const std::string& text) {
  auto fail = [&]() -> AutoFactor {
    throw error("bad automorphism factor: " + text);
  };
  if (text.size() < 3 || text[1] != '(' || text.back() != ')') return fail();
  std::string body = text.substr(2, text.size() - 3);
  auto one_letter = [&](const std::string& s) {
    ReducedWord w = parse_reduced_word(k, s);
    if (w.size() != 1) throw error("expected a single letter in: " + text);
    return w[0];
  };
  if (text[0] == 'W') {
    auto semi = body.find(';');
    if (semi == std::string::npos) return fail();
    Letter a = one_letter(body.substr(0, semi));
    std::string setpart = body.substr(semi + 1);
    if (setpart.size() < 2 || setpart.front() != '{' || setpart.back() != '}')
      return fail();
    setpart = setpart.substr(1, setpart.size() - 2);
    std::set<Letter> cut;
    std::size_t pos = 0;
    while (pos <= setpart.size() && !setpart.empty()) {
      auto comma = setpart.find(',', pos);
      std::string item = setpart.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      cut.insert(one_letter(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return WhiteheadAuto(k, a, cut);
  }
  if (text[0] == 'R') {
    std::vector<Letter> img(k, 0);
    std::size_t pos = 0;
    while (pos < body.size()) {
      auto comma = body.find(',', pos);
      std::string item = body.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      auto arrow = item.find("->");
      if (arrow == std::string::npos) return fail();
      Letter from = one_letter(item.substr(0, arrow));
      Letter to = one_letter(item.substr(arrow + 2));
      if (from < 1) throw error("relabeling sources must be positive letters");
      img[from - 1] = to;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    for (Letter x : img)
      if (x == 0) throw error("relabeling must specify every generator");
    return Relabeling(k, img);
  }
  if (text[0] == 'I') return InnerBy{parse_word(k, body)};
  return fail();
}

inline AutoWord parse_autoword(int k, const std::string& text) {
  std::vector<AutoFactor> fs;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ';' && depth == 0) {
      fs.push_back(parse_factor(k, cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) fs.push_back(parse_factor(k, cur));
  return AutoWord(std::move(fs));
}

}  // namespace fg
