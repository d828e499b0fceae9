// Reference implementations used as test oracles. Deliberately naive:
// morphisms as char -> std::string maps, matrices as int64 vectors,
// factor sets as std::set<std::string>. Nothing here calls the library.
#pragma once

#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Rules = std::map<char, std::string>;

inline std::string apply(const Rules& r, const std::string& w) {
  std::string out;
  for (char c : w) out += r.at(c);
  return out;
}

/// Prefix of length n of the fixed point from `seed`, by plain re-iteration.
inline std::string fixed_point(const Rules& r, char seed, std::size_t n) {
  std::string w(1, seed);
  while (w.size() < n) {
    std::string next = oracle::apply(r, w);
    if (next.size() <= w.size()) throw std::runtime_error("oracle: no growth");
    w = std::move(next);
  }
  return w.substr(0, n);
}

inline std::string code(const std::string& w, const std::map<char, char>& c) {
  std::string out;
  for (char x : w) out += c.at(x);
  return out;
}

using Mat = std::vector<std::vector<std::int64_t>>;

/// M[i][j] = occurrences of letters[i] in the image of letters[j].
inline Mat incidence(const Rules& r, const std::string& letters) {
  Mat m(letters.size(), std::vector<std::int64_t>(letters.size(), 0));
  for (std::size_t j = 0; j < letters.size(); ++j)
    for (char c : r.at(letters[j])) ++m[letters.find(c)][j];
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat c(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline std::size_t distinct_factors(const std::string& w, std::size_t n) {
  std::set<std::string> s;
  for (std::size_t i = 0; i + n <= w.size(); ++i) s.insert(w.substr(i, n));
  return s.size();
}

/// Evaluates a polynomial given by descending integer coefficients.
inline std::int64_t horner(const std::vector<std::int64_t>& desc, std::int64_t x) {
  std::int64_t v = 0;
  for (auto c : desc) v = v * x + c;
  return v;
}

/// Random non-erasing morphism over the first `n` letters of "abcdef...".
inline Rules random_rules(std::mt19937& rng, std::size_t n, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len), pick(0, n - 1);
  Rules r;
  for (std::size_t i = 0; i < n; ++i) {
    std::string img;
    for (std::size_t k = len(rng); k > 0; --k) img += static_cast<char>('a' + pick(rng));
    r[static_cast<char>('a' + i)] = img;
  }
  return r;
}

inline std::string letters_of(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('a' + i);
  return s;
}

inline std::string random_word(std::mt19937& rng, const std::string& letters, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::string w;
  for (std::size_t i = 0; i < len; ++i) w += letters[pick(rng)];
  return w;
}

/// Images are concatenations of shuffles of one base word, so every image
/// cuts into blocks with a common Parikh vector.
inline Rules anagram_rules(std::mt19937& rng, std::size_t n) {
  std::string letters = letters_of(n);
  std::uniform_int_distribution<std::size_t> blen(1, 3), count(1, 3);
  std::string base = random_word(rng, letters, blen(rng));
  base[0] = 'a';
  Rules r;
  for (char c : letters) {
    std::string img;
    for (std::size_t k = count(rng); k > 0; --k) {
      std::string w = base;
      std::shuffle(w.begin(), w.end(), rng);
      img += w;
    }
    r[c] = img;
  }
  return r;
}

/// Rejection sampler for rules with L M = q L: letter weights L_c in 1..3,
/// image of a has L_a letters of total weight q L_a. Seed 'a' is prolongable.
inline std::optional<Rules> eigen_rules(std::mt19937& rng, std::size_t n, std::size_t q) {
  std::string letters = letters_of(n);
  std::uniform_int_distribution<std::size_t> weight(1, 3);
  std::vector<std::size_t> len(n);
  for (auto& l : len) l = weight(rng);
  len[0] = std::max<std::size_t>(len[0], 2);
  len[n - 1] = 1;
  Rules r;
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (int attempt = 0; attempt < 2000 && !found; ++attempt) {
      std::string img = random_word(rng, letters, len[a]);
      if (a == 0) img[0] = 'a';
      std::size_t total = 0;
      for (char c : img) total += len[c - 'a'];
      if (total == q * len[a]) {
        r[letters[a]] = img;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return r;
}

}  // namespace oracle
