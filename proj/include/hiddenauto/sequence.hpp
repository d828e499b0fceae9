// Prefix comparison, factor complexity and letter frequencies of coded
// fixed points. Everything here is evidence about a finite prefix.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hiddenauto/linalg.hpp"
#include "hiddenauto/word.hpp"

namespace hiddenauto {

/// True iff the first n output letters agree. Output letters are compared by
/// name, so the two output alphabets may list them in different orders.
inline bool prefix_equal(const MorphicSpec& a, const MorphicSpec& b, std::size_t n) {
  Word xa = iterate_fixed_point(a, n);
  Word xb = iterate_fixed_point(b, n);
  const Alphabet& aa = a.output_alphabet();
  const Alphabet& ab = b.output_alphabet();
  std::vector<std::optional<Letter>> translate(ab.size());
  for (Letter l = 0; l < ab.size(); ++l) translate[l] = aa.find(ab.name(l));
  for (std::size_t i = 0; i < n; ++i)
    if (!translate[xb[i]] || *translate[xb[i]] != xa[i]) return false;
  return true;
}

/// Suffix automaton; counts distinct factors per length.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(std::span<const Letter> w) {
    states_.push_back({0, -1, {}});
    int last = 0;
    for (Letter c : w) {
      int cur = static_cast<int>(states_.size());
      states_.push_back({states_[last].len + 1, -1, {}});
      int p = last;
      while (p != -1 && !states_[p].next.contains(c)) {
        states_[p].next[c] = cur;
        p = states_[p].link;
      }
      if (p == -1) {
        states_[cur].link = 0;
      } else {
        int q = states_[p].next[c];
        if (states_[p].len + 1 == states_[q].len) {
          states_[cur].link = q;
        } else {
          int clone = static_cast<int>(states_.size());
          states_.push_back({states_[p].len + 1, states_[q].link, states_[q].next});
          while (p != -1 && states_[p].next[c] == q) {
            states_[p].next[c] = clone;
            p = states_[p].link;
          }
          states_[q].link = clone;
          states_[cur].link = clone;
        }
      }
      last = cur;
    }
  }

  /// counts[n] = number of distinct factors of length n, 0 <= n <= n_max.
  std::vector<std::size_t> factor_counts(std::size_t n_max) const {
    // State v represents factors with lengths in (len(link v), len v].
    std::vector<long long> diff(n_max + 2, 0);
    for (std::size_t v = 1; v < states_.size(); ++v) {
      std::size_t lo = static_cast<std::size_t>(states_[states_[v].link].len) + 1;
      std::size_t hi = static_cast<std::size_t>(states_[v].len);
      if (lo > n_max) continue;
      diff[lo] += 1;
      diff[std::min(hi, n_max) + 1] -= 1;
    }
    std::vector<std::size_t> counts(n_max + 1, 0);
    counts[0] = 1;
    long long run = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      run += diff[n];
      counts[n] = static_cast<std::size_t>(run);
    }
    return counts;
  }

 private:
  struct State {
    int len;
    int link;
    std::map<Letter, int> next;
  };
  std::vector<State> states_;
};

struct ComplexityProfile {
  std::size_t n_max = 0;
  std::size_t prefix_length = 0;
  std::vector<std::size_t> counts;  // counts[n - 1] = p(n), a lower bound on the true p(n)

  std::size_t operator()(std::size_t n) const { return counts.at(n - 1); }
  std::size_t validity_margin() const { return prefix_length - n_max; }
};

/// Required ratio between prefix length and window size.
inline constexpr std::size_t complexity_margin = 4;

inline ComplexityProfile factor_complexity(std::span<const Letter> prefix, std::size_t n_max) {
  if (n_max == 0 || prefix.size() < complexity_margin * n_max)
    throw Error("factor_complexity: prefix length must be at least " +
                std::to_string(complexity_margin) + " * n_max");
  auto counts = SuffixAutomaton(prefix).factor_counts(n_max);
  return {n_max, prefix.size(), std::vector<std::size_t>(counts.begin() + 1, counts.end())};
}

inline ComplexityProfile factor_complexity(const MorphicSpec& spec, std::size_t n_max, std::size_t prefix_length) {
  if (n_max == 0 || prefix_length < complexity_margin * n_max)
    throw Error("factor_complexity: prefix length must be at least " +
                std::to_string(complexity_margin) + " * n_max");
  return factor_complexity(iterate_fixed_point(spec, prefix_length), n_max);
}

struct SturmianWitness {
  bool sturmian = false;  // p(n) = n + 1 on the window; evidence, not proof
  ComplexityProfile profile;
};

inline SturmianWitness sturmian_witness(const MorphicSpec& spec, std::size_t n_max, std::size_t prefix_length) {
  SturmianWitness w{true, factor_complexity(spec, n_max, prefix_length)};
  for (std::size_t n = 1; n <= n_max; ++n)
    if (w.profile(n) != n + 1) w.sturmian = false;
  return w;
}

inline std::vector<Rational> empirical_frequencies(const MorphicSpec& spec, std::size_t prefix_length) {
  if (prefix_length == 0) throw Error("empirical_frequencies: prefix length must be positive");
  auto counts = parikh_vector(iterate_fixed_point(spec, prefix_length), spec.output_alphabet());
  std::vector<Rational> f;
  for (auto c : counts) f.emplace_back(BigInt(c), BigInt(prefix_length));
  return f;
}

}  // namespace hiddenauto
