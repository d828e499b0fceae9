// Alphabets, words, morphisms and codings.
//
// Letters are tokens ("a", "2*", "0.1") identified by their index in an
// Alphabet. Declaration order is canonical: matrices and vectors are indexed
// by it everywhere in the library.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hiddenauto {

/// Raised for violated preconditions on user-supplied data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw Error("alphabet must be nonempty");
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (letters_[i].empty()) throw Error("empty letter token");
      if (!index_.emplace(letters_[i], static_cast<Letter>(i)).second)
        throw Error("duplicate letter '" + letters_[i] + "'");
    }
  }

  Alphabet(std::initializer_list<std::string> letters)
      : Alphabet(std::vector<std::string>(letters)) {}

  std::size_t size() const noexcept { return letters_.size(); }
  const std::string& name(Letter l) const { return letters_.at(l); }
  const std::vector<std::string>& names() const noexcept { return letters_; }

  std::optional<Letter> find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Letter index(std::string_view token) const {
    if (auto l = find(token)) return *l;
    throw Error("unknown letter '" + std::string(token) + "'");
  }

  bool single_char() const noexcept {
    return std::all_of(letters_.begin(), letters_.end(),
                       [](const std::string& s) { return s.size() == 1; });
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, Letter> index_;
};

/// Parses a word written with the alphabet's tokens: whitespace separated, or
/// concatenated when every letter is a single character.
inline Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  bool spaced = text.find_first_of(" \t") != std::string_view::npos;
  if (!spaced && alphabet.single_char()) {
    for (char c : text) w.push_back(alphabet.index(std::string_view(&c, 1)));
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto start = text.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto end = text.find_first_of(" \t", start);
    if (end == std::string_view::npos) end = text.size();
    w.push_back(alphabet.index(text.substr(start, end - start)));
    pos = end;
  }
  return w;
}

inline std::string format_word(const Alphabet& alphabet, std::span<const Letter> w) {
  std::string out;
  bool compact = alphabet.single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

inline std::vector<std::size_t> parikh_vector(std::span<const Letter> w, const Alphabet& alphabet) {
  std::vector<std::size_t> counts(alphabet.size(), 0);
  for (Letter l : w) ++counts.at(l);
  return counts;
}

/// A map from letters to words. Erasing images are allowed here; analyses
/// that need a non-erasing morphism check it themselves.
class Morphism {
 public:
  Morphism() = default;

  Morphism(Alphabet alphabet, std::vector<Word> images)
      : alphabet_(std::move(alphabet)), images_(std::move(images)) {
    if (images_.size() != alphabet_.size())
      throw Error("morphism needs exactly one image per letter");
    for (const auto& w : images_)
      for (Letter l : w)
        if (l >= alphabet_.size()) throw Error("image letter out of range");
  }

  /// Convenience for tests and the corpus: rules written as token strings,
  /// one per letter in alphabet order.
  static Morphism from_strings(const Alphabet& alphabet, const std::vector<std::string>& rules) {
    std::vector<Word> images;
    images.reserve(rules.size());
    for (const auto& r : rules) images.push_back(parse_word(alphabet, r));
    return Morphism(alphabet, std::move(images));
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return images_.size(); }
  const Word& image(Letter l) const { return images_.at(l); }
  const std::vector<Word>& images() const noexcept { return images_; }

  std::vector<std::size_t> lengths() const {
    std::vector<std::size_t> out;
    out.reserve(images_.size());
    for (const auto& w : images_) out.push_back(w.size());
    return out;
  }

  bool is_erasing() const {
    return std::any_of(images_.begin(), images_.end(), [](const Word& w) { return w.empty(); });
  }

  /// The common image length, if all images have the same length.
  std::optional<std::size_t> uniform_length() const {
    if (images_.empty()) return std::nullopt;
    std::size_t k = images_.front().size();
    for (const auto& w : images_)
      if (w.size() != k) return std::nullopt;
    return k;
  }

  std::string format_image(Letter l) const { return format_word(alphabet_, image(l)); }

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
};

inline Morphism identity_morphism(const Alphabet& alphabet) {
  std::vector<Word> images;
  for (Letter l = 0; l < alphabet.size(); ++l) images.push_back({l});
  return Morphism(alphabet, std::move(images));
}

/// A letter-to-letter map between two alphabets.
class Coding {
 public:
  Coding() = default;

  Coding(Alphabet source, Alphabet target, std::vector<Letter> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.size() != source_.size()) throw Error("coding must be total on its source");
    for (Letter l : map_)
      if (l >= target_.size()) throw Error("coding target out of range");
  }

  static Coding identity(const Alphabet& alphabet) {
    std::vector<Letter> map(alphabet.size());
    for (Letter l = 0; l < map.size(); ++l) map[l] = l;
    return Coding(alphabet, alphabet, std::move(map));
  }

  const Alphabet& source() const noexcept { return source_; }
  const Alphabet& target() const noexcept { return target_; }
  Letter operator()(Letter l) const { return map_.at(l); }
  const std::vector<Letter>& map() const noexcept { return map_; }

  Word apply(std::span<const Letter> w) const {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) out.push_back(map_.at(l));
    return out;
  }

  bool is_identity() const {
    if (!(source_ == target_)) return false;
    for (Letter l = 0; l < map_.size(); ++l)
      if (map_[l] != l) return false;
    return true;
  }

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Letter> map_;
};

/// `outer` after `inner`.
inline Coding compose(const Coding& outer, const Coding& inner) {
  if (!(outer.source() == inner.target())) throw Error("coding composition: alphabet mismatch");
  std::vector<Letter> map;
  for (Letter l : inner.map()) map.push_back(outer(l));
  return Coding(inner.source(), outer.target(), std::move(map));
}

/// A morphism, a seed letter and an optional coding: the recipe for a
/// (coded) iterative fixed point.
struct MorphicSpec {
  Morphism morphism;
  Letter seed = 0;
  std::optional<Coding> coding;

  const Alphabet& alphabet() const noexcept { return morphism.alphabet(); }
  const Alphabet& output_alphabet() const {
    return coding ? coding->target() : morphism.alphabet();
  }
};

inline Word apply(const Morphism& m, std::span<const Letter> w) {
  Word out;
  for (Letter l : w) {
    const Word& img = m.image(l);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

/// result(l) = outer(inner(l)).
inline Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (!(outer.alphabet() == inner.alphabet()))
    throw Error("morphism composition: alphabet mismatch");
  std::vector<Word> images;
  images.reserve(inner.size());
  for (const auto& w : inner.images()) images.push_back(hiddenauto::apply(outer, w));
  return Morphism(inner.alphabet(), std::move(images));
}

inline Morphism power(const Morphism& m, std::size_t k) {
  if (k == 0) throw Error("morphism power needs k >= 1");
  Morphism result = m;
  for (std::size_t i = 1; i < k; ++i) result = compose(m, result);
  return result;
}

inline bool morphism_equal(const Morphism& a, const Morphism& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error("morphism comparison: alphabet mismatch");
  return a.images() == b.images();
}

/// Letters l with m^n(l) empty for some n.
inline std::vector<bool> mortal_letters(const Morphism& m) {
  std::vector<bool> mortal(m.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Letter l = 0; l < m.size(); ++l) {
      if (mortal[l]) continue;
      const Word& img = m.image(l);
      if (std::all_of(img.begin(), img.end(), [&](Letter c) { return mortal[c]; })) {
        mortal[l] = true;
        changed = true;
      }
    }
  }
  return mortal;
}

/// True iff m(l) starts with l and m^n(l) grows without bound, i.e. the tail
/// of m(l) holds a letter that is never erased.
inline bool is_prolongable(const Morphism& m, Letter l) {
  if (l >= m.size()) throw Error("is_prolongable: unknown letter");
  const Word& img = m.image(l);
  if (img.size() < 2 || img.front() != l) return false;
  auto mortal = mortal_letters(m);
  return std::any_of(img.begin() + 1, img.end(), [&](Letter c) { return !mortal[c]; });
}

inline std::optional<Letter> first_prolongable(const Morphism& m) {
  for (Letter l = 0; l < m.size(); ++l)
    if (is_prolongable(m, l)) return l;
  return std::nullopt;
}

/// First n letters of the fixed point of m starting with seed, uncoded.
/// Grows the prefix in place: position i of the fixed point is expanded once
/// its letter is known, so memory stays O(n).
inline Word fixed_point_prefix(const Morphism& m, Letter seed, std::size_t n) {
  if (!is_prolongable(m, seed))
    throw Error("seed '" + m.alphabet().name(seed) + "' is not prolongable");
  Word x = m.image(seed);
  x.reserve(std::max(n, x.size()));
  for (std::size_t i = 1; x.size() < n; ++i) {
    const Word& img = m.image(x.at(i));
    x.insert(x.end(), img.begin(), img.end());
  }
  x.resize(n);
  return x;
}

/// First n letters of the coded fixed point described by spec.
inline Word iterate_fixed_point(const MorphicSpec& spec, std::size_t n) {
  Word x = fixed_point_prefix(spec.morphism, spec.seed, n);
  return spec.coding ? spec.coding->apply(x) : x;
}

/// Restriction of m to the letters in `keep`, which must be closed under m.
inline std::optional<std::pair<Morphism, std::vector<Letter>>> restrict_morphism(
    const Morphism& m, const std::vector<Letter>& keep) {
  std::vector<std::optional<Letter>> to_new(m.size());
  std::vector<std::string> names;
  for (Letter l : keep) {
    to_new[l] = static_cast<Letter>(names.size());
    names.push_back(m.alphabet().name(l));
  }
  std::vector<Word> images;
  for (Letter l : keep) {
    Word w;
    for (Letter c : m.image(l)) {
      if (!to_new[c]) return std::nullopt;
      w.push_back(*to_new[c]);
    }
    images.push_back(std::move(w));
  }
  return std::pair{Morphism(Alphabet(std::move(names)), std::move(images)), keep};
}

/// Letters occurring in m^n(l) for some n >= 0.
inline std::vector<Letter> reachable_letters(const Morphism& m, Letter from) {
  std::vector<bool> seen(m.size(), false);
  std::vector<Letter> stack{from}, order;
  seen[from] = true;
  while (!stack.empty()) {
    Letter l = stack.back();
    stack.pop_back();
    order.push_back(l);
    for (Letter c : m.image(l))
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
  }
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace hiddenauto
