// Reader and writer for the line-oriented `.morph` format:
//
//   # comment
//   letters: a b c d
//   a -> aca            (concatenated: every letter is one character)
//   b -> d
//   1* -> 2* 1          (whitespace separated: always allowed)
//   seed: a             (optional)
//   coding: a->0, b->1  (optional, must be total)

#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hiddenauto/word.hpp"

namespace hiddenauto {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split_ws(std::string_view s, std::size_t base_column) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back({std::string(s.substr(start, end - start)), base_column + start});
    pos = end;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool valid_token(std::string_view t) {
  return !t.empty() && t.find(',') == std::string_view::npos &&
         t.find("->") == std::string_view::npos && t.find(':') == std::string_view::npos;
}

}  // namespace detail

inline MorphicSpec parse_morphism(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string_view body;
  };
  std::vector<Line> lines;
  {
    std::size_t number = 1, pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      lines.push_back({number++, line});
      pos = end + 1;
    }
  }

  auto column_of = [](std::string_view line, std::string_view part) {
    return static_cast<std::size_t>(part.data() - line.data()) + 1;
  };

  // Pass 1: the alphabet.
  std::optional<Alphabet> alphabet;
  for (const auto& [number, body] : lines) {
    auto t = detail::trim(body);
    if (!t.starts_with("letters:")) continue;
    if (alphabet) throw ParseError(number, column_of(body, t), "duplicate 'letters:' line");
    auto rest = t.substr(8);
    auto tokens = detail::split_ws(rest, column_of(body, rest));
    if (tokens.empty()) throw ParseError(number, column_of(body, t), "empty alphabet");
    std::vector<std::string> names;
    for (const auto& tok : tokens) {
      if (!detail::valid_token(tok.text))
        throw ParseError(number, tok.column, "invalid letter token '" + tok.text + "'");
      names.push_back(tok.text);
    }
    try {
      alphabet.emplace(std::move(names));
    } catch (const Error& e) {
      throw ParseError(number, column_of(body, t), e.what());
    }
  }
  if (!alphabet) throw ParseError(1, 1, "missing 'letters:' line");

  auto letter_at = [&](std::size_t number, const detail::Token& tok) {
    auto l = alphabet->find(tok.text);
    if (!l) throw ParseError(number, tok.column, "undeclared letter '" + tok.text + "'");
    return *l;
  };

  // Pass 2: rules, seed, coding.
  std::vector<std::optional<Word>> images(alphabet->size());
  std::optional<Letter> seed;
  std::optional<Coding> coding;
  for (const auto& [number, body] : lines) {
    auto t = detail::trim(body);
    if (t.empty() || t.starts_with("letters:")) continue;
    std::size_t col = column_of(body, t);

    if (t.starts_with("seed:")) {
      auto rest = t.substr(5);
      auto tokens = detail::split_ws(rest, column_of(body, rest));
      if (tokens.size() != 1) throw ParseError(number, col, "'seed:' takes exactly one letter");
      if (seed) throw ParseError(number, col, "duplicate 'seed:' line");
      seed = letter_at(number, tokens[0]);
      continue;
    }

    if (t.starts_with("coding:")) {
      if (coding) throw ParseError(number, col, "duplicate 'coding:' line");
      auto rest = t.substr(7);
      std::vector<std::optional<std::string>> targets(alphabet->size());
      std::vector<std::string> target_names;
      std::size_t pos = 0;
      while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string_view::npos) comma = rest.size();
        auto item = detail::trim(rest.substr(pos, comma - pos));
        pos = comma + 1;
        if (item.empty()) continue;
        std::size_t icol = column_of(body, item);
        auto arrow = item.find("->");
        if (arrow == std::string_view::npos) throw ParseError(number, icol, "expected 'x->y'");
        auto from = detail::trim(item.substr(0, arrow));
        auto to = detail::trim(item.substr(arrow + 2));
        if (!detail::valid_token(to) || to.find_first_of(" \t") != std::string_view::npos)
          throw ParseError(number, icol, "invalid coding target");
        Letter l = letter_at(number, {std::string(from), icol});
        if (targets[l]) throw ParseError(number, icol, "letter coded twice");
        targets[l] = std::string(to);
        if (std::find(target_names.begin(), target_names.end(), to) == target_names.end())
          target_names.emplace_back(to);
      }
      for (Letter l = 0; l < targets.size(); ++l)
        if (!targets[l])
          throw ParseError(number, col, "coding misses letter '" + alphabet->name(l) + "'");
      Alphabet target(target_names);
      std::vector<Letter> map;
      for (const auto& tgt : targets) map.push_back(target.index(*tgt));
      coding.emplace(*alphabet, std::move(target), std::move(map));
      continue;
    }

    auto arrow = t.find("->");
    if (arrow == std::string_view::npos) throw ParseError(number, col, "expected 'letter -> image'");
    auto lhs = detail::trim(t.substr(0, arrow));
    if (lhs.empty()) throw ParseError(number, col, "missing letter before '->'");
    Letter from = letter_at(number, {std::string(lhs), column_of(body, lhs)});
    if (images[from]) throw ParseError(number, col, "duplicate rule for '" + std::string(lhs) + "'");

    auto rhs = detail::trim(t.substr(arrow + 2));
    Word image;
    if (!rhs.empty()) {
      std::size_t rcol = column_of(body, rhs);
      bool spaced = rhs.find_first_of(" \t") != std::string_view::npos;
      if (!spaced && alphabet->single_char()) {
        for (std::size_t i = 0; i < rhs.size(); ++i)
          image.push_back(letter_at(number, {std::string(1, rhs[i]), rcol + i}));
      } else {
        for (const auto& tok : detail::split_ws(rhs, rcol)) image.push_back(letter_at(number, tok));
      }
    }
    images[from] = std::move(image);
  }

  std::vector<Word> rules;
  for (Letter l = 0; l < images.size(); ++l) {
    if (!images[l]) throw ParseError(1, 1, "no rule for letter '" + alphabet->name(l) + "'");
    rules.push_back(std::move(*images[l]));
  }

  MorphicSpec spec{Morphism(*alphabet, std::move(rules)), 0, std::move(coding)};
  spec.seed = seed ? *seed : first_prolongable(spec.morphism).value_or(0);
  return spec;
}

/// Writes a spec back in `.morph` syntax; `header` lines become comments.
inline std::string to_morph(const MorphicSpec& spec, const std::vector<std::string>& header = {}) {
  std::ostringstream out;
  for (const auto& h : header) out << "# " << h << '\n';
  const Alphabet& a = spec.alphabet();
  out << "letters:";
  for (const auto& n : a.names()) out << ' ' << n;
  out << '\n';
  for (Letter l = 0; l < a.size(); ++l) out << a.name(l) << " -> " << spec.morphism.format_image(l) << '\n';
  out << "seed: " << a.name(spec.seed) << '\n';
  if (spec.coding && !spec.coding->is_identity()) {
    out << "coding:";
    for (Letter l = 0; l < a.size(); ++l)
      out << (l ? ", " : " ") << a.name(l) << "->" << spec.coding->target().name((*spec.coding)(l));
    out << '\n';
  }
  return out.str();
}

}  // namespace hiddenauto
