// Glue between the string oracles and the library types.
#pragma once

#include <string>
#include <vector>

#include "hiddenauto/hiddenauto.hpp"
#include "oracle.hpp"

namespace support {

inline hiddenauto::Alphabet char_alphabet(const std::string& letters) {
  std::vector<std::string> names;
  for (char c : letters) names.emplace_back(1, c);
  return hiddenauto::Alphabet(names);
}

inline hiddenauto::Morphism to_morphism(const oracle::Rules& r) {
  std::string letters;
  std::vector<std::string> images;
  for (const auto& [c, img] : r) {
    letters += c;
    images.push_back(img);
  }
  return hiddenauto::Morphism::from_strings(char_alphabet(letters), images);
}

inline hiddenauto::MorphicSpec spec_of(const std::string& text) { return hiddenauto::parse_morphism(text); }

inline std::string str(const hiddenauto::Alphabet& a, const hiddenauto::Word& w) {
  return hiddenauto::format_word(a, w);
}

inline std::string corpus_path(const std::string& name) {
  return std::string(HIDDENAUTO_CORPUS_DIR) + "/" + name + ".morph";
}

inline hiddenauto::MorphicSpec corpus_spec(const std::string& name) {
  return hiddenauto::parse_morphism(hiddenauto::read_file(corpus_path(name)));
}

}  // namespace support
