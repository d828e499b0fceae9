// Regression corpus: `<name>.morph` files next to `<name>.expected.json`.
//
// expected.json:
//   { "provenance": "...",
//     "expected": { "kind": "automatic" | "not_automatic" | "unknown",
//                   "q": 2, "base": 2, "stage": "eigenvector",
//                   "anagram_degree": 7 (null: none expected), "char_poly": "x^3 - x^2 - 2x - 4",
//                   "sturmian_evidence": true } }
// Every field of "expected" except "kind" is optional.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hiddenauto/criteria.hpp"
#include "hiddenauto/morph_format.hpp"

namespace hiddenauto {

struct CorpusEntry {
  std::string name;
  std::string source;  // `.morph` text
  nlohmann::json expected;
  std::string provenance;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Entries sorted by name. A `.morph` file without its expected.json is an
/// error.
inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  std::vector<CorpusEntry> entries;
  if (!std::filesystem::is_directory(dir)) throw Error("corpus directory not found: " + dir.string());
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    if (f.path().extension() != ".morph") continue;
    std::string name = f.path().stem().string();
    auto expected_path = dir / (name + ".expected.json");
    if (!std::filesystem::exists(expected_path)) throw Error("missing " + expected_path.string());
    auto meta = nlohmann::json::parse(read_file(expected_path));
    entries.push_back({name, read_file(f.path()), meta.at("expected"), meta.value("provenance", "")});
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return entries;
}

struct CorpusResult {
  std::string name;
  bool pass = false;
  std::string summary;
  std::vector<std::string> mismatches;
};

inline CorpusResult run_corpus_entry(const CorpusEntry& entry, const AnalyzeOptions& opt = {}) {
  CorpusResult res{entry.name, false, {}, {}};
  auto report = analyze(parse_morphism(entry.source), opt);
  const Verdict& v = report.verdict;
  res.summary = v.summary;
  const auto& e = entry.expected;
  auto mismatch = [&](const std::string& field, const std::string& want, const std::string& got) {
    res.mismatches.push_back(field + ": expected " + want + ", got " + got);
  };

  std::string kind = e.at("kind").get<std::string>();
  if (kind != to_string(v.kind)) mismatch("kind", kind, to_string(v.kind));
  if (e.contains("q") && e["q"].get<std::size_t>() != v.q)
    mismatch("q", e["q"].dump(), std::to_string(v.q));
  if (e.contains("base") && e["base"].get<std::size_t>() != v.base)
    mismatch("base", e["base"].dump(), std::to_string(v.base));
  if (e.contains("stage") && e["stage"].get<std::string>() != v.stage)
    mismatch("stage", e["stage"].get<std::string>(), v.stage);
  for (const auto& s : report.stages) {
    if (s.name == "anagram" && e.contains("anagram_degree")) {
      if (e["anagram_degree"].is_null()) {
        // null: no decomposition expected
        if (s.outcome == "success") mismatch("anagram_degree", "null", s.detail["degree"].dump());
        continue;
      }
      auto want = e["anagram_degree"].get<std::size_t>();
      if (s.outcome != "success")
        mismatch("anagram_degree", std::to_string(want), "no decomposition");
      else if (s.detail["degree"].get<std::size_t>() != want)
        mismatch("anagram_degree", std::to_string(want), s.detail["degree"].dump());
    }
    if (s.name == "irrationality" && e.contains("char_poly")) {
      std::string want = e["char_poly"].get<std::string>();
      std::string got = s.detail.contains("spectral") ? s.detail["spectral"]["char_poly"].get<std::string>() : "none";
      if (want != got) mismatch("char_poly", want, got);
    }
  }
  if (e.value("sturmian_evidence", false)) {
    bool found = false;
    if (v.evidence.contains("subsequences"))
      for (const auto& w : v.evidence["subsequences"])
        found = found || (w["sturmian"].get<bool>() && w["prefix_occurs_in_sequence"].get<bool>());
    if (!found) mismatch("sturmian_evidence", "true", "false");
  }
  res.pass = res.mismatches.empty();
  return res;
}

}  // namespace hiddenauto
