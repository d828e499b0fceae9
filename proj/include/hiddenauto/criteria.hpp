// Automaticity and non-automaticity tests for fixed points of morphisms, and
// the analyzer that runs them in a fixed priority order.

#pragma once

#include <chrono>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hiddenauto/constructions.hpp"
#include "hiddenauto/linalg.hpp"
#include "hiddenauto/report_json.hpp"
#include "hiddenauto/sequence.hpp"
#include "hiddenauto/word.hpp"

namespace hiddenauto {

/// q >= 2 such that the length vector L satisfies L M = q L.
inline std::optional<std::size_t> eigenvector_criterion(const Morphism& m) {
  if (m.is_erasing()) throw Error("eigenvector criterion needs a non-erasing morphism");
  auto inc = incidence(m);
  auto lambda = left_eigencheck(inc.length_vector, inc.matrix);
  if (!lambda) return std::nullopt;
  // An eigenvalue of an integer matrix that is rational is an integer.
  if (denominator(*lambda) != 1) throw std::logic_error("eigenvector criterion: non-integer rational eigenvalue");
  BigInt q = numerator(*lambda);
  if (q < 2) return std::nullopt;
  return static_cast<std::size_t>(q);
}

/// For two letters: gcd(L0, L1) = 1 rules out L M = q L with q >= 2,
/// provided both letters occur in the images. Without that, 0 -> 00, 1 -> 0
/// has L = (2, 1) and L M = 2 L.
inline bool gcd_obstruction(const Morphism& m) {
  if (m.size() != 2) throw Error("gcd obstruction needs a two-letter alphabet");
  auto inc = incidence(m);
  bool both = (inc.matrix(0, 0) + inc.matrix(0, 1) > 0) && (inc.matrix(1, 0) + inc.matrix(1, 1) > 0);
  return both && std::gcd(m.image(0).size(), m.image(1).size()) == 1;
}

struct AnagramCertificate {
  std::size_t block_length = 0;                // m
  std::vector<Word> anagram_set;               // W, in order of first use
  std::vector<std::size_t> per_letter_counts;  // n_a
  std::vector<std::size_t> shared_parikh;      // m_a
  std::size_t degree = 0;                      // d = sum n_a m_a
};

/// Searches for a block length m | gcd(L) such that every image cuts into
/// m-blocks sharing one Parikh vector. Tries m = 2, 3, ... first and m = 1
/// last; the degree d does not depend on m.
inline std::optional<AnagramCertificate> anagram_decomposition(const Morphism& m) {
  if (m.is_erasing()) throw Error("anagram decomposition needs a non-erasing morphism");
  auto lengths = m.lengths();
  std::size_t g = 0;
  for (auto len : lengths) g = std::gcd(g, len);
  std::vector<std::size_t> order;
  for (std::size_t b = 2; b <= g; ++b)
    if (g % b == 0) order.push_back(b);
  order.push_back(1);

  for (std::size_t bl : order) {
    std::optional<std::vector<std::size_t>> shared;
    std::vector<Word> w_set;
    bool ok = true;
    for (Letter a = 0; a < m.size() && ok; ++a) {
      const Word& img = m.image(a);
      for (std::size_t pos = 0; pos < img.size(); pos += bl) {
        Word block(img.begin() + pos, img.begin() + pos + bl);
        auto pv = parikh_vector(block, m.alphabet());
        if (!shared) shared = pv;
        if (*shared != pv) {
          ok = false;
          break;
        }
        if (std::find(w_set.begin(), w_set.end(), block) == w_set.end()) w_set.push_back(block);
      }
    }
    if (!ok) continue;
    AnagramCertificate cert{bl, std::move(w_set), {}, *shared, 0};
    for (auto len : lengths) cert.per_letter_counts.push_back(len / bl);
    for (std::size_t a = 0; a < m.size(); ++a) cert.degree += cert.per_letter_counts[a] * cert.shared_parikh[a];
    for (const auto& w : cert.anagram_set)
      if (hiddenauto::apply(m, w).size() != cert.degree * w.size())
        throw std::logic_error("anagram decomposition: |psi(w)| / |w| differs from d");
    return cert;
  }
  return std::nullopt;
}

/// Primitive, non-uniform, with an irrational dominant eigenvalue: letter
/// frequencies are irrational, so no iterative fixed point is automatic.
inline std::optional<SpectralReport> irrationality_verdict(const Morphism& m,
                                                           const Rational& tol = Rational(1, 1000000000)) {
  if (m.is_erasing()) throw Error("irrationality verdict needs a non-erasing morphism");
  if (m.uniform_length()) return std::nullopt;
  auto inc = incidence(m);
  if (!is_primitive(inc.matrix)) return std::nullopt;
  auto rep = spectral_report(inc.matrix, tol);
  if (rep.dominant_is_integer) return std::nullopt;
  return rep;
}

/// Least b >= 2 with q = b^s.
inline std::size_t least_base(std::size_t q) {
  for (std::size_t b = 2; b < q; ++b) {
    std::size_t p = b;
    while (p < q) p *= b;
    if (p == q) return b;
  }
  return q;
}

struct AnalyzeOptions {
  std::size_t depth = 10000;  // certificate verification depth
  std::size_t k_min = 2;
  std::size_t k_max = 8;
  Rational tolerance = Rational(1, 1000000000);
  std::size_t complexity_window = 30;
  std::size_t complexity_prefix = 10000;
};

enum class VerdictKind { automatic, not_automatic, unknown };

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::automatic: return "automatic";
    case VerdictKind::not_automatic: return "not_automatic";
    case VerdictKind::unknown: return "unknown";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::unknown;
  std::string stage;  // which criterion decided
  std::size_t q = 0;     // automatic: uniform length of the certificate
  std::size_t base = 0;  // automatic: least b with q = b^s
  std::optional<UniformRepresentation> certificate;
  std::optional<SpectralReport> spectral;
  std::string summary;
  nlohmann::json evidence;
};

struct StageRecord {
  std::string name;
  std::string outcome;  // success | failure | not_applicable | skipped
  nlohmann::json detail = nlohmann::json::object();
};

struct AnalysisReport {
  std::vector<StageRecord> stages;
  Verdict verdict;
};

inline constexpr int report_schema_version = 1;

namespace detail {

inline bool injective(const Coding& c) {
  std::set<Letter> seen(c.map().begin(), c.map().end());
  return seen.size() == c.map().size();
}

inline std::string describe_block_morphism(const Morphism& m) {
  std::string s;
  for (Letter l = 0; l < m.size(); ++l)
    s += (l ? ", " : "") + m.alphabet().name(l) + "->" + m.format_image(l);
  return s;
}

inline void verify_certificate(const MorphicSpec& spec, const UniformRepresentation& u, std::size_t depth,
                               const std::string& stage) {
  if (!prefix_equal(spec, u.to_spec(), depth))
    throw std::logic_error(stage + " certificate does not reproduce the fixed point");
}

/// Closed proper sub-alphabets reachable from the seed that carry their own
/// fixed point: prefixes of that fixed point are factors of x.
inline nlohmann::json subalphabet_witnesses(const MorphicSpec& spec, const AnalyzeOptions& opt) {
  nlohmann::json out = nlohmann::json::array();
  const Morphism& m = spec.morphism;
  auto from_seed = reachable_letters(m, spec.seed);
  Word x = iterate_fixed_point(spec, opt.complexity_prefix);
  std::set<std::vector<Letter>> done;
  for (Letter l : from_seed) {
    auto closure = reachable_letters(m, l);
    if (closure.size() == m.size() || !done.insert(closure).second) continue;
    auto restricted = restrict_morphism(m, closure);
    if (!restricted) continue;
    const Morphism& sub = restricted->first;
    auto seed = first_prolongable(sub);
    if (!seed) continue;
    MorphicSpec sub_spec{sub, *seed, std::nullopt};
    auto witness = sturmian_witness(sub_spec, opt.complexity_window, opt.complexity_prefix);
    Word y = iterate_fixed_point(sub_spec, 4 * opt.complexity_window);
    for (auto& c : y) c = closure[c];
    bool occurs = std::search(x.begin(), x.end(), y.begin(), y.end()) != x.end();
    out.push_back({{"letters", sub.alphabet().names()},
                   {"seed", sub.alphabet().name(*seed)},
                   {"morphism", morphism_json(sub)},
                   {"sturmian", witness.sturmian},
                   {"prefix_checked", y.size()},
                   {"prefix_occurs_in_sequence", occurs},
                   {"complexity", witness.profile}});
  }
  return out;
}

}  // namespace detail

/// Runs, in order: uniform, eigenvector, anagram, blocks, irrationality,
/// evidence. The first stage that decides gives the verdict; the cheap exact
/// stages are always recorded, the searches only run while undecided.
inline AnalysisReport analyze(const MorphicSpec& spec, const AnalyzeOptions& opt = {}) {
  AnalysisReport rep;
  Verdict& v = rep.verdict;
  bool decided = false;
  const Morphism& m = spec.morphism;
  const bool erasing = m.is_erasing();
  if (!is_prolongable(m, spec.seed))
    throw Error("seed '" + spec.alphabet().name(spec.seed) + "' is not prolongable");

  auto automatic = [&](std::string stage, std::size_t q, UniformRepresentation cert, std::string summary) {
    detail::verify_certificate(spec, cert, opt.depth, stage);
    v.kind = VerdictKind::automatic;
    v.stage = std::move(stage);
    v.q = q;
    v.base = least_base(q);
    v.summary = "Automatic(" + std::to_string(v.base) + ") via " + summary;
    v.certificate = std::move(cert);
    decided = true;
  };

  // Uniform.
  {
    StageRecord s{"uniform", "failure"};
    auto k = m.uniform_length();
    s.detail["lengths"] = m.lengths();
    if (k && *k >= 2) {
      s.outcome = "success";
      s.detail["q"] = *k;
      automatic("uniform", *k, UniformRepresentation::from_spec(spec),
                "uniform morphism, q=" + std::to_string(*k));
    }
    rep.stages.push_back(std::move(s));
  }

  // Left eigenvector.
  std::optional<std::size_t> eigen_q;
  {
    StageRecord s{"eigenvector", "failure"};
    if (erasing) {
      s.outcome = "not_applicable";
      s.detail["reason"] = "erasing morphism";
    } else {
      auto inc = incidence(m);
      auto lambda = left_eigencheck(inc.length_vector, inc.matrix);
      s.detail["length_vector"] = m.lengths();
      s.detail["lambda"] = lambda ? nlohmann::json(to_string(*lambda)) : nlohmann::json(nullptr);
      eigen_q = eigenvector_criterion(m);
      if (m.size() == 2) {
        bool obstruction = gcd_obstruction(m);
        s.detail["gcd_obstruction"] = obstruction;
        if (obstruction && eigen_q) throw std::logic_error("gcd obstruction contradicts the eigenvector criterion");
      }
      if (eigen_q) {
        s.outcome = "success";
        s.detail["q"] = *eigen_q;
        if (!decided) {
          auto raw = reshuffle_uniformize(m, spec.seed, *eigen_q);
          auto cert = minimize_uniform(spec.coding ? with_outer_coding(raw, *spec.coding) : raw);
          s.detail["reshuffled_alphabet_size"] = raw.alphabet().size();
          s.detail["certificate"] = cert;
          automatic("eigenvector", *eigen_q, cert,
                    "left-eigenvector criterion, q=" + std::to_string(*eigen_q));
        }
      }
    }
    rep.stages.push_back(std::move(s));
  }

  // Anagram decomposition.
  {
    StageRecord s{"anagram", "failure"};
    if (erasing) {
      s.outcome = "not_applicable";
      s.detail["reason"] = "erasing morphism";
    } else if (auto cert = anagram_decomposition(m)) {
      s.outcome = "success";
      nlohmann::json words = nlohmann::json::array();
      for (const auto& w : cert->anagram_set) words.push_back(format_word(m.alphabet(), w));
      s.detail = {{"block_length", cert->block_length}, {"anagram_set", words},
                  {"per_letter_counts", cert->per_letter_counts}, {"shared_parikh", cert->shared_parikh},
                  {"degree", cert->degree}};
      if (cert->degree >= 2 && (!eigen_q || *eigen_q != cert->degree))
        throw std::logic_error("anagram certificate without matching eigenvector criterion");
      if (!decided && cert->degree >= 2) {
        auto raw = reshuffle_uniformize(m, spec.seed, cert->degree);
        automatic("anagram", cert->degree,
                  minimize_uniform(spec.coding ? with_outer_coding(raw, *spec.coding) : raw),
                  "anagram decomposition, d=" + std::to_string(cert->degree));
      }
    }
    rep.stages.push_back(std::move(s));
  }

  // Non-overlapping k-blocks.
  {
    StageRecord s{"blocks", decided ? "skipped" : "failure"};
    if (!decided && erasing) {
      s.outcome = "not_applicable";
      s.detail["reason"] = "erasing morphism";
    } else if (!decided) {
      nlohmann::json attempts = nlohmann::json::array();
      for (std::size_t k = opt.k_min; k <= opt.k_max && !decided; ++k) {
        auto induced = block_morphism(spec, k);
        nlohmann::json a = {{"k", k}};
        if (!induced.result) {
          a["result"] = "failed";
          a["reason"] = induced.failure;
        } else {
          const auto& bm = *induced.result;
          a["blocks"] = bm.blocks.size();
          a["morphism"] = morphism_json(bm.morphism);
          if (auto q = bm.uniform_length(); q && *q >= 2) {
            a["result"] = "uniform";
            a["q"] = *q;
            s.outcome = "success";
            automatic("blocks", *q, minimize_uniform(block_uniform_representation(bm, spec)),
                      std::to_string(k) + "-block morphism " + detail::describe_block_morphism(bm.morphism) +
                          " (uniform length " + std::to_string(*q) + ")");
          } else {
            a["result"] = "non_uniform";
          }
        }
        attempts.push_back(std::move(a));
      }
      s.detail["attempts"] = std::move(attempts);
    }
    rep.stages.push_back(std::move(s));
  }

  // Irrational dominant eigenvalue.
  {
    StageRecord s{"irrationality", "failure"};
    if (erasing) {
      s.outcome = "not_applicable";
      s.detail["reason"] = "erasing morphism";
    } else if (spec.coding && !detail::injective(*spec.coding)) {
      s.outcome = "not_applicable";
      s.detail["reason"] = "non-injective coding";
    } else if (m.uniform_length()) {
      s.outcome = "not_applicable";
      s.detail["reason"] = "uniform morphism";
    } else {
      auto inc = incidence(m);
      bool primitive = is_primitive(inc.matrix);
      auto spectral = spectral_report(inc.matrix, opt.tolerance);
      s.detail["primitive"] = primitive;
      s.detail["spectral"] = spectral;
      if (primitive && !spectral.dominant_is_integer) {
        if (eigen_q) throw std::logic_error("irrational dominant eigenvalue with a valid eigenvector criterion");
        s.outcome = "success";
        if (!decided) {
          v.kind = VerdictKind::not_automatic;
          v.stage = "irrationality";
          v.summary = "NotAutomatic: primitive, dominant eigenvalue irrational, charpoly " +
                      spectral.char_poly.to_string();
          v.spectral = spectral;
          decided = true;
        }
      }
    }
    rep.stages.push_back(std::move(s));
  }

  // Evidence for undecided sequences.
  {
    StageRecord s{"evidence", decided ? "skipped" : "success"};
    if (!decided) {
      auto profile = factor_complexity(spec, opt.complexity_window, opt.complexity_prefix);
      s.detail["complexity"] = profile;
      nlohmann::json witnesses = nlohmann::json::array();
      if (!spec.coding || spec.coding->is_identity())
        witnesses = detail::subalphabet_witnesses(spec, opt);
      else
        s.detail["note"] = "coded sequence: sub-alphabet witnesses skipped";
      s.detail["subsequences"] = witnesses;
      v.kind = VerdictKind::unknown;
      v.stage = "evidence";
      v.evidence = s.detail;
      v.summary = "Unknown: no criterion applies";
      for (const auto& w : witnesses)
        if (w["sturmian"].get<bool>() && w["prefix_occurs_in_sequence"].get<bool>()) {
          std::string letters;
          for (const auto& l : w["letters"]) letters += (letters.empty() ? "" : ",") + l.get<std::string>();
          v.summary += "; Sturmian evidence on sub-alphabet {" + letters + "}";
          break;
        }
    }
    rep.stages.push_back(std::move(s));
  }
  return rep;
}

inline nlohmann::json to_json(const AnalysisReport& rep, const std::string& input = {}) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : rep.stages) stages.push_back({{"name", s.name}, {"outcome", s.outcome}, {"detail", s.detail}});
  const Verdict& v = rep.verdict;
  nlohmann::json verdict = {{"kind", to_string(v.kind)}, {"stage", v.stage}, {"summary", v.summary}};
  if (v.kind == VerdictKind::automatic) {
    verdict["q"] = v.q;
    verdict["base"] = v.base;
    verdict["certificate"] = *v.certificate;
  }
  if (v.spectral) verdict["spectral"] = *v.spectral;
  if (v.kind == VerdictKind::unknown) verdict["evidence"] = v.evidence;
  nlohmann::json out = {{"schema_version", report_schema_version}, {"verdict", verdict}, {"stages", stages}};
  if (!input.empty()) out["input"] = input;
  return out;
}

}  // namespace hiddenauto
