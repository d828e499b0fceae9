// hiddenauto: command-line front end.
//
// Exit codes:
//   0  success
//   1  usage error
//   2  input error (unreadable file, .morph syntax, non-prolongable seed)
//   3  internal assertion failure
//   4  construction precondition not met (criterion fails, bad CUP params, ...)
//   5  negative result (compare: sequences differ; corpus: mismatch)

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "hiddenauto/hiddenauto.hpp"

#ifndef HIDDENAUTO_CORPUS_DIR
#define HIDDENAUTO_CORPUS_DIR "corpus"
#endif

namespace ha = hiddenauto;

namespace {

enum Exit { ok = 0, usage = 1, input = 2, internal = 3, precondition = 4, negative = 5 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ha::MorphicSpec load(const std::string& path) {
  ha::MorphicSpec spec;
  try {
    spec = ha::parse_morphism(ha::read_file(path));
  } catch (const ha::Error& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!ha::is_prolongable(spec.morphism, spec.seed))
    throw InputError(path + ": seed '" + spec.alphabet().name(spec.seed) + "' is not prolongable");
  return spec;
}

int cmd_analyze(const std::string& path, bool json, std::size_t depth, std::size_t kmax) {
  auto spec = load(path);
  ha::AnalyzeOptions opt;
  opt.depth = depth;
  opt.k_max = kmax;
  ha::AnalysisReport rep;
  try {
    rep = ha::analyze(spec, opt);
  } catch (const ha::Error& e) {
    throw InputError(path + ": " + e.what());
  }
  if (json) {
    std::cout << ha::to_json(rep, path).dump(2) << '\n';
    return ok;
  }
  std::cout << rep.verdict.summary << '\n';
  for (const auto& s : rep.stages) std::cout << "  " << s.name << ": " << s.outcome << '\n';
  return ok;
}

int cmd_uniformize(const std::string& path, bool minimize) {
  auto spec = load(path);
  if (spec.morphism.is_erasing()) {
    std::cerr << "uniformize: morphism is erasing\n";
    return precondition;
  }
  auto q = ha::eigenvector_criterion(spec.morphism);
  if (!q) {
    std::cerr << "uniformize: the length vector is not a left eigenvector of the incidence matrix "
                 "(with eigenvalue >= 2); no reshuffled uniform morphism exists\n";
    return precondition;
  }
  auto u = ha::reshuffle_uniformize(spec.morphism, spec.seed, *q);
  if (spec.coding) u = ha::with_outer_coding(u, *spec.coding);
  if (minimize) u = ha::minimize_uniform(u);
  std::cout << ha::to_morph(u.to_spec(), {"derived-from: " + path + (minimize ? " (reshuffled, minimized)" : " (reshuffled)"),
                                          std::to_string(u.q()) + "-uniform"});
  return ok;
}

int cmd_blocks(const std::string& path, std::size_t k) {
  auto spec = load(path);
  auto induced = ha::block_morphism(spec, k);
  if (!induced.result) {
    std::cerr << "blocks: " << induced.failure << '\n';
    return precondition;
  }
  const auto& bm = *induced.result;
  std::vector<std::string> header{"derived-from: " + path + " (" + std::to_string(k) + "-block morphism)"};
  for (ha::Letter b = 0; b < bm.blocks.size(); ++b)
    header.push_back("block " + bm.morphism.alphabet().name(b) + " = " + ha::format_word(spec.alphabet(), bm.blocks[b]));
  if (auto q = bm.uniform_length())
    header.push_back("uniform length " + std::to_string(*q));
  else
    header.push_back("non-uniform");
  std::cout << ha::to_morph({bm.morphism, bm.seed, std::nullopt}, header);
  return ok;
}

int cmd_cup(const std::string& path, std::optional<std::size_t> pair_pos, std::optional<std::size_t> split) {
  auto spec = load(path);
  if (!spec.morphism.uniform_length()) {
    std::cerr << "cup: input morphism is not uniform\n";
    return precondition;
  }
  auto u = ha::UniformRepresentation::from_spec(spec);
  ha::CupParams params;
  if (auto p = ha::auto_cup_params(u)) params = *p;
  if (pair_pos) params.pair_position = *pair_pos;
  if (split) params.split = *split;
  auto out = ha::cup_transform(u, params);
  auto check = ha::verify_back(out);
  std::string verdict = check.holds ? "L'M' = " + ha::to_string(*check.lambda) + " L' (holds)" : "L'M' != lambda L' (fails)";
  std::cout << ha::to_morph(out, {"derived-from: " + path + " (CUP, pair position " + std::to_string(params.pair_position) +
                                      ", split " + std::to_string(params.split) + ")",
                                  "verify_back: " + verdict});
  return check.holds ? ok : internal;
}

int cmd_compare(const std::string& a, const std::string& b, std::size_t n) {
  auto sa = load(a), sb = load(b);
  auto xa = ha::iterate_fixed_point(sa, n), xb = ha::iterate_fixed_point(sb, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& la = sa.output_alphabet().name(xa[i]);
    const auto& lb = sb.output_alphabet().name(xb[i]);
    if (la != lb) {
      std::cout << "differ at position " << i << ": " << la << " vs " << lb << '\n';
      return negative;
    }
  }
  std::cout << "equal\n";
  return ok;
}

int cmd_generate(const std::string& path, std::size_t n) {
  auto spec = load(path);
  std::cout << ha::format_word(spec.output_alphabet(), ha::iterate_fixed_point(spec, n)) << '\n';
  return ok;
}

int cmd_complexity(const std::string& path, std::size_t nmax, std::size_t prefix, bool csv) {
  auto spec = load(path);
  auto profile = ha::factor_complexity(spec, nmax, prefix);
  if (csv) {
    std::cout << ha::complexity_csv(profile);
    return ok;
  }
  nlohmann::json j = profile;
  bool sturmian = true;
  for (std::size_t n = 1; n <= nmax; ++n) sturmian = sturmian && profile(n) == n + 1;
  j["sturmian_evidence"] = sturmian;
  std::cout << j.dump(2) << '\n';
  return ok;
}

int cmd_corpus(const std::string& dir, bool run, bool json) {
  auto entries = ha::load_corpus(dir);
  if (entries.empty()) {
    std::cerr << "warning: corpus directory " << dir << " has no entries\n";
    return ok;
  }
  if (!run) {
    for (const auto& e : entries) std::cout << e.name << "  " << e.expected.dump() << '\n';
    return ok;
  }
  bool all = true;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& e : entries) {
    auto r = ha::run_corpus_entry(e);
    all = all && r.pass;
    results.push_back({{"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"mismatches", r.mismatches}});
    if (!json) {
      std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  " << r.summary << '\n';
      for (const auto& m : r.mismatches) std::cout << "      " << m << '\n';
    }
  }
  if (json) std::cout << results.dump(2) << '\n';
  else std::cout << (all ? "all entries pass" : "corpus mismatch") << '\n';
  return all ? ok : negative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hiddenauto: find hidden automatic sequences among fixed points of morphisms"};
  app.require_subcommand(1);

  std::string path, path_b, corpus_dir = HIDDENAUTO_CORPUS_DIR;
  bool json = false, minimize = false, run = false, csv = false;
  std::size_t depth = 10000, kmax = 8, k = 2, n = 100, nmax = 30, prefix = 10000;
  std::optional<std::size_t> pair_pos, split;
  int code = ok;

  auto* analyze = app.add_subcommand("analyze", "decide or gather evidence on automaticity");
  analyze->add_option("file", path, ".morph file")->required();
  analyze->add_flag("--json", json, "emit the JSON report");
  analyze->add_option("--depth", depth, "certificate verification depth");
  analyze->add_option("--kmax", kmax, "largest block size to search");
  analyze->callback([&] { code = cmd_analyze(path, json, depth, kmax); });

  auto* uniformize = app.add_subcommand("uniformize", "reshuffle into a uniform morphism plus coding");
  uniformize->add_option("file", path)->required();
  uniformize->add_flag("--minimize", minimize, "merge equivalent letters");
  uniformize->callback([&] { code = cmd_uniformize(path, minimize); });

  auto* blocks = app.add_subcommand("blocks", "induce the non-overlapping k-block morphism");
  blocks->add_option("file", path)->required();
  blocks->add_option("-k", k, "block size")->check(CLI::Range(2, 64));
  blocks->callback([&] { code = cmd_blocks(path, k); });

  auto* cup = app.add_subcommand("cup", "Create-Unique-Pair transform of a uniform morphism");
  cup->add_option("file", path)->required();
  cup->add_option("--pair-pos", pair_pos, "position of the pair in the seed image");
  cup->add_option("--split", split, "length of z in the split of the pair's image");
  cup->callback([&] { code = cmd_cup(path, pair_pos, split); });

  auto* compare = app.add_subcommand("compare", "compare two coded fixed points");
  compare->add_option("a", path)->required();
  compare->add_option("b", path_b)->required();
  compare->add_option("-n", n, "prefix length");
  compare->callback([&] { code = cmd_compare(path, path_b, n); });

  auto* generate = app.add_subcommand("generate", "print a prefix of the coded fixed point");
  generate->add_option("file", path)->required();
  generate->add_option("-n", n, "prefix length");
  generate->callback([&] { code = cmd_generate(path, n); });

  auto* complexity = app.add_subcommand("complexity", "factor complexity of a prefix");
  complexity->add_option("file", path)->required();
  complexity->add_option("--nmax", nmax, "largest factor length");
  complexity->add_option("-N", prefix, "prefix length");
  complexity->add_flag("--csv", csv, "emit n,p(n) as CSV");
  complexity->callback([&] { code = cmd_complexity(path, nmax, prefix, csv); });

  auto* corpus = app.add_subcommand("corpus", "list or run the regression corpus");
  corpus->add_option("--dir", corpus_dir, "corpus directory");
  corpus->add_flag("--run", run, "analyze every entry and compare with its expectation");
  corpus->add_flag("--json", json, "emit results as JSON");
  corpus->callback([&] { code = cmd_corpus(corpus_dir, run, json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : usage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input;
  } catch (const ha::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return precondition;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return internal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return internal;
  }
  return code;
}
