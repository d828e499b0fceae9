// Certificate-producing constructions:
//  - reshuffling a morphism whose length vector is a left eigenvector into a
//    uniform morphism plus coding,
//  - DFAO-style minimization and isomorphism of uniform representations,
//  - induction of the non-overlapping k-block morphism of a fixed point,
//  - the Create-Unique-Pair (CUP) transform and its eigenvector check.

#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hiddenauto/linalg.hpp"
#include "hiddenauto/word.hpp"

namespace hiddenauto {

/// A q-uniform morphism, a coding and a prolongable seed: a certificate that
/// the coded fixed point is q-automatic.
class UniformRepresentation {
 public:
  UniformRepresentation(Morphism morphism, Coding coding, Letter seed)
      : morphism_(std::move(morphism)), coding_(std::move(coding)), seed_(seed) {
    auto q = morphism_.uniform_length();
    if (!q || *q < 1) throw Error("uniform representation: morphism is not uniform");
    q_ = *q;
    if (!(coding_.source() == morphism_.alphabet()))
      throw Error("uniform representation: coding source differs from the morphism alphabet");
    if (!is_prolongable(morphism_, seed_)) throw Error("uniform representation: seed is not prolongable");
  }

  static UniformRepresentation from_spec(const MorphicSpec& spec) {
    return {spec.morphism, spec.coding ? *spec.coding : Coding::identity(spec.alphabet()), spec.seed};
  }

  std::size_t q() const noexcept { return q_; }
  const Morphism& morphism() const noexcept { return morphism_; }
  const Coding& coding() const noexcept { return coding_; }
  Letter seed() const noexcept { return seed_; }
  const Alphabet& alphabet() const noexcept { return morphism_.alphabet(); }
  const Alphabet& output_alphabet() const noexcept { return coding_.target(); }

  MorphicSpec to_spec() const { return {morphism_, seed_, coding_}; }

 private:
  Morphism morphism_;
  Coding coding_;
  Letter seed_;
  std::size_t q_ = 0;
};

/// Replaces the coding c of u by outer o c.
inline UniformRepresentation with_outer_coding(const UniformRepresentation& u, const Coding& outer) {
  return {u.morphism(), compose(outer, u.coding()), u.seed()};
}

/// Letter a(i, j) of the expanded alphabet: position j (1-based) in the image
/// of base letter i.
struct ExpandedLetter {
  Letter base;
  std::size_t position;
};

/// Reshuffles m into a q-uniform morphism on the letters a(i, j). The word
/// E_i concatenates the expansions a(c,1)..a(c,L_c) of the letters c of m(i);
/// |E_i| = (LM)_i = q L_i, and the image of a(i, j) is the j-th slice of
/// length q of E_i. The coding sends a(i, j) to m(i)_j.
inline UniformRepresentation reshuffle_uniformize(const Morphism& m, Letter seed, std::size_t q) {
  if (m.is_erasing()) throw Error("reshuffle: morphism is erasing");
  auto inc = incidence(m);
  auto lambda = left_eigencheck(inc.length_vector, inc.matrix);
  if (!lambda || *lambda != Rational(BigInt(q)))
    throw Error("reshuffle: length vector is not a left eigenvector for " + std::to_string(q));
  if (!is_prolongable(m, seed)) throw Error("reshuffle: seed is not prolongable");

  std::vector<std::size_t> offset(m.size() + 1, 0);
  for (Letter i = 0; i < m.size(); ++i) offset[i + 1] = offset[i] + m.image(i).size();

  std::vector<std::string> names;
  std::vector<Letter> code;
  for (Letter i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.image(i).size(); ++j) {
      names.push_back(m.alphabet().name(i) + "." + std::to_string(j + 1));
      code.push_back(m.image(i)[j]);
    }

  std::vector<Word> images(offset.back());
  for (Letter i = 0; i < m.size(); ++i) {
    Word e;
    for (Letter c : m.image(i))
      for (std::size_t j = 0; j < m.image(c).size(); ++j) e.push_back(static_cast<Letter>(offset[c] + j));
    if (e.size() != q * m.image(i).size()) throw std::logic_error("reshuffle: expansion length mismatch");
    for (std::size_t j = 0; j < m.image(i).size(); ++j)
      images[offset[i] + j] = Word(e.begin() + j * q, e.begin() + (j + 1) * q);
  }

  Alphabet expanded(std::move(names));
  Morphism tau(expanded, std::move(images));
  return {std::move(tau), Coding(expanded, m.alphabet(), std::move(code)), static_cast<Letter>(offset[seed])};
}

inline ExpandedLetter expanded_letter(const Morphism& m, Letter expanded) {
  Letter i = 0;
  std::size_t rest = expanded;
  while (rest >= m.image(i).size()) rest -= m.image(i++).size();
  return {i, rest + 1};
}

/// Coarsest quotient of the seed-reachable part of u in which merged letters
/// share their coding output and have position-wise equivalent images
/// (Moore partition refinement). The coded fixed point is unchanged.
inline UniformRepresentation minimize_uniform(const UniformRepresentation& u) {
  const Morphism& m = u.morphism();
  auto reachable = reachable_letters(m, u.seed());

  std::vector<std::size_t> cls(m.size(), 0);
  auto refine = [&](auto signature_of) {
    std::map<decltype(signature_of(Letter{})), std::size_t> ids;
    std::vector<std::size_t> next(m.size(), 0);
    for (Letter l : reachable) next[l] = ids.try_emplace(signature_of(l), ids.size()).first->second;
    cls = std::move(next);
    return ids.size();
  };
  std::size_t count = refine([&](Letter l) { return std::vector<std::size_t>{u.coding()(l)}; });
  for (;;) {
    std::size_t refined = refine([&, prev = cls](Letter l) {
      std::vector<std::size_t> sig{prev[l]};
      for (Letter c : m.image(l)) sig.push_back(prev[c]);
      return sig;
    });
    if (refined == count) break;
    count = refined;
  }

  // Renumber classes by first appearance in alphabet order.
  std::vector<std::optional<Letter>> renumber(count);
  std::vector<Letter> representative;
  for (Letter l : reachable)
    if (!renumber[cls[l]]) {
      renumber[cls[l]] = static_cast<Letter>(representative.size());
      representative.push_back(l);
    }

  std::vector<std::string> names;
  std::vector<Word> images;
  std::vector<Letter> code;
  for (Letter rep : representative) {
    names.push_back(m.alphabet().name(rep));
    Word img;
    for (Letter c : m.image(rep)) img.push_back(*renumber[cls[c]]);
    images.push_back(std::move(img));
    code.push_back(u.coding()(rep));
  }
  Alphabet quotient(std::move(names));
  return {Morphism(quotient, std::move(images)), Coding(quotient, u.output_alphabet(), std::move(code)),
          *renumber[cls[u.seed()]]};
}

/// A letter bijection u1 -> u2 respecting seeds, images and coded output
/// names, found by synchronized BFS from the seeds.
inline std::optional<std::vector<Letter>> iso_equivalent(const UniformRepresentation& u1,
                                                         const UniformRepresentation& u2) {
  if (u1.q() != u2.q() || u1.alphabet().size() != u2.alphabet().size()) return std::nullopt;
  const std::size_t n = u1.alphabet().size();
  std::vector<std::optional<Letter>> fwd(n), bwd(n);
  std::deque<Letter> queue;
  auto bind = [&](Letter a, Letter b) {
    if (fwd[a] || bwd[b]) return fwd[a] == b && bwd[b] == a;
    if (u1.output_alphabet().name(u1.coding()(a)) != u2.output_alphabet().name(u2.coding()(b))) return false;
    fwd[a] = b;
    bwd[b] = a;
    queue.push_back(a);
    return true;
  };
  if (!bind(u1.seed(), u2.seed())) return std::nullopt;
  while (!queue.empty()) {
    Letter a = queue.front();
    queue.pop_front();
    const Word& ia = u1.morphism().image(a);
    const Word& ib = u2.morphism().image(*fwd[a]);
    for (std::size_t i = 0; i < ia.size(); ++i)
      if (!bind(ia[i], ib[i])) return std::nullopt;
  }
  std::vector<Letter> out;
  for (const auto& f : fwd) {
    if (!f) return std::nullopt;
    out.push_back(*f);
  }
  return out;
}

/// The morphism induced on the k-blocks read at positions 0, k, 2k, ...
struct BlockMorphism {
  std::size_t k = 0;
  std::vector<Word> blocks;  // block letter -> its k letters (uncoded)
  Morphism morphism;         // over the block alphabet, in discovery order
  Letter seed = 0;           // always the first block

  std::optional<std::size_t> uniform_length() const { return morphism.uniform_length(); }
};

struct BlockInduction {
  std::optional<BlockMorphism> result;
  std::string failure;  // set when result is empty
};

inline std::string block_name(const Alphabet& a, const Word& block) {
  if (a.single_char()) return format_word(a, block);
  std::string s;
  for (std::size_t i = 0; i < block.size(); ++i) s += (i ? "|" : "") + a.name(block[i]);
  return s;
}

/// Discovers the k-blocks at positions multiple of k by closure from the
/// first block, cutting each block's image into k-blocks. Fails when an
/// image length is not a multiple of k, or when more than `max_blocks`
/// blocks appear (0 means |A|^k, capped at 10^6).
inline BlockInduction block_morphism(const MorphicSpec& spec, std::size_t k, std::size_t max_blocks = 0) {
  const Morphism& m = spec.morphism;
  if (k < 2) throw Error("block_morphism: k must be at least 2");
  if (m.is_erasing()) throw Error("block_morphism: morphism is erasing");
  if (max_blocks == 0) {
    max_blocks = 1;
    for (std::size_t i = 0; i < k && max_blocks < 1000000; ++i) max_blocks *= m.size();
    max_blocks = std::min<std::size_t>(max_blocks, 1000000);
  }

  std::map<Word, Letter> index;
  std::vector<Word> blocks{fixed_point_prefix(m, spec.seed, k)};
  index.emplace(blocks.front(), 0);
  std::vector<Word> images;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Word img = hiddenauto::apply(m, blocks[b]);
    if (img.size() % k != 0)
      return {std::nullopt, "image of block '" + block_name(m.alphabet(), blocks[b]) + "' has length " +
                                std::to_string(img.size()) + ", not a multiple of " + std::to_string(k)};
    Word induced;
    for (std::size_t pos = 0; pos < img.size(); pos += k) {
      Word piece(img.begin() + pos, img.begin() + pos + k);
      auto [it, fresh] = index.try_emplace(piece, static_cast<Letter>(blocks.size()));
      if (fresh) {
        if (blocks.size() >= max_blocks)
          return {std::nullopt, "more than " + std::to_string(max_blocks) + " blocks"};
        blocks.push_back(piece);
      }
      induced.push_back(it->second);
    }
    images.push_back(std::move(induced));
  }
  std::vector<std::string> names;
  for (const auto& b : blocks) names.push_back(block_name(m.alphabet(), b));
  BlockMorphism out{k, blocks, Morphism(Alphabet(std::move(names)), std::move(images)), 0};
  return {std::move(out), {}};
}

/// Replaces every block letter by its k letters.
inline Word flatten_blocks(const BlockMorphism& bm, std::span<const Letter> w) {
  Word out;
  for (Letter b : w) out.insert(out.end(), bm.blocks[b].begin(), bm.blocks[b].end());
  return out;
}

/// Uniform representation of the fixed point from a q-uniform block
/// morphism mu on k-blocks. Letter (B, j) stands for position kn + j with
/// block B at n. Position qN + i with N = kn + j equals k(qn + u) + v where
/// qj + i = ku + v, so the image of (B, j) is (mu(B)_u, v) for i < q. The
/// coding reads letter j of B, then applies the input coding.
inline UniformRepresentation block_uniform_representation(const BlockMorphism& bm, const MorphicSpec& spec) {
  auto q = bm.uniform_length();
  if (!q) throw Error("block morphism is not uniform");
  const std::size_t k = bm.k, nb = bm.blocks.size();
  auto letter = [k](std::size_t block, std::size_t j) { return static_cast<Letter>(block * k + j); };

  std::vector<std::string> names;
  std::vector<Letter> code;
  std::vector<Word> images;
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t j = 0; j < k; ++j) {
      names.push_back(bm.morphism.alphabet().name(static_cast<Letter>(b)) + "." + std::to_string(j));
      code.push_back(bm.blocks[b][j]);
      Word img;
      for (std::size_t i = 0; i < *q; ++i) {
        std::size_t t = *q * j + i;
        img.push_back(letter(bm.morphism.image(static_cast<Letter>(b))[t / k], t % k));
      }
      images.push_back(std::move(img));
    }
  Alphabet a(std::move(names));
  UniformRepresentation u(Morphism(a, std::move(images)), Coding(a, spec.alphabet(), std::move(code)),
                          letter(bm.seed, 0));
  return spec.coding ? with_outer_coding(u, *spec.coding) : u;
}

/// Pair position p in the seed image (letters b c at p, p + 1) and split s
/// cutting the image of bc into z (length s) and t (length 2k - s).
struct CupParams {
  std::size_t pair_position = 1;
  std::size_t split = 1;
};

/// Leftmost pair at position >= 1 and split 1.
inline std::optional<CupParams> auto_cup_params(const UniformRepresentation& u) {
  if (u.q() < 3) return std::nullopt;
  return CupParams{1, 1};
}

/// Create-Unique-Pair: turns the q-uniform u into a non-uniform morphic
/// spec with the same coded fixed point. Two new letters b', c' replace the
/// pair in the seed image; their images z and t split the image of bc. The
/// projection sends b' to b and c' to c, then applies u's coding.
inline MorphicSpec cup_transform(const UniformRepresentation& u, const CupParams& params) {
  const Morphism& g = u.morphism();
  const std::size_t k = u.q();
  const Word& seed_image = g.image(u.seed());
  if (params.pair_position < 1 || params.pair_position + 1 >= seed_image.size())
    throw Error("cup: pair position must satisfy 1 <= p and p + 1 < " + std::to_string(seed_image.size()));
  if (params.split < 1 || params.split > 2 * k - 1)
    throw Error("cup: split must lie in [1, " + std::to_string(2 * k - 1) + "] so that z and t are nonempty");

  Letter b = seed_image[params.pair_position];
  Letter c = seed_image[params.pair_position + 1];
  const Alphabet& a = g.alphabet();
  auto fresh = [&](std::string name, const std::vector<std::string>& taken) {
    do name += "'";
    while (a.find(name) || std::find(taken.begin(), taken.end(), name) != taken.end());
    return name;
  };
  std::vector<std::string> names = a.names();
  std::string bp = fresh(a.name(b), names);
  names.push_back(bp);
  std::string cp = fresh(a.name(c), names);
  names.push_back(cp);
  const Letter b_new = static_cast<Letter>(a.size()), c_new = b_new + 1;

  std::vector<Word> images = g.images();
  images[u.seed()][params.pair_position] = b_new;
  images[u.seed()][params.pair_position + 1] = c_new;
  Word bc = hiddenauto::apply(g, Word{b, c});
  images.emplace_back(bc.begin(), bc.begin() + params.split);
  images.emplace_back(bc.begin() + params.split, bc.end());

  Alphabet extended(std::move(names));
  std::vector<Letter> projection(a.size());
  for (Letter l = 0; l < a.size(); ++l) projection[l] = l;
  projection.push_back(b);
  projection.push_back(c);
  Coding d(extended, a, std::move(projection));
  return {Morphism(extended, std::move(images)), u.seed(), compose(u.coding(), d)};
}

struct EigenCheck {
  bool holds = false;  // L M = lambda L for an integer lambda
  std::optional<Rational> lambda;
};

inline EigenCheck verify_back(const MorphicSpec& spec) {
  if (spec.morphism.is_erasing()) return {};
  auto inc = incidence(spec.morphism);
  auto lambda = left_eigencheck(inc.length_vector, inc.matrix);
  return {lambda && denominator(*lambda) == 1, lambda};
}

}  // namespace hiddenauto
