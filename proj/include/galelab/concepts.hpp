#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galelab/bits.hpp"
#include "galelab/numeric.hpp"
#include "galelab/rng.hpp"

namespace galelab {

// Per-length block predicate/enumerator over characteristic-sequence blocks.
// Blocks of length 2^n are the extensional concepts on {0,1}^n.
class ConceptClass {
public:
  virtual ~ConceptClass() = default;

  virtual std::string name() const = 0;
  virtual bool contains_block(unsigned n, const BitString& block) const = 0;

  // All valid blocks at length n, lexicographic. Budget error when the
  // instance space is too large to enumerate (default path: n <= 4).
  virtual std::vector<BitString> enumerate_blocks(unsigned n) const;

  virtual BitString sample_block(unsigned n, SplitMix64& rng) const = 0;
  // hardest member under the class constraint; defaults to sample_block
  virtual BitString extremal_block(unsigned n, SplitMix64& rng) const { return sample_block(n, rng); }

  // positions whose bits are unconstrained, when the class has that shape
  virtual std::optional<std::vector<std::size_t>> free_positions(unsigned) const { return std::nullopt; }

  // #valid blocks of length 2^n extending the within-block prefix, exact.
  // Overridden with closed forms where enumeration is out of reach.
  virtual BigInt count_extensions(unsigned n, const BitString& prefix) const;

  BigInt count_blocks(unsigned n) const { return count_extensions(n, BitString{}); }

protected:
  void check_enumeration_budget(unsigned n) const;
};

// C_alpha: blocks whose popcount is at most floor(alpha * 2^n).
std::shared_ptr<ConceptClass> density_class(const Rational& alpha);

// Padded class: the first floor(alpha * 2^n) positions of each block are free,
// every other bit is zero.
std::shared_ptr<ConceptClass> padded_class(const Rational& alpha);

enum class SampleMode { Random, Extremal };

// Concatenation of independently sampled valid blocks for n = 0..n_max;
// deterministic for a fixed seed (SplitMix64 stream).
LanguagePrefix sample_language(const ConceptClass& cls, unsigned n_max, std::uint64_t seed,
                               SampleMode mode = SampleMode::Random);

}  // namespace galelab
