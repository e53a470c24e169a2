#include "galelab/concepts.hpp"

#include <algorithm>

#include "galelab/entropy.hpp"

namespace galelab {

namespace {

// cap on floor(alpha * 2^n) conversions used as in-memory sizes
std::size_t cap_to_size(const BigInt& v) { return v.convert_to<std::size_t>(); }

// k distinct positions out of range_size, via partial Fisher-Yates
std::vector<std::size_t> sample_positions(std::size_t range_size, std::size_t k, SplitMix64& rng) {
  std::vector<std::size_t> idx(range_size);
  for (std::size_t i = 0; i < range_size; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(range_size - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

BitString block_with_ones(std::size_t length, const std::vector<std::size_t>& ones) {
  std::vector<std::uint8_t> bits(length, 0);
  for (auto p : ones) bits[p] = 1;
  return BitString(std::move(bits));
}

class DensityClass final : public ConceptClass {
public:
  explicit DensityClass(Rational alpha) : alpha_(std::move(alpha)) {
    if (alpha_ <= 0 || alpha_ > 1)
      throw_error(ErrorKind::Domain, "density class requires 0 < alpha <= 1");
  }

  std::string name() const override { return "density(" + format_rational(alpha_) + ")"; }

  std::size_t ones_cap(unsigned n) const { return cap_to_size(floor_mul_pow2(alpha_, n)); }

  bool contains_block(unsigned n, const BitString& block) const override {
    check_block_length(n, block);
    return block.popcount() <= ones_cap(n);
  }

  BitString sample_block(unsigned n, SplitMix64& rng) const override {
    const std::size_t len = block_length(n);
    const std::size_t k = static_cast<std::size_t>(rng.below(ones_cap(n) + 1));
    return block_with_ones(len, sample_positions(len, k, rng));
  }

  BitString extremal_block(unsigned n, SplitMix64& rng) const override {
    const std::size_t len = block_length(n);
    return block_with_ones(len, sample_positions(len, ones_cap(n), rng));
  }

  BigInt count_extensions(unsigned n, const BitString& prefix) const override {
    const std::size_t len = block_length(n);
    if (prefix.size() > len) throw_error(ErrorKind::Domain, "prefix longer than block");
    const std::size_t used = prefix.popcount();
    const std::size_t cap = ones_cap(n);
    if (used > cap) return 0;
    const std::uint64_t remaining = len - prefix.size();
    const std::uint64_t budget = std::min<std::uint64_t>(cap - used, remaining);
    return entropy::binomial_tail(remaining, budget);
  }

private:
  void check_block_length(unsigned n, const BitString& block) const {
    if (block.size() != block_length(n))
      throw_error(ErrorKind::Domain, "block has wrong length for n=" + std::to_string(n));
  }

  Rational alpha_;
};

class PaddedClass final : public ConceptClass {
public:
  explicit PaddedClass(Rational alpha) : alpha_(std::move(alpha)) {
    if (alpha_ <= 0 || alpha_ >= 1)
      throw_error(ErrorKind::Domain, "padded class requires 0 < alpha < 1");
  }

  std::string name() const override { return "padded(" + format_rational(alpha_) + ")"; }

  std::size_t free_count(unsigned n) const { return cap_to_size(floor_mul_pow2(alpha_, n)); }

  bool contains_block(unsigned n, const BitString& block) const override {
    if (block.size() != block_length(n))
      throw_error(ErrorKind::Domain, "block has wrong length for n=" + std::to_string(n));
    const std::size_t free = free_count(n);
    for (std::size_t i = free; i < block.size(); ++i)
      if (block[i]) return false;
    return true;
  }

  std::vector<BitString> enumerate_blocks(unsigned n) const override {
    const std::size_t free = free_count(n);
    if (free > 16) throw_error(ErrorKind::Budget, "padded enumeration limited to 2^16 blocks");
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << free);
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << free); ++idx) {
      BitString b = BitString::from_index(free, idx);
      for (std::size_t i = free; i < block_length(n); ++i) b.push_back(0);
      out.push_back(std::move(b));
    }
    return out;
  }

  BitString sample_block(unsigned n, SplitMix64& rng) const override {
    const std::size_t free = free_count(n);
    std::vector<std::uint8_t> bits(block_length(n), 0);
    for (std::size_t i = 0; i < free; ++i) bits[i] = static_cast<std::uint8_t>(rng.coin());
    return BitString(std::move(bits));
  }

  std::optional<std::vector<std::size_t>> free_positions(unsigned n) const override {
    std::vector<std::size_t> pos(free_count(n));
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    return pos;
  }

  BigInt count_extensions(unsigned n, const BitString& prefix) const override {
    const std::size_t len = block_length(n);
    if (prefix.size() > len) throw_error(ErrorKind::Domain, "prefix longer than block");
    const std::size_t free = free_count(n);
    for (std::size_t i = free; i < prefix.size(); ++i)
      if (prefix[i]) return 0;
    const std::size_t free_left = (prefix.size() < free) ? free - prefix.size() : 0;
    return BigInt(1) << free_left;
  }

private:
  Rational alpha_;
};

}  // namespace

void ConceptClass::check_enumeration_budget(unsigned n) const {
  if (n > 4)
    throw_error(ErrorKind::Budget,
                "enumeration over 2^(2^" + std::to_string(n) + ") blocks is out of budget");
}

std::vector<BitString> ConceptClass::enumerate_blocks(unsigned n) const {
  check_enumeration_budget(n);
  const std::size_t len = block_length(n);
  std::vector<BitString> out;
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << len); ++idx) {
    BitString b = BitString::from_index(len, idx);
    if (contains_block(n, b)) out.push_back(std::move(b));
  }
  return out;
}

BigInt ConceptClass::count_extensions(unsigned n, const BitString& prefix) const {
  check_enumeration_budget(n);
  BigInt count = 0;
  for (const auto& b : enumerate_blocks(n)) {
    if (b.size() < prefix.size()) continue;
    if (b.prefix(prefix.size()) == prefix) ++count;
  }
  return count;
}

std::shared_ptr<ConceptClass> density_class(const Rational& alpha) {
  return std::make_shared<DensityClass>(alpha);
}

std::shared_ptr<ConceptClass> padded_class(const Rational& alpha) {
  return std::make_shared<PaddedClass>(alpha);
}

LanguagePrefix sample_language(const ConceptClass& cls, unsigned n_max, std::uint64_t seed,
                               SampleMode mode) {
  SplitMix64 rng(seed);
  BitString bits;
  for (unsigned n = 0; n <= n_max; ++n) {
    BitString block =
        (mode == SampleMode::Extremal) ? cls.extremal_block(n, rng) : cls.sample_block(n, rng);
    if (!cls.contains_block(n, block))
      throw_error(ErrorKind::EmptyClass, cls.name() + " sampler produced an invalid block at n=" +
                                             std::to_string(n));
    bits.append(block);
  }
  return LanguagePrefix(std::move(bits), n_max);
}

}  // namespace galelab
