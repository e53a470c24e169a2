#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "galelab/error.hpp"

namespace galelab {

// A finite binary string. Lexicographic order over equal lengths coincides
// with numeric order of from_index/to_index (bit 0 is the most significant).
class BitString {
public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  static BitString from_string(const std::string& s);
  // the idx-th string of the given length in lexicographic order
  static BitString from_index(std::size_t length, std::uint64_t idx);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }

  void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit & 1)); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  BitString prefix(std::size_t len) const;
  BitString substr(std::size_t pos, std::size_t len) const;

  std::size_t popcount() const;
  std::uint64_t to_index() const;
  std::string to_string() const;

  bool operator==(const BitString& o) const { return bits_ == o.bits_; }
  bool operator!=(const BitString& o) const { return bits_ != o.bits_; }
  bool operator<(const BitString& o) const { return bits_ < o.bits_; }

private:
  std::vector<std::uint8_t> bits_;
};

// Characteristic-sequence block layout: block n occupies global indices
// 2^n - 1 .. 2^{n+1} - 2 and has length 2^n.
inline std::size_t block_start(unsigned n) { return (std::size_t{1} << n) - 1; }
inline std::size_t block_length(unsigned n) { return std::size_t{1} << n; }
// prefix length that ends exactly at the block-n boundary
inline std::size_t boundary_length(unsigned n) { return (std::size_t{2} << n) - 1; }

// block index and within-block offset of global position pos
struct BlockPos {
  unsigned block;
  std::size_t offset;
};
BlockPos block_of_position(std::size_t pos);

// A language prefix: the first bits of a characteristic sequence, covering
// complete blocks 0..n_max.
class LanguagePrefix {
public:
  LanguagePrefix(BitString bits, unsigned n_max);

  const BitString& bits() const { return bits_; }
  unsigned n_max() const { return n_max_; }
  BitString block(unsigned n) const;

  // one-line header "nmax=<n>" followed by the ASCII 0/1 string
  std::string serialize() const;
  static LanguagePrefix deserialize(const std::string& text);

private:
  BitString bits_;
  unsigned n_max_;
};

}  // namespace galelab
