#include "galelab/bits.hpp"

#include <algorithm>

namespace galelab {

BitString BitString::from_string(const std::string& s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      throw_error(ErrorKind::Parse, std::string("invalid bit character '") + c + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitString(std::move(bits));
}

BitString BitString::from_index(std::size_t length, std::uint64_t idx) {
  if (length > 63) throw_error(ErrorKind::Budget, "from_index limited to 63 bits");
  std::vector<std::uint8_t> bits(length);
  for (std::size_t j = 0; j < length; ++j)
    bits[j] = static_cast<std::uint8_t>((idx >> (length - 1 - j)) & 1);
  return BitString(std::move(bits));
}

BitString BitString::prefix(std::size_t len) const { return substr(0, len); }

BitString BitString::substr(std::size_t pos, std::size_t len) const {
  if (pos + len > bits_.size()) throw_error(ErrorKind::Domain, "substr out of range");
  return BitString(std::vector<std::uint8_t>(bits_.begin() + pos, bits_.begin() + pos + len));
}

std::size_t BitString::popcount() const {
  std::size_t c = 0;
  for (auto b : bits_) c += b;
  return c;
}

std::uint64_t BitString::to_index() const {
  if (bits_.size() > 63) throw_error(ErrorKind::Budget, "to_index limited to 63 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

BlockPos block_of_position(std::size_t pos) {
  unsigned n = 0;
  while (boundary_length(n) <= pos) ++n;
  return BlockPos{n, pos - block_start(n)};
}

LanguagePrefix::LanguagePrefix(BitString bits, unsigned n_max) : bits_(std::move(bits)), n_max_(n_max) {
  if (bits_.size() != boundary_length(n_max))
    throw_error(ErrorKind::Domain, "language prefix length does not cover blocks 0.." + std::to_string(n_max));
}

BitString LanguagePrefix::block(unsigned n) const {
  if (n > n_max_) throw_error(ErrorKind::Domain, "block index beyond n_max");
  return bits_.substr(block_start(n), block_length(n));
}

std::string LanguagePrefix::serialize() const {
  return "nmax=" + std::to_string(n_max_) + "\n" + bits_.to_string() + "\n";
}

LanguagePrefix LanguagePrefix::deserialize(const std::string& text) {
  const auto nl = text.find('\n');
  if (nl == std::string::npos || text.rfind("nmax=", 0) != 0)
    throw_error(ErrorKind::Parse, "language prefix file must start with 'nmax=<n>'");
  const unsigned n_max = static_cast<unsigned>(std::stoul(text.substr(5, nl - 5)));
  std::string body = text.substr(nl + 1);
  body.erase(std::remove(body.begin(), body.end(), '\n'), body.end());
  return LanguagePrefix(BitString::from_string(body), n_max);
}

}  // namespace galelab
