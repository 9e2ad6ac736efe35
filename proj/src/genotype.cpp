#include "nkcloud/genotype.hpp"

#include <stdexcept>

namespace nkcloud {

Genotype::Genotype(std::uint32_t word, int length) : word_(word), length_(length) {
  if (length < 1 || length > kMaxLoci) {
    throw std::invalid_argument("genotype length must be in [1, 32], got " + std::to_string(length));
  }
  if (length < kMaxLoci && (word >> length) != 0) {
    throw std::invalid_argument("genotype word has bits beyond length " + std::to_string(length));
  }
}

Genotype Genotype::from_string(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxLoci)) {
    throw std::invalid_argument("genotype string must hold 1..32 loci");
  }
  std::uint32_t word = 0;
  for (const char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("genotype string may contain only '0' and '1'");
    word = (word << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return Genotype(word, static_cast<int>(text.size()));
}

std::string Genotype::to_string() const {
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i) {
    if ((*this)[i]) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

}  // namespace nkcloud
