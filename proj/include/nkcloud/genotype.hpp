#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace nkcloud {

inline constexpr int kMaxLoci = 32;

/// Fixed-length bit-string of 1..32 loci packed into one machine word.
///
/// Locus 0 is the most significant of the `size()` used bits, so the text form
/// (locus 0 leftmost) is the zero-padded binary numeral of `word()` and the
/// integer order of words is the lexicographic order of strings.
class Genotype {
 public:
  Genotype(std::uint32_t word, int length);

  /// Parses a string of '0'/'1' characters, locus 0 first.
  static Genotype from_string(std::string_view text);

  int size() const { return length_; }
  std::uint32_t word() const { return word_; }

  bool operator[](int locus) const { return (word_ >> shift(locus)) & 1u; }
  Genotype flipped(int locus) const { return Genotype(word_ ^ (1u << shift(locus)), length_, Unchecked{}); }

  std::string to_string() const;

  friend bool operator==(const Genotype&, const Genotype&) = default;
  friend auto operator<=>(const Genotype&, const Genotype&) = default;

 private:
  struct Unchecked {};
  Genotype(std::uint32_t word, int length, Unchecked) : word_(word), length_(length) {}

  int shift(int locus) const { return length_ - 1 - locus; }

  std::uint32_t word_;
  int length_;
};

inline int hamming_distance(const Genotype& a, const Genotype& b) {
  return std::popcount(a.word() ^ b.word());
}

}  // namespace nkcloud
