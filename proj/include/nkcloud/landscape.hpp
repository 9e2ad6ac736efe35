#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nkcloud/genotype.hpp"
#include "nkcloud/philox.hpp"

namespace nkcloud {

enum class LinkModel { random, adjacent };

std::string_view to_string(LinkModel model);
LinkModel parse_link_model(std::string_view text);

/// The K epistatic partners of every locus, stored flat (locus-major).
class EpistasisLinks {
 public:
  EpistasisLinks(int n, int k, std::uint64_t seed, LinkModel model);

  int loci() const { return n_; }
  int degree() const { return k_; }
  LinkModel model() const { return model_; }

  /// Partners of `locus` in stored order; this order fixes the pattern bits.
  std::span<const int> of(int locus) const {
    return {links_.data() + static_cast<std::size_t>(locus) * k_, static_cast<std::size_t>(k_)};
  }

  friend bool operator==(const EpistasisLinks&, const EpistasisLinks&) = default;

 private:
  int n_;
  int k_;
  LinkModel model_;
  std::vector<int> links_;
};

/// NK fitness model. Immutable after construction; every member is safe to
/// call concurrently.
///
/// Locus i contributes c_i(pattern), where pattern bit 0 is the allele at i
/// and pattern bit t+1 is the allele at links.of(i)[t]. Contributions come
/// from a keyed Philox PRF of (seed, i, pattern), uniform on [0, 1), so no
/// table of 2^(K+1) entries is ever materialized. Fitness is the plain mean
/// of the N contributions, summed in locus order.
class NkLandscape {
 public:
  NkLandscape(int n, int k, std::uint64_t seed, LinkModel model = LinkModel::random);

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t seed() const { return seed_; }
  const EpistasisLinks& links() const { return links_; }

  double contribution(int locus, std::uint32_t pattern) const {
    const auto out = prf_({pattern, static_cast<std::uint32_t>(locus),
                           static_cast<std::uint32_t>(Stream::contribution), 0});
    return to_unit_interval(out[0], out[1]);
  }

  std::uint32_t pattern(int locus, const Genotype& g) const;

  double fitness(const Genotype& g) const;

  /// Fitness of g, writing into `neighbor_fitness[j]` the fitness of g with
  /// locus j flipped. Only the loci depending on j are re-evaluated, and the
  /// sums are formed exactly as in fitness(), so values are bit-identical.
  double neighborhood(const Genotype& g, std::span<double> neighbor_fitness) const;

  /// Loci whose contribution reads locus j, paired with the pattern bit j
  /// occupies there.
  struct Dependent {
    int locus;
    int bit;
  };
  std::span<const Dependent> dependents(int j) const { return dependents_[static_cast<std::size_t>(j)]; }

 private:
  void check_length(const Genotype& g) const;

  int n_;
  int k_;
  std::uint64_t seed_;
  EpistasisLinks links_;
  Philox4x32 prf_;
  std::vector<std::vector<Dependent>> dependents_;
};

/// Plain-text `key=value` audit record: n, k, seed, link_model and one
/// `links.<i>` line per locus.
void write_descriptor(std::ostream& out, const NkLandscape& land);

/// Rebuilds the landscape from a descriptor and checks the recorded links
/// reproduce; throws on mismatch or malformed input.
NkLandscape read_descriptor(std::istream& in);

/// A finite, random-access sequence of genotypes: either the full
/// enumeration of {0,1}^N in integer order, or i.i.d. uniform draws keyed by
/// a sample seed. Element i is a pure function of i, so any index range can be
/// processed independently.
class GenotypeStream {
 public:
  enum class Kind { exhaustive, sampled };

  Kind kind() const { return kind_; }
  int loci() const { return n_; }
  std::uint64_t size() const { return last_ - first_; }
  bool empty() const { return size() == 0; }

  Genotype operator[](std::uint64_t i) const;

  /// Sub-range [first, last) of this stream's positions.
  GenotypeStream slice(std::uint64_t first, std::uint64_t last) const;

  class iterator {
   public:
    using value_type = Genotype;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const GenotypeStream* s, std::uint64_t i) : stream_(s), i_(i) {}

    Genotype operator*() const { return (*stream_)[i_]; }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++i_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

   private:
    const GenotypeStream* stream_ = nullptr;
    std::uint64_t i_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

 private:
  friend GenotypeStream enumerate(const NkLandscape& land);
  friend GenotypeStream sample(const NkLandscape& land, std::uint64_t count, std::uint64_t sample_seed);

  GenotypeStream(Kind kind, int n, std::uint64_t first, std::uint64_t last, std::uint64_t seed)
      : kind_(kind), n_(n), first_(first), last_(last), seed_(seed) {}

  Kind kind_;
  int n_;
  std::uint64_t first_;
  std::uint64_t last_;
  std::uint64_t seed_;
};

/// All 2^N genotypes, word 0 first.
GenotypeStream enumerate(const NkLandscape& land);

/// `count` uniform genotypes drawn with replacement; count must be >= 1.
GenotypeStream sample(const NkLandscape& land, std::uint64_t count, std::uint64_t sample_seed);

/// Uniform random genotype keyed by (seed, index, stream).
Genotype random_genotype(int n, std::uint64_t seed, std::uint64_t index, Stream stream);

}  // namespace nkcloud
