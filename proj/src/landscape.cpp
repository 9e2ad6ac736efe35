#include "nkcloud/landscape.hpp"

#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nkcloud {

std::string_view to_string(LinkModel model) {
  return model == LinkModel::random ? "random" : "adjacent";
}

LinkModel parse_link_model(std::string_view text) {
  if (text == "random") return LinkModel::random;
  if (text == "adjacent") return LinkModel::adjacent;
  throw std::invalid_argument("unknown link model '" + std::string(text) + "' (expected random|adjacent)");
}

namespace {

void check_bounds(int n, int k) {
  if (n < 1 || n > kMaxLoci) {
    throw std::invalid_argument("n must satisfy 1 <= n <= 32, got " + std::to_string(n));
  }
  if (k < 0 || k > n - 1) {
    throw std::invalid_argument("k must satisfy 0 <= k <= n-1 = " + std::to_string(n - 1) + ", got " +
                                std::to_string(k));
  }
}

}  // namespace

EpistasisLinks::EpistasisLinks(int n, int k, std::uint64_t seed, LinkModel model)
    : n_(n), k_(k), model_(model) {
  check_bounds(n, k);
  links_.reserve(static_cast<std::size_t>(n) * k);
  if (model == LinkModel::adjacent) {
    for (int i = 0; i < n; ++i) {
      for (int t = 1; t <= k; ++t) links_.push_back((i + t) % n);
    }
    return;
  }
  // Partial Fisher-Yates over the other n-1 loci; draw t of locus i uses
  // counter (i, t, links, attempt).
  const Philox4x32 prf(seed);
  std::vector<int> pool(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int& v : pool) {
      if (v >= i) ++v;
    }
    for (int t = 0; t < k; ++t) {
      const auto remaining = static_cast<std::uint32_t>(pool.size() - t);
      const std::uint32_t pick =
          uniform_below(prf, {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t),
                              static_cast<std::uint32_t>(Stream::links), 0},
                        remaining);
      std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(t + pick)]);
      links_.push_back(pool[static_cast<std::size_t>(t)]);
    }
  }
}

NkLandscape::NkLandscape(int n, int k, std::uint64_t seed, LinkModel model)
    : n_(n), k_(k), seed_(seed), links_(n, k, seed, model), prf_(seed), dependents_(static_cast<std::size_t>(n)) {
  for (int i = 0; i < n; ++i) {
    dependents_[static_cast<std::size_t>(i)].push_back({i, 0});
    const auto partners = links_.of(i);
    for (int t = 0; t < k; ++t) {
      dependents_[static_cast<std::size_t>(partners[static_cast<std::size_t>(t)])].push_back({i, t + 1});
    }
  }
}

void NkLandscape::check_length(const Genotype& g) const {
  if (g.size() != n_) {
    throw std::invalid_argument("genotype length " + std::to_string(g.size()) + " does not match landscape n " +
                                std::to_string(n_));
  }
}

std::uint32_t NkLandscape::pattern(int locus, const Genotype& g) const {
  std::uint32_t p = g[locus] ? 1u : 0u;
  const auto partners = links_.of(locus);
  for (int t = 0; t < k_; ++t) {
    if (g[partners[static_cast<std::size_t>(t)]]) p |= 1u << (t + 1);
  }
  return p;
}

double NkLandscape::fitness(const Genotype& g) const {
  check_length(g);
  double sum = 0.0;
  for (int i = 0; i < n_; ++i) sum += contribution(i, pattern(i, g));
  return sum / n_;
}

double NkLandscape::neighborhood(const Genotype& g, std::span<double> neighbor_fitness) const {
  check_length(g);
  if (neighbor_fitness.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("neighborhood output must hold exactly n values");
  }
  std::uint32_t patterns[kMaxLoci];
  double contrib[kMaxLoci];
  double sum = 0.0;
  for (int i = 0; i < n_; ++i) {
    patterns[i] = pattern(i, g);
    contrib[i] = contribution(i, patterns[i]);
    sum += contrib[i];
  }
  double scratch[kMaxLoci];
  for (int j = 0; j < n_; ++j) {
    std::copy(contrib, contrib + n_, scratch);
    for (const Dependent& d : dependents_[static_cast<std::size_t>(j)]) {
      scratch[d.locus] = contribution(d.locus, patterns[d.locus] ^ (1u << d.bit));
    }
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += scratch[i];
    neighbor_fitness[static_cast<std::size_t>(j)] = s / n_;
  }
  return sum / n_;
}

void write_descriptor(std::ostream& out, const NkLandscape& land) {
  out << "n=" << land.n() << '\n'
      << "k=" << land.k() << '\n'
      << "seed=" << land.seed() << '\n'
      << "link_model=" << to_string(land.links().model()) << '\n';
  for (int i = 0; i < land.n(); ++i) {
    out << "links." << i << '=';
    const auto partners = land.links().of(i);
    for (std::size_t t = 0; t < partners.size(); ++t) {
      if (t > 0) out << ' ';
      out << partners[t];
    }
    out << '\n';
  }
}

NkLandscape read_descriptor(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("descriptor line without '=': " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto field = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("descriptor missing key '" + key + "'");
    return it->second;
  };
  NkLandscape land(std::stoi(field("n")), std::stoi(field("k")), std::stoull(field("seed")),
                   parse_link_model(field("link_model")));
  for (int i = 0; i < land.n(); ++i) {
    std::istringstream row(field("links." + std::to_string(i)));
    std::vector<int> recorded;
    for (int v; row >> v;) recorded.push_back(v);
    const auto partners = land.links().of(i);
    if (!std::equal(recorded.begin(), recorded.end(), partners.begin(), partners.end())) {
      throw std::invalid_argument("descriptor links." + std::to_string(i) + " do not match the regenerated links");
    }
  }
  return land;
}

Genotype random_genotype(int n, std::uint64_t seed, std::uint64_t index, Stream stream) {
  const Philox4x32 prf(seed);
  const auto out = prf({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                        static_cast<std::uint32_t>(stream), 0});
  const std::uint32_t mask = n == kMaxLoci ? ~0u : ((1u << n) - 1u);
  return Genotype(out[0] & mask, n);
}

Genotype GenotypeStream::operator[](std::uint64_t i) const {
  const std::uint64_t pos = first_ + i;
  if (kind_ == Kind::exhaustive) return Genotype(static_cast<std::uint32_t>(pos), n_);
  return random_genotype(n_, seed_, pos, Stream::sample);
}

GenotypeStream GenotypeStream::slice(std::uint64_t first, std::uint64_t last) const {
  if (first > last || last > size()) throw std::out_of_range("stream slice out of range");
  GenotypeStream s = *this;
  s.first_ = first_ + first;
  s.last_ = first_ + last;
  return s;
}

GenotypeStream enumerate(const NkLandscape& land) {
  return GenotypeStream(GenotypeStream::Kind::exhaustive, land.n(), 0, std::uint64_t{1} << land.n(), 0);
}

GenotypeStream sample(const NkLandscape& land, std::uint64_t count, std::uint64_t sample_seed) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  return GenotypeStream(GenotypeStream::Kind::sampled, land.n(), 0, count, sample_seed);
}

}  // namespace nkcloud
