#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "nkcloud/landscape.hpp"
#include "oracles.hpp"

using namespace nkcloud;

TEST_CASE("genotype text form puts locus 0 leftmost") {
  const Genotype g = Genotype::from_string("1001");
  CHECK(g.size() == 4);
  CHECK(g[0]);
  CHECK_FALSE(g[1]);
  CHECK(g[3]);
  CHECK(g.word() == 0b1001u);
  CHECK(g.to_string() == "1001");
  CHECK(g.flipped(1).to_string() == "1101");
  CHECK(hamming_distance(g, g.flipped(2)) == 1);
}

TEST_CASE("genotype length bounds") {
  CHECK_THROWS_AS(Genotype(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Genotype(0, 33), std::invalid_argument);
  CHECK_THROWS_AS(Genotype(0b100, 2), std::invalid_argument);
  CHECK_NOTHROW(Genotype(0xffffffffu, 32));
  CHECK_THROWS_AS(Genotype::from_string("10a"), std::invalid_argument);
}

TEST_CASE("nk_new: N=25, K=20 links each locus to 20 others") {
  const NkLandscape land(25, 20, 0x5eed, LinkModel::random);
  CHECK(land.n() == 25);
  CHECK(land.k() == 20);
  for (int i = 0; i < 25; ++i) {
    const auto links = land.links().of(i);
    REQUIRE(links.size() == 20);
    const std::set<int> distinct(links.begin(), links.end());
    CHECK(distinct.size() == 20);
    CHECK_FALSE(distinct.contains(i));
    CHECK(*distinct.begin() >= 0);
    CHECK(*distinct.rbegin() <= 24);
  }
}

TEST_CASE("nk_new: k = 0 makes fitness a sum of per-bit contributions") {
  const NkLandscape land(3, 0, 99);
  for (int i = 0; i < 3; ++i) CHECK(land.links().of(i).empty());
  const Genotype g = Genotype::from_string("101");
  const double expected = (land.contribution(0, 1) + land.contribution(1, 0) + land.contribution(2, 1)) / 3;
  CHECK(land.fitness(g) == expected);
}

TEST_CASE("nk_new: bound violations name the bound") {
  CHECK_THROWS_WITH_AS(NkLandscape(5, 5, 1), doctest::Contains("k must satisfy"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(NkLandscape(0, 0, 1), doctest::Contains("n must satisfy"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(NkLandscape(33, 2, 1), doctest::Contains("n must satisfy"), std::invalid_argument);
  CHECK_THROWS_AS(NkLandscape(5, -1, 1), std::invalid_argument);
}

TEST_CASE("adjacent links are the next K loci, circularly") {
  const NkLandscape land(6, 3, 1, LinkModel::adjacent);
  const std::vector<int> expected4 = {5, 0, 1};
  const auto links = land.links().of(4);
  CHECK(std::vector<int>(links.begin(), links.end()) == expected4);
}

TEST_CASE("links are reproducible from (n, k, seed, model)") {
  CHECK(EpistasisLinks(20, 7, 42, LinkModel::random) == EpistasisLinks(20, 7, 42, LinkModel::random));
  CHECK_FALSE(EpistasisLinks(20, 7, 42, LinkModel::random) == EpistasisLinks(20, 7, 43, LinkModel::random));
}

TEST_CASE("contribution is deterministic and locus-keyed") {
  const NkLandscape land(25, 20, 2024);
  CHECK(land.contribution(3, 12345) == land.contribution(3, 12345));
  int equal = 0;
  const std::uint32_t patterns = 1u << 21;
  for (std::uint32_t p = 0; p < 10000; ++p) {
    const std::uint32_t pattern = (p * 2654435761u) % patterns;
    if (land.contribution(0, pattern) == land.contribution(1, pattern)) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("contributions are uniform on [0,1): Monte-Carlo mean 0.5 +- 0.01") {
  const NkLandscape land(25, 20, 77);
  const Philox4x32 pick(123);
  double sum = 0;
  constexpr int kDraws = 100000;
  for (std::uint32_t d = 0; d < kDraws; ++d) {
    const auto r = pick({d, 0, 0, 0});
    const double c = land.contribution(static_cast<int>(r[0] % 25), r[1] & ((1u << 21) - 1));
    REQUIRE(c >= 0.0);
    REQUIRE(c < 1.0);
    sum += c;
  }
  CHECK(std::abs(sum / kDraws - 0.5) <= 0.01);
}

TEST_CASE("fitness at N=4, K=1 equals the explicit-table oracle") {
  const NkLandscape land(4, 1, 31337);
  const oracle::TableLandscape tables(land);
  for (const Genotype g : enumerate(land)) CHECK(land.fitness(g) == tables.fitness(g.to_string()));
}

TEST_CASE("oracle equivalence: exact over the full enumeration for N <= 8, K <= 3") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= std::min(3, n - 1); ++k) {
      for (const LinkModel model : {LinkModel::random, LinkModel::adjacent}) {
        for (std::uint64_t seed : {1ULL, 0xdeadbeefULL}) {
          const NkLandscape land(n, k, seed, model);
          const oracle::TableLandscape tables(land);
          std::uint64_t mismatches = 0;
          for (const Genotype g : enumerate(land)) mismatches += land.fitness(g) != tables.fitness(g);
          CHECK_MESSAGE(mismatches == 0, "n=" << n << " k=" << k << " seed=" << seed);
        }
      }
    }
  }
}

TEST_CASE("mean fitness over the whole space is near 0.5 (N=10, K=3)") {
  const NkLandscape land(10, 3, 5);
  double sum = 0;
  for (const Genotype g : enumerate(land)) sum += land.fitness(g);
  CHECK(std::abs(sum / 1024 - 0.5) <= 0.02);
}

TEST_CASE("fitness rejects a genotype of the wrong length") {
  const NkLandscape land(6, 2, 1);
  CHECK_THROWS_AS(land.fitness(Genotype(0, 5)), std::invalid_argument);
}

TEST_CASE("fitness always lies in [0, 1]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const NkLandscape land(10, static_cast<int>(seed * 2), seed);
    for (const Genotype g : enumerate(land)) {
      const double f = land.fitness(g);
      REQUIRE(f >= 0.0);
      REQUIRE(f <= 1.0);
    }
  }
}

TEST_CASE("epistasis is local: flipping j only changes loci that read j") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 8 + static_cast<int>(seed % 9);
    const int k = static_cast<int>(seed % static_cast<std::uint64_t>(n));
    const NkLandscape land(n, k, seed * 7919);
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      const Genotype g = random_genotype(n, seed, trial, Stream::sample);
      const int j = static_cast<int>(trial % static_cast<std::uint64_t>(n));
      const Genotype h = g.flipped(j);
      for (int i = 0; i < n; ++i) {
        const auto links = land.links().of(i);
        const bool reads_j = i == j || std::find(links.begin(), links.end(), j) != links.end();
        const bool changed = land.contribution(i, land.pattern(i, g)) != land.contribution(i, land.pattern(i, h));
        if (!reads_j) CHECK_FALSE(changed);
      }
    }
  }
}

TEST_CASE("incremental neighborhood is bit-identical to full evaluation") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 4 + static_cast<int>(seed * 2);
    const int k = static_cast<int>((seed * 5) % static_cast<std::uint64_t>(n));
    const NkLandscape land(n, k, seed);
    std::vector<double> around(static_cast<std::size_t>(n));
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Genotype g = random_genotype(n, 11, t, Stream::sample);
      const double f = land.neighborhood(g, around);
      CHECK(f == land.fitness(g));
      for (int j = 0; j < n; ++j) CHECK(around[static_cast<std::size_t>(j)] == land.fitness(g.flipped(j)));
    }
  }
}

TEST_CASE("identical parameters give identical fitness over an N=10 scan") {
  const NkLandscape a(10, 4, 808, LinkModel::random);
  const NkLandscape b(10, 4, 808, LinkModel::random);
  for (const Genotype g : enumerate(a)) REQUIRE(a.fitness(g) == b.fitness(g));
}

TEST_CASE("enumerate: N=2 in integer order") {
  const NkLandscape land(2, 1, 1);
  std::vector<std::string> seen;
  for (const Genotype g : enumerate(land)) seen.push_back(g.to_string());
  CHECK(seen == std::vector<std::string>{"00", "01", "10", "11"});
}

TEST_CASE("enumerate: cardinality and no duplicates") {
  for (int n = 1; n <= 16; ++n) {
    const NkLandscape land(n, 0, 1);
    const auto stream = enumerate(land);
    REQUIRE(stream.size() == (std::uint64_t{1} << n));
    std::set<std::uint32_t> words;
    std::uint64_t count = 0;
    for (const Genotype g : stream) {
      words.insert(g.word());
      ++count;
    }
    CHECK(count == stream.size());
    CHECK(words.size() == stream.size());
  }
  CHECK(enumerate(NkLandscape(25, 20, 1)).size() == 33554432ULL);
}

TEST_CASE("stream slices partition the stream") {
  const NkLandscape land(9, 2, 3);
  const auto all = enumerate(land);
  const auto head = all.slice(0, 100);
  const auto tail = all.slice(100, all.size());
  CHECK(head.size() + tail.size() == all.size());
  CHECK(tail[0] == all[100]);
  CHECK(tail.slice(5, 6)[0] == all[105]);
  CHECK_THROWS_AS(all.slice(3, 2), std::out_of_range);
}

TEST_CASE("sample: count must be positive") {
  const NkLandscape land(10, 2, 1);
  CHECK_THROWS_AS(sample(land, 0, 1), std::invalid_argument);
}

TEST_CASE("sample: same seed reproduces the stream") {
  const NkLandscape land(20, 2, 1);
  const auto a = sample(land, 500, 42);
  const auto b = sample(land, 500, 42);
  const auto c = sample(land, 500, 43);
  int differ = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    REQUIRE(a[i] == b[i]);
    differ += a[i] != c[i];
  }
  CHECK(differ > 450);
}

TEST_CASE("sample: per-locus frequency 0.5 +- 0.01 over 1e5 draws") {
  const NkLandscape land(20, 2, 1);
  const auto s = sample(land, 100000, 9);
  std::vector<int> ones(20, 0);
  for (const Genotype g : s) {
    for (int i = 0; i < 20; ++i) ones[static_cast<std::size_t>(i)] += g[i];
  }
  for (int i = 0; i < 20; ++i) CHECK(std::abs(ones[static_cast<std::size_t>(i)] / 1e5 - 0.5) <= 0.01);
}

TEST_CASE("sample at N=32 uses the full word") {
  const NkLandscape land(32, 1, 1);
  bool high = false;
  for (const Genotype g : sample(land, 64, 1)) high = high || g[0];
  CHECK(high);
}

TEST_CASE("descriptor round-trips and detects tampering") {
  const NkLandscape land(12, 4, 314159, LinkModel::random);
  std::stringstream text;
  write_descriptor(text, land);
  CHECK(text.str().find("link_model=random") != std::string::npos);
  const NkLandscape back = read_descriptor(text);
  CHECK(back.links() == land.links());
  CHECK(back.seed() == land.seed());

  std::string tampered;
  {
    std::stringstream again;
    write_descriptor(again, land);
    tampered = again.str();
  }
  const auto pos = tampered.find("links.0=");
  tampered.replace(pos, 9, "links.0=0");  // a locus linked to itself never regenerates
  std::stringstream bad(tampered);
  CHECK_THROWS_AS(read_descriptor(bad), std::invalid_argument);

  std::stringstream missing("n=3\nk=1\n");
  CHECK_THROWS_WITH(read_descriptor(missing), doctest::Contains("missing key"));
}
