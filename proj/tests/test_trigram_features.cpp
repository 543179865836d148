#include <cstdint>
#include <numeric>
#include <string>

#include "doctest.h"
#include "urlsift/rng.hpp"
#include "urlsift/trigram_features.hpp"

using namespace urlsift;

namespace {

// Independent transcription of the published MurmurHash3 x86_32 algorithm,
// kept deliberately separate from the library's implementation (different
// structure: per-byte accumulation, no pointer casts).
uint32_t reference_murmur3(const std::string& data, uint32_t seed) {
  auto rotl = [](uint32_t x, int r) { return (x << r) | (x >> (32 - r)); };
  const uint32_t c1 = 0xcc9e2d51u, c2 = 0x1b873593u;
  uint32_t h = seed;
  const size_t nblocks = data.size() / 4;
  for (size_t b = 0; b < nblocks; ++b) {
    uint32_t k = 0;
    for (int i = 3; i >= 0; --i)
      k = (k << 8) | static_cast<uint8_t>(data[b * 4 + static_cast<size_t>(i)]);
    k *= c1;
    k = rotl(k, 15);
    k *= c2;
    h ^= k;
    h = rotl(h, 13);
    h = h * 5 + 0xe6546b64u;
  }
  uint32_t k = 0;
  const size_t tail = nblocks * 4;
  switch (data.size() & 3u) {
    case 3: k ^= static_cast<uint32_t>(static_cast<uint8_t>(data[tail + 2])) << 16; [[fallthrough]];
    case 2: k ^= static_cast<uint32_t>(static_cast<uint8_t>(data[tail + 1])) << 8; [[fallthrough]];
    case 1:
      k ^= static_cast<uint8_t>(data[tail]);
      k *= c1;
      k = rotl(k, 15);
      k *= c2;
      h ^= k;
  }
  h ^= static_cast<uint32_t>(data.size());
  h ^= h >> 16;
  h *= 0x85ebca6bu;
  h ^= h >> 13;
  h *= 0xc2b2ae35u;
  h ^= h >> 16;
  return h;
}

}  // namespace

TEST_CASE("murmur3 matches externally published vectors") {
  CHECK(murmur3_32("", 0) == 0x00000000u);
  CHECK(murmur3_32("", 1) == 0x514E28B7u);
  CHECK(murmur3_32("", 0xffffffffu) == 0x81F16F39u);
  CHECK(murmur3_32("test", 0x9747b28cu) == 0x704b81dcu);
  CHECK(murmur3_32("Hello, world!", 0x9747b28cu) == 0x24884CBAu);
  CHECK(murmur3_32("The quick brown fox jumps over the lazy dog", 0x9747b28cu) == 0x2FA826CDu);
  CHECK(murmur3_32("aaaa", 0x9747b28cu) == 0x5A97808Au);
}

TEST_CASE("murmur3 matches frozen golden vectors") {
  struct Vector {
    std::string data;
    uint32_t seed;
    uint32_t hash;
  };
  static const Vector vectors[] = {
      {std::string("", 0), 0u, 0x00000000u},
      {std::string("\x61", 1), 0u, 0x3c2569b2u},
      {std::string("\x61\x62", 2), 0u, 0x9bbfd75fu},
      {std::string("\x61\x62\x63", 3), 0u, 0xb3dd93fau},
      {std::string("\x61\x62\x63\x64", 4), 0u, 0x43ed676au},
      {std::string("\x61\x62\x63\x64\x65", 5), 0u, 0xe89b9af6u},
      {std::string("\x68\x74\x74\x70\x3a\x2f\x2f\x65\x78\x61\x6d\x70\x6c\x65\x2e\x63\x6f\x6d\x2f",
                   19),
       0u, 0xc4a384f6u},
      {std::string("\x68\x74\x74", 3), 0u, 0x871c2602u},
      {std::string("\x74\x74\x70", 3), 0u, 0xf9d29803u},
      {std::string("\x3a\x2f\x2f", 3), 0u, 0xff7774abu},
      {std::string("\x61\x61\x61", 3), 0u, 0xb4d05fb7u},
      {std::string("\x00\x00\x00", 3), 0u, 0x85f0b427u},
      {std::string("\xff\xfe\xfd", 3), 0u, 0xd2bef2dcu},
      {std::string("\x65\x78\x61", 3), 42u, 0x5e2e60e8u},
      {std::string("\x65\x78\x61", 3), 3735928559u, 0x2e73dc90u},
      {std::string("\x67\x30\x30", 3), 0u, 0x811ec49fu},
  };
  for (const Vector& v : vectors) {
    CAPTURE(v.seed);
    CHECK(murmur3_32(v.data, v.seed) == v.hash);
  }
}

TEST_CASE("murmur3 agrees with the in-test reference on random strings") {
  SplitMix64 rng(31337);
  const uint32_t seeds[] = {0u, 1u, 42u, 0x9747b28cu, 0xffffffffu, 0x12345678u};
  for (int i = 0; i < 1500; ++i) {
    std::string data;
    size_t len = rng.bounded(65);
    for (size_t k = 0; k < len; ++k) data += static_cast<char>(rng.bounded(256));
    uint32_t seed = seeds[rng.bounded(6)];
    CAPTURE(len);
    REQUIRE(murmur3_32(data, seed) == reference_murmur3(data, seed));
  }
}

TEST_CASE("trigram windows slide by one, repeats preserved") {
  auto t = trigrams("abcd");
  REQUIRE(t.size() == 2);
  CHECK(t[0] == "abc");
  CHECK(t[1] == "bcd");

  auto r = trigrams("aaaa");
  REQUIRE(r.size() == 2);
  CHECK(r[0] == "aaa");
  CHECK(r[1] == "aaa");

  CHECK(trigrams("ab").empty());
  CHECK(trigrams("").empty());
}

TEST_CASE("bucket counts conserve the trigram total") {
  TrigramConfig cfg;
  cfg.bucket_count = 100;
  SplitMix64 rng(5);
  for (int i = 0; i < 300; ++i) {
    std::string s;
    size_t len = rng.bounded(120);
    for (size_t k = 0; k < len; ++k) s += static_cast<char>('a' + rng.bounded(26));
    auto v = featurize_trigrams(s, cfg);
    REQUIRE(v.size() == cfg.bucket_count);
    double total = std::accumulate(v.begin(), v.end(), 0.0);
    double expected = len < 3 ? 0.0 : static_cast<double>(len - 2);
    REQUIRE(total == expected);
  }
}

TEST_CASE("bucket index is hash mod bucket_count") {
  TrigramConfig cfg;
  cfg.bucket_count = 17;
  cfg.hash_seed = 9;
  auto v = featurize_trigrams("xyz", cfg);
  uint32_t bucket = murmur3_32("xyz", 9) % 17;
  for (uint32_t i = 0; i < 17; ++i) CHECK(v[i] == (i == bucket ? 1.0 : 0.0));
}
