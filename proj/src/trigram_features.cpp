#include "urlsift/trigram_features.hpp"

#include <bit>

#include "urlsift/errors.hpp"

namespace urlsift {

uint32_t murmur3_32(std::string_view data, uint32_t seed) {
  const auto* p = reinterpret_cast<const uint8_t*>(data.data());
  const size_t len = data.size();
  const uint32_t c1 = 0xcc9e2d51u;
  const uint32_t c2 = 0x1b873593u;

  uint32_t h1 = seed;
  const size_t nblocks = len / 4;

  for (size_t i = 0; i < nblocks; ++i) {
    const uint8_t* b = p + i * 4;
    uint32_t k1 = static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
                  (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
    k1 *= c1;
    k1 = std::rotl(k1, 15);
    k1 *= c2;
    h1 ^= k1;
    h1 = std::rotl(h1, 13);
    h1 = h1 * 5 + 0xe6546b64u;
  }

  const uint8_t* tail = p + nblocks * 4;
  uint32_t k1 = 0;
  switch (len & 3) {
    case 3:
      k1 ^= static_cast<uint32_t>(tail[2]) << 16;
      [[fallthrough]];
    case 2:
      k1 ^= static_cast<uint32_t>(tail[1]) << 8;
      [[fallthrough]];
    case 1:
      k1 ^= static_cast<uint32_t>(tail[0]);
      k1 *= c1;
      k1 = std::rotl(k1, 15);
      k1 *= c2;
      h1 ^= k1;
  }

  h1 ^= static_cast<uint32_t>(len);
  h1 ^= h1 >> 16;
  h1 *= 0x85ebca6bu;
  h1 ^= h1 >> 13;
  h1 *= 0xc2b2ae35u;
  h1 ^= h1 >> 16;
  return h1;
}

std::vector<std::string_view> trigrams(std::string_view s) {
  std::vector<std::string_view> out;
  if (s.size() < 3) return out;
  out.reserve(s.size() - 2);
  for (size_t i = 0; i + 3 <= s.size(); ++i) out.push_back(s.substr(i, 3));
  return out;
}

void featurize_trigrams_into(std::string_view s, const TrigramConfig& cfg, std::vector<double>& out) {
  if (cfg.bucket_count < 1) throw DataError("invalid trigram config: bucket_count must be >= 1");
  out.assign(cfg.bucket_count, 0.0);
  if (s.size() < 3) return;
  for (size_t i = 0; i + 3 <= s.size(); ++i) {
    uint32_t h = murmur3_32(s.substr(i, 3), cfg.hash_seed);
    out[h % cfg.bucket_count] += 1.0;
  }
}

std::vector<double> featurize_trigrams(std::string_view s, const TrigramConfig& cfg) {
  std::vector<double> out;
  featurize_trigrams_into(s, cfg, out);
  return out;
}

}  // namespace urlsift
