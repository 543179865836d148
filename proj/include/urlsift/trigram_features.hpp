#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace urlsift {

// MurmurHash3 x86_32 (Appleby's public-domain reference). Byte-exact on all
// platforms: blocks are assembled little-endian explicitly.
uint32_t murmur3_32(std::string_view data, uint32_t seed);

struct TrigramConfig {
  uint32_t bucket_count = 1000;
  uint32_t hash_seed = 0;
};

// Width-3 byte windows, step 1, no padding. len < 3 gives an empty list.
std::vector<std::string_view> trigrams(std::string_view s);

// Bucketed trigram counts: bucket murmur3_32(t, seed) % bucket_count gains 1
// per trigram occurrence. Sum of buckets == max(0, len(s) - 2).
std::vector<double> featurize_trigrams(std::string_view s, const TrigramConfig& cfg);

// In-place variant for hot paths; `out` is resized and zeroed.
void featurize_trigrams_into(std::string_view s, const TrigramConfig& cfg, std::vector<double>& out);

}  // namespace urlsift
