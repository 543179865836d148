#pragma once

#include <array>
#include <cstdint>

#include "urlsift/host_split.hpp"
#include "urlsift/url_parse.hpp"
#include "urlsift/word_list.hpp"

namespace urlsift {

inline constexpr int kLexicalFeatureCount = 23;

using LexicalVector = std::array<double, kLexicalFeatureCount>;

enum class FeatureKind { count, length, ratio, boolean };

struct LexicalSchemaEntry {
  int index;
  const char* name;
  FeatureKind kind;
};

// Fixed feature order; stable within a model format version. Index positions
// are part of the serialized feature space.
const std::array<LexicalSchemaEntry, kLexicalFeatureCount>& lexical_schema();

struct LexicalConfig {
  WordList suspicious_tlds;
  WordList top_domains;

  static LexicalConfig builtin();
};

// Computes the 23 lexical features for one URL. Total: every field of every
// parse result maps to finite, non-negative values.
LexicalVector extract_lexical(const UrlParts& parts, const HostSplit& host, const LexicalConfig& cfg);

}  // namespace urlsift
