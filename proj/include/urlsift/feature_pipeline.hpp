#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "urlsift/lexical_features.hpp"
#include "urlsift/trigram_features.hpp"
#include "urlsift/word_list.hpp"

namespace urlsift {

inline constexpr int kFeatureSchemaVersion = 1;

// Everything that pins the feature space of a model. Digests stand in for
// the word lists themselves; the lists ship beside the model.
struct FeaturizerSpec {
  bool use_trigrams = true;  // false = lexical-only mode (Table-3 "0 trigram" row)
  uint32_t bucket_count = 1000;
  uint32_t hash_seed = 0;
  int schema_version = kFeatureSchemaVersion;
  uint32_t suffix_digest = 0;
  uint32_t suspicious_digest = 0;
  uint32_t top_domains_digest = 0;

  size_t feature_count() const {
    return (use_trigrams ? bucket_count : 0) + kLexicalFeatureCount;
  }
};

// A bound featurizer: spec plus the actual word lists. Vector layout is
// trigram buckets first, then the 23 lexical features in schema order.
class Featurizer {
 public:
  Featurizer(TrigramConfig tri, LexicalConfig lex, SuffixList suffixes, bool use_trigrams = true);

  // Built-in lists, default trigram config.
  static Featurizer builtin(uint32_t bucket_count = 1000, bool use_trigrams = true);

  size_t feature_count() const { return spec_.feature_count(); }
  const FeaturizerSpec& spec() const { return spec_; }
  const SuffixList& suffixes() const { return suffixes_; }
  const LexicalConfig& lexical_config() const { return lex_; }
  const TrigramConfig& trigram_config() const { return tri_; }
  bool use_trigrams() const { return spec_.use_trigrams; }

  std::vector<double> featurize(std::string_view raw_url) const;
  void featurize_into(std::string_view raw_url, std::vector<double>& out) const;

 private:
  TrigramConfig tri_;
  LexicalConfig lex_;
  SuffixList suffixes_;
  FeaturizerSpec spec_;
};

// Sample Pearson correlation. Zero variance on either side returns 0 by
// convention. Throws DataError on length mismatch or fewer than 2 samples.
double pearson_corr(std::span<const double> xs, std::span<const double> ys);

struct PruneMask {
  std::vector<bool> retained;  // one flag per lexical feature column
  struct DroppedPair {
    int kept_index;
    int dropped_index;
    double correlation;
  };
  std::vector<DroppedPair> dropped_pairs;
};

// Greedy correlation pruning over feature columns: scan pairs (i, j), i < j,
// ascending; when both still retained and |r| > threshold, drop j. Analysis
// tool only; the training pipeline always uses all 23 lexical features.
PruneMask prune_features(const std::vector<std::vector<double>>& columns, double threshold = 0.75);

// Machine-readable prune report: one CSV row per feature.
std::string render_prune_report(const PruneMask& mask);

}  // namespace urlsift
