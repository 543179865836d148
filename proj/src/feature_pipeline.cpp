#include "urlsift/feature_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "urlsift/errors.hpp"
#include "urlsift/url_parse.hpp"

namespace urlsift {

Featurizer::Featurizer(TrigramConfig tri, LexicalConfig lex, SuffixList suffixes, bool use_trigrams)
    : tri_(tri), lex_(std::move(lex)), suffixes_(std::move(suffixes)) {
  if (tri_.bucket_count < 1) throw DataError("invalid trigram config: bucket_count must be >= 1");
  spec_.use_trigrams = use_trigrams;
  spec_.bucket_count = tri_.bucket_count;
  spec_.hash_seed = tri_.hash_seed;
  spec_.schema_version = kFeatureSchemaVersion;
  spec_.suffix_digest = suffixes_.digest();
  spec_.suspicious_digest = lex_.suspicious_tlds.digest();
  spec_.top_domains_digest = lex_.top_domains.digest();
}

Featurizer Featurizer::builtin(uint32_t bucket_count, bool use_trigrams) {
  TrigramConfig tri;
  tri.bucket_count = bucket_count;
  return Featurizer(tri, LexicalConfig::builtin(), builtin_suffix_list(), use_trigrams);
}

void Featurizer::featurize_into(std::string_view raw_url, std::vector<double>& out) const {
  UrlParts parts = parse_url(raw_url);
  HostSplit host = split_host(parts.host, suffixes_);
  LexicalVector lex = extract_lexical(parts, host, lex_);

  const size_t tri_len = spec_.use_trigrams ? tri_.bucket_count : 0;
  out.assign(tri_len + kLexicalFeatureCount, 0.0);
  if (spec_.use_trigrams) {
    for (size_t i = 0; i + 3 <= raw_url.size(); ++i) {
      uint32_t h = murmur3_32(raw_url.substr(i, 3), tri_.hash_seed);
      out[h % tri_.bucket_count] += 1.0;
    }
  }
  std::copy(lex.begin(), lex.end(), out.begin() + static_cast<ptrdiff_t>(tri_len));
}

std::vector<double> Featurizer::featurize(std::string_view raw_url) const {
  std::vector<double> out;
  featurize_into(raw_url, out);
  return out;
}

double pearson_corr(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DataError("length mismatch: correlation inputs differ in size");
  if (xs.size() < 2) throw DataError("too few samples: correlation needs at least 2 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

PruneMask prune_features(const std::vector<std::vector<double>>& columns, double threshold) {
  if (!columns.empty() && columns.front().size() < 2)
    throw DataError("too few samples: pruning needs at least 2 rows");
  PruneMask mask;
  mask.retained.assign(columns.size(), true);
  for (size_t i = 0; i < columns.size(); ++i) {
    if (!mask.retained[i]) continue;
    for (size_t j = i + 1; j < columns.size(); ++j) {
      if (!mask.retained[j]) continue;
      double r = pearson_corr(columns[i], columns[j]);
      if (std::abs(r) > threshold) {
        mask.retained[j] = false;
        mask.dropped_pairs.push_back({static_cast<int>(i), static_cast<int>(j), r});
      }
    }
  }
  return mask;
}

std::string render_prune_report(const PruneMask& mask) {
  const auto& schema = lexical_schema();
  std::ostringstream out;
  out << "index,name,status,partner,correlation\n";
  for (size_t i = 0; i < mask.retained.size(); ++i) {
    const char* name = i < schema.size() ? schema[i].name : "";
    if (mask.retained[i]) {
      out << i << ',' << name << ",kept,,\n";
      continue;
    }
    for (const auto& pair : mask.dropped_pairs) {
      if (pair.dropped_index == static_cast<int>(i)) {
        out << i << ',' << name << ",dropped," << pair.kept_index << ',' << pair.correlation << '\n';
        break;
      }
    }
  }
  return out.str();
}

}  // namespace urlsift
