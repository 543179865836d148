#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urlsift {

struct LabeledRow {
  std::string url;
  uint8_t label = 0;   // 0 = benign, 1 = malicious
  std::string source;  // optional provenance tag
};

struct LoadReport {
  size_t rows_loaded = 0;
  size_t rows_skipped = 0;   // malformed label or field count
  size_t duplicate_urls = 0; // retained, but reported
};

struct LabeledDataset {
  std::vector<LabeledRow> rows;
  LoadReport report;
};

struct ClassSummary {
  size_t n_benign = 0;
  size_t n_malicious = 0;
  std::optional<double> benign_fraction;  // empty dataset has no fraction
};

// CSV with header `label,url[,source]`. Labels accept 0/1/benign/malicious
// case-insensitively; URLs containing commas use standard CSV quoting.
// Malformed rows are skipped and counted. Throws DataError on a missing
// file, a bad header, or zero valid rows.
LabeledDataset load_dataset(const std::string& path);
LabeledDataset parse_dataset_csv(const std::string& text);

// Canonical CSV writer (quotes only when needed); load(save(ds)) reproduces
// the rows exactly.
void save_dataset(const LabeledDataset& ds, const std::string& path);
std::string dataset_to_csv(const LabeledDataset& ds);

ClassSummary class_summary(const LabeledDataset& ds);

// Deterministic per-class shuffle and split. Each class contributes
// round(class_size * test_fraction) rows to the test half. Throws DataError
// unless both classes have at least 2 rows and the fraction is in (0,1).
struct SplitResult {
  LabeledDataset train;
  LabeledDataset test;
};
SplitResult stratified_split(const LabeledDataset& ds, double test_fraction, uint64_t seed);

// Optional rebalancing: downsamples the over-represented class until the
// benign share is approximately `benign_fraction`. Deterministic in seed.
LabeledDataset downsample_to_fraction(const LabeledDataset& ds, double benign_fraction, uint64_t seed);

}  // namespace urlsift
