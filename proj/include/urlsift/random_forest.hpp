#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "urlsift/dataset.hpp"
#include "urlsift/feature_pipeline.hpp"

namespace urlsift {

inline constexpr int kModelFormatVersion = 1;

struct ForestConfig {
  enum class FeatureSampling { sqrt_count, all, fixed };

  uint32_t n_trees = 100;
  uint32_t max_depth = 20;  // edges on the longest root-to-leaf path
  uint32_t min_samples_split = 2;
  uint32_t min_samples_leaf = 1;
  FeatureSampling feature_sampling = FeatureSampling::sqrt_count;
  uint32_t features_fixed = 0;  // used when feature_sampling == fixed
  bool bootstrap = true;
  uint64_t seed = 0;
  uint32_t n_threads = 0;  // 0 = hardware concurrency; result is schedule-independent
};

// Flattened tree node; feature < 0 marks a leaf. Internal nodes route
// value <= threshold left, > threshold right.
struct TreeNode {
  int32_t feature = -1;
  double threshold = 0.0;
  int32_t left = -1;
  int32_t right = -1;
  double class1_fraction = 0.0;
  uint32_t sample_count = 0;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at index 0
};

// Longest root-to-leaf path in edges; 0 for a single-leaf tree.
uint32_t tree_depth(const Tree& tree);

struct TrainingMeta {
  uint64_t n_rows = 0;
  uint64_t n_benign = 0;
  uint64_t n_malicious = 0;
};

struct ForestModel {
  std::vector<Tree> trees;
  ForestConfig config;
  FeaturizerSpec featurizer;
  uint32_t feature_count = 0;
  int format_version = kModelFormatVersion;
  TrainingMeta meta;
};

// Row-major feature matrix plus labels; the featurized dataset.
struct FeatureMatrix {
  size_t n_rows = 0;
  size_t n_cols = 0;
  std::vector<double> data;

  void resize(size_t rows, size_t cols) {
    n_rows = rows;
    n_cols = cols;
    data.assign(rows * cols, 0.0);
  }
  double at(size_t r, size_t c) const { return data[r * n_cols + c]; }
  double* row(size_t r) { return data.data() + r * n_cols; }
  const double* row(size_t r) const { return data.data() + r * n_cols; }
};

struct TrainSet {
  FeatureMatrix x;
  std::vector<uint8_t> y;  // 0/1
};

// Featurizes every row of a labeled dataset. A row whose URL fails to parse
// aborts with a DataError naming the row; loaders have already skipped
// malformed CSV, so a failure here means a bad URL, not bad framing.
TrainSet featurize_dataset(const Featurizer& fz, const LabeledDataset& ds);

// Gini impurity of a two-class node, 1 - p0^2 - p1^2. Throws DataError on an
// empty node.
double gini(uint64_t n0, uint64_t n1);

struct SplitChoice {
  int32_t feature;
  double threshold;       // midpoint between consecutive distinct values
  double weighted_gini;   // size-weighted child impurity
};

// Exhaustive best split over the candidate features: thresholds are the
// midpoints between consecutive distinct sorted values; minimizes weighted
// child Gini. Ties go to the earliest candidate in scan order (features in
// the given order, thresholds ascending); the tree builder always passes
// candidates ascending, so forest ties resolve to the lower feature index.
// Returns nullopt when no candidate strictly reduces impurity or every
// candidate violates min_samples_leaf.
std::optional<SplitChoice> best_split(const FeatureMatrix& x, const std::vector<uint8_t>& y,
                                      std::span<const uint32_t> rows,
                                      std::span<const int32_t> candidate_features,
                                      uint32_t min_samples_leaf);

class SplitMix64;

// Single CART tree over the given row indices (duplicates allowed — this is
// the bootstrap sample). rng drives per-node feature subsampling.
Tree fit_tree(const FeatureMatrix& x, const std::vector<uint8_t>& y,
              std::vector<uint32_t> rows, const ForestConfig& cfg, SplitMix64& rng);

// Bagged forest. Per-tree seeds derive from (cfg.seed, tree index), so the
// result is identical whether trees are built sequentially or in parallel.
// Throws DataError when fewer than 2 rows or only one class is present.
ForestModel fit_forest(const TrainSet& ds, const ForestConfig& cfg);

// Mean over trees of the reached leaf's class-1 fraction, in [0,1].
// Throws ModelError when x's length differs from model.feature_count.
double predict_score(const ForestModel& model, std::span<const double> x);

// 1 (malicious) iff score >= threshold; the tie goes to malicious.
int predict_label(const ForestModel& model, std::span<const double> x, double threshold = 0.5);

}  // namespace urlsift
