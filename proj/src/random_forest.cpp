#include "urlsift/random_forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "urlsift/errors.hpp"
#include "urlsift/rng.hpp"

namespace urlsift {

double gini(uint64_t n0, uint64_t n1) {
  const uint64_t n = n0 + n1;
  if (n == 0) throw DataError("empty node: gini needs at least one sample");
  const double p0 = static_cast<double>(n0) / static_cast<double>(n);
  const double p1 = static_cast<double>(n1) / static_cast<double>(n);
  return 1.0 - p0 * p0 - p1 * p1;
}

uint32_t tree_depth(const Tree& tree) {
  uint32_t best = 0;
  // nodes are appended parent-first, so a forward scan sees depths in order
  std::vector<uint32_t> depth(tree.nodes.size(), 0);
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& node = tree.nodes[i];
    if (node.is_leaf()) {
      best = std::max(best, depth[i]);
    } else {
      depth[static_cast<size_t>(node.left)] = depth[i] + 1;
      depth[static_cast<size_t>(node.right)] = depth[i] + 1;
    }
  }
  return best;
}

std::optional<SplitChoice> best_split(const FeatureMatrix& x, const std::vector<uint8_t>& y,
                                      std::span<const uint32_t> rows,
                                      std::span<const int32_t> candidate_features,
                                      uint32_t min_samples_leaf) {
  const size_t n = rows.size();
  if (n < 2) return std::nullopt;

  uint64_t total1 = 0;
  for (uint32_t r : rows) total1 += y[r];
  const uint64_t total0 = n - total1;
  if (total0 == 0 || total1 == 0) return std::nullopt;  // pure node
  const double parent = gini(total0, total1);

  std::optional<SplitChoice> best;
  std::vector<std::pair<double, uint8_t>> vals;
  vals.reserve(n);

  for (int32_t f : candidate_features) {
    vals.clear();
    double lo = x.at(rows[0], static_cast<size_t>(f));
    double hi = lo;
    for (uint32_t r : rows) {
      double v = x.at(r, static_cast<size_t>(f));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      vals.emplace_back(v, y[r]);
    }
    if (lo == hi) continue;  // constant feature, no midpoint exists

    std::sort(vals.begin(), vals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    uint64_t left1 = 0;
    for (size_t i = 0; i + 1 < n; ++i) {
      left1 += vals[i].second;
      if (vals[i].first == vals[i + 1].first) continue;
      const uint64_t nl = i + 1;
      const uint64_t nr = n - nl;
      if (nl < min_samples_leaf || nr < min_samples_leaf) continue;
      const uint64_t left0 = nl - left1;
      const uint64_t right1 = total1 - left1;
      const uint64_t right0 = nr - right1;
      const double weighted =
          (static_cast<double>(nl) * gini(left0, left1) +
           static_cast<double>(nr) * gini(right0, right1)) /
          static_cast<double>(n);
      if (!best || weighted < best->weighted_gini) {
        // scan order is feature-ascending then threshold-ascending, so a
        // strict comparison implements the tie rule
        best = SplitChoice{f, (vals[i].first + vals[i + 1].first) / 2.0, weighted};
      }
    }
  }

  if (best && best->weighted_gini < parent) return best;
  return std::nullopt;
}

namespace {

struct TreeBuilder {
  const FeatureMatrix& x;
  const std::vector<uint8_t>& y;
  const ForestConfig& cfg;
  SplitMix64& rng;
  Tree tree;
  std::vector<int32_t> feature_scratch;
  std::vector<uint32_t> part_scratch;

  uint32_t candidate_count() const {
    const auto total = static_cast<uint32_t>(x.n_cols);
    switch (cfg.feature_sampling) {
      case ForestConfig::FeatureSampling::all:
        return total;
      case ForestConfig::FeatureSampling::fixed:
        return std::clamp(cfg.features_fixed, 1u, total);
      case ForestConfig::FeatureSampling::sqrt_count:
      default:
        return std::max(1u, static_cast<uint32_t>(std::sqrt(static_cast<double>(total))));
    }
  }

  std::span<const int32_t> draw_candidates() {
    const auto total = static_cast<uint32_t>(x.n_cols);
    const uint32_t k = candidate_count();
    feature_scratch.resize(total);
    std::iota(feature_scratch.begin(), feature_scratch.end(), 0);
    if (k >= total) return feature_scratch;
    // partial Fisher-Yates, then ascending order for the tie rule
    for (uint32_t i = 0; i < k; ++i) {
      uint32_t j = i + static_cast<uint32_t>(rng.bounded(total - i));
      std::swap(feature_scratch[i], feature_scratch[j]);
    }
    std::sort(feature_scratch.begin(), feature_scratch.begin() + k);
    return {feature_scratch.data(), k};
  }

  int32_t make_leaf(std::span<const uint32_t> rows) {
    uint64_t n1 = 0;
    for (uint32_t r : rows) n1 += y[r];
    TreeNode leaf;
    leaf.class1_fraction = static_cast<double>(n1) / static_cast<double>(rows.size());
    leaf.sample_count = static_cast<uint32_t>(rows.size());
    tree.nodes.push_back(leaf);
    return static_cast<int32_t>(tree.nodes.size() - 1);
  }

  int32_t build(std::span<uint32_t> rows, uint32_t depth) {
    const size_t n = rows.size();
    bool pure = true;
    for (size_t i = 1; i < n && pure; ++i) pure = y[rows[i]] == y[rows[0]];
    if (pure || depth >= cfg.max_depth || n < cfg.min_samples_split) return make_leaf(rows);

    auto split = best_split(x, y, rows, draw_candidates(), cfg.min_samples_leaf);
    if (!split) return make_leaf(rows);

    // stable partition: left-goers keep order, then right-goers
    part_scratch.clear();
    size_t n_left = 0;
    for (uint32_t r : rows) {
      if (x.at(r, static_cast<size_t>(split->feature)) <= split->threshold) {
        rows[n_left++] = r;
      } else {
        part_scratch.push_back(r);
      }
    }
    std::copy(part_scratch.begin(), part_scratch.end(), rows.begin() + static_cast<ptrdiff_t>(n_left));
    if (n_left == 0 || n_left == n) return make_leaf(rows);  // degenerate midpoint rounding

    uint64_t n1 = 0;
    for (uint32_t r : rows) n1 += y[r];
    TreeNode node;
    node.feature = split->feature;
    node.threshold = split->threshold;
    node.class1_fraction = static_cast<double>(n1) / static_cast<double>(n);
    node.sample_count = static_cast<uint32_t>(n);
    tree.nodes.push_back(node);
    const auto index = static_cast<int32_t>(tree.nodes.size() - 1);

    // children recurse on disjoint halves of the parent's index range
    const int32_t left = build(rows.subspan(0, n_left), depth + 1);
    const int32_t right = build(rows.subspan(n_left), depth + 1);
    tree.nodes[static_cast<size_t>(index)].left = left;
    tree.nodes[static_cast<size_t>(index)].right = right;
    return index;
  }
};

}  // namespace

Tree fit_tree(const FeatureMatrix& x, const std::vector<uint8_t>& y,
              std::vector<uint32_t> rows, const ForestConfig& cfg, SplitMix64& rng) {
  if (rows.empty()) throw DataError("empty node: cannot fit a tree on zero rows");
  TreeBuilder builder{x, y, cfg, rng, {}, {}, {}};
  builder.tree.nodes.reserve(64);
  builder.build(rows, 0);
  return std::move(builder.tree);
}

namespace {

void validate_config(const ForestConfig& cfg) {
  if (cfg.n_trees < 1) throw DataError("invalid forest config: n_trees must be >= 1");
  if (cfg.max_depth < 1) throw DataError("invalid forest config: max_depth must be >= 1");
  if (cfg.min_samples_split < 2)
    throw DataError("invalid forest config: min_samples_split must be >= 2");
  if (cfg.min_samples_leaf < 1)
    throw DataError("invalid forest config: min_samples_leaf must be >= 1");
  if (cfg.feature_sampling == ForestConfig::FeatureSampling::fixed && cfg.features_fixed < 1)
    throw DataError("invalid forest config: fixed feature count must be >= 1");
}

}  // namespace

TrainSet featurize_dataset(const Featurizer& fz, const LabeledDataset& ds) {
  TrainSet out;
  out.x.resize(ds.rows.size(), fz.feature_count());
  out.y.resize(ds.rows.size());
  std::vector<double> features;
  for (size_t i = 0; i < ds.rows.size(); ++i) {
    try {
      fz.featurize_into(ds.rows[i].url, features);
    } catch (const Error& e) {
      throw DataError("row " + std::to_string(i + 1) + " (" + ds.rows[i].url +
                      "): " + e.what());
    }
    std::copy(features.begin(), features.end(), out.x.row(i));
    out.y[i] = ds.rows[i].label;
  }
  return out;
}

ForestModel fit_forest(const TrainSet& ds, const ForestConfig& cfg) {
  validate_config(cfg);
  const size_t n = ds.x.n_rows;
  if (n < 2) throw DataError("too few rows: training needs at least 2");
  if (ds.y.size() != n) throw DataError("label count does not match row count");
  uint64_t n1 = 0;
  for (uint8_t label : ds.y) n1 += label;
  if (n1 == 0 || n1 == n) throw DataError("single class dataset: both classes are required");

  ForestModel model;
  model.config = cfg;
  model.feature_count = static_cast<uint32_t>(ds.x.n_cols);
  model.meta.n_rows = n;
  model.meta.n_malicious = n1;
  model.meta.n_benign = n - n1;
  model.trees.resize(cfg.n_trees);

  auto build_one = [&](uint32_t t) {
    SplitMix64 rng(derive_seed(cfg.seed, t));
    std::vector<uint32_t> rows(n);
    if (cfg.bootstrap) {
      for (auto& r : rows) r = static_cast<uint32_t>(rng.bounded(n));
    } else {
      std::iota(rows.begin(), rows.end(), 0u);
    }
    model.trees[t] = fit_tree(ds.x, ds.y, std::move(rows), cfg, rng);
  };

  uint32_t threads = cfg.n_threads ? cfg.n_threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min(threads, cfg.n_trees));
  if (threads == 1) {
    for (uint32_t t = 0; t < cfg.n_trees; ++t) build_one(t);
  } else {
    std::atomic<uint32_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (uint32_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (uint32_t t = next.fetch_add(1); t < cfg.n_trees; t = next.fetch_add(1)) build_one(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  return model;
}

double predict_score(const ForestModel& model, std::span<const double> x) {
  if (x.size() != model.feature_count)
    throw ModelError("dimension mismatch: vector has " + std::to_string(x.size()) +
                     " features, model expects " + std::to_string(model.feature_count));
  double sum = 0.0;
  for (const Tree& tree : model.trees) {
    size_t i = 0;
    while (!tree.nodes[i].is_leaf()) {
      const TreeNode& node = tree.nodes[i];
      i = static_cast<size_t>(x[static_cast<size_t>(node.feature)] <= node.threshold ? node.left
                                                                                     : node.right);
    }
    sum += tree.nodes[i].class1_fraction;
  }
  return sum / static_cast<double>(model.trees.size());
}

int predict_label(const ForestModel& model, std::span<const double> x, double threshold) {
  return predict_score(model, x) >= threshold ? 1 : 0;
}

}  // namespace urlsift
