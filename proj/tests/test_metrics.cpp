#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "urlsift/errors.hpp"
#include "urlsift/metrics.hpp"
#include "urlsift/random_forest.hpp"
#include "urlsift/rng.hpp"

using namespace urlsift;

namespace {

// Mann-Whitney formulation: AUC = P(score_pos > score_neg) + 0.5 P(equal),
// computed by brute force over all positive/negative pairs.
double auc_by_pairs(const std::vector<uint8_t>& labels, const std::vector<double>& scores) {
  double wins = 0.0;
  uint64_t pairs = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i]) continue;
    for (size_t j = 0; j < labels.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("confusion counts and derived rates") {
  std::vector<uint8_t> labels = {1, 1, 1, 0, 0, 0, 0, 1};
  std::vector<uint8_t> preds = {1, 0, 1, 0, 1, 0, 0, 1};
  Confusion c = confusion(labels, preds);
  CHECK(c.tp == 3);
  CHECK(c.fn == 1);
  CHECK(c.fp == 1);
  CHECK(c.tn == 3);
  CHECK(c.total() == 8);
  CHECK(c.accuracy() == doctest::Approx(0.75));
  CHECK(c.fpr() == doctest::Approx(0.25));
  CHECK(c.fnr() == doctest::Approx(0.25));

  std::vector<uint8_t> shorter = {1};
  CHECK_THROWS_AS(confusion(labels, shorter), DataError);
  CHECK_THROWS_AS(confusion({}, {}), DataError);
}

TEST_CASE("roc curve on the classic four-point example") {
  std::vector<uint8_t> labels = {1, 0, 1, 0};
  std::vector<double> scores = {0.9, 0.8, 0.3, 0.1};
  auto pts = roc_curve(labels, scores);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0] == std::make_pair(0.0, 0.0));
  CHECK(pts[1] == std::make_pair(0.0, 0.5));
  CHECK(pts[2] == std::make_pair(0.5, 0.5));
  CHECK(pts[3] == std::make_pair(0.5, 1.0));
  CHECK(pts[4] == std::make_pair(1.0, 1.0));
  CHECK(auc(labels, scores) == doctest::Approx(0.75));
}

TEST_CASE("auc endpoints: perfect, inverted, uninformative") {
  std::vector<uint8_t> labels = {0, 0, 1, 1};
  std::vector<double> up = {0.1, 0.2, 0.8, 0.9};
  CHECK(auc(labels, up) == doctest::Approx(1.0));
  std::vector<double> down = {0.9, 0.8, 0.2, 0.1};
  CHECK(auc(labels, down) == doctest::Approx(0.0));
  std::vector<double> flat = {0.5, 0.5, 0.5, 0.5};
  CHECK(auc(labels, flat) == doctest::Approx(0.5));
  auto flat_pts = roc_curve(labels, flat);
  REQUIRE(flat_pts.size() == 2);  // single tie group: straight diagonal
  CHECK(flat_pts[0] == std::make_pair(0.0, 0.0));
  CHECK(flat_pts[1] == std::make_pair(1.0, 1.0));
}

TEST_CASE("tied scores earn half credit") {
  // one positive at 0.7, negatives at 0.7 and 0.1:
  // pairs: (0.7 vs 0.7) = 0.5, (0.7 vs 0.1) = 1 -> auc 0.75
  std::vector<uint8_t> labels = {1, 0, 0};
  std::vector<double> scores = {0.7, 0.7, 0.1};
  CHECK(auc(labels, scores) == doctest::Approx(0.75));
}

TEST_CASE("auc matches the all-pairs oracle on random score sets") {
  SplitMix64 rng(12345);
  for (int trial = 0; trial < 25; ++trial) {
    size_t n = 5 + rng.bounded(40);
    std::vector<uint8_t> labels(n);
    std::vector<double> scores(n);
    bool has0 = false, has1 = false;
    for (size_t i = 0; i < n; ++i) {
      labels[i] = rng.bounded(2) != 0;
      (labels[i] ? has1 : has0) = true;
      // quantized scores force plenty of ties
      scores[i] = static_cast<double>(rng.bounded(8)) / 8.0;
    }
    if (!has0 || !has1) continue;
    CHECK(auc(labels, scores) == doctest::Approx(auc_by_pairs(labels, scores)));

    // swapping the classes mirrors the area
    std::vector<uint8_t> flipped(n);
    for (size_t i = 0; i < n; ++i) flipped[i] = labels[i] ? 0 : 1;
    CHECK(auc(flipped, scores) == doctest::Approx(1.0 - auc(labels, scores)));
  }
}

TEST_CASE("roc curve is monotone with fixed endpoints") {
  SplitMix64 rng(77);
  std::vector<uint8_t> labels;
  std::vector<double> scores;
  for (int i = 0; i < 60; ++i) {
    labels.push_back(rng.bounded(2) != 0);
    scores.push_back(static_cast<double>(rng.bounded(10)) / 10.0);
  }
  labels[0] = 0;
  labels[1] = 1;
  auto pts = roc_curve(labels, scores);
  CHECK(pts.front() == std::make_pair(0.0, 0.0));
  CHECK(pts.back() == std::make_pair(1.0, 1.0));
  for (size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].first >= pts[i - 1].first);
    CHECK(pts[i].second >= pts[i - 1].second);
  }
}

TEST_CASE("degenerate score inputs are rejected") {
  std::vector<uint8_t> ones = {1, 1, 1};
  std::vector<double> s = {0.1, 0.2, 0.3};
  CHECK_THROWS_WITH_AS(roc_curve(ones, s), doctest::Contains("single class"), DataError);
  std::vector<uint8_t> zeros = {0, 0, 0};
  CHECK_THROWS_AS(auc(zeros, s), DataError);
  std::vector<uint8_t> mixed = {0, 1};
  CHECK_THROWS_WITH_AS(auc(mixed, s), doctest::Contains("length mismatch"), DataError);
  CHECK_THROWS_AS(evaluate_scores({}, {}, 0.5), DataError);
}

TEST_CASE("evaluate_scores applies the threshold with ties going malicious") {
  std::vector<uint8_t> labels = {1, 0, 1, 0};
  std::vector<double> scores = {0.9, 0.5, 0.3, 0.1};
  EvalReport r = evaluate_scores(labels, scores, 0.5);
  // 0.5 >= 0.5 counts as predicted-malicious, so the second row is a FP
  CHECK(r.confusion.tp == 1);
  CHECK(r.confusion.fp == 1);
  CHECK(r.confusion.fn == 1);
  CHECK(r.confusion.tn == 1);
  CHECK(r.accuracy == doctest::Approx(0.5));
  CHECK(r.fpr == doctest::Approx(0.5));
  CHECK(r.fnr == doctest::Approx(0.5));
  CHECK(r.threshold == 0.5);
  CHECK(r.auc == doctest::Approx(auc(labels, scores)));
  CHECK(r.roc_points.size() >= 2);

  EvalReport strict = evaluate_scores(labels, scores, 0.51);
  CHECK(strict.confusion.fp == 0);
  CHECK(strict.confusion.tn == 2);
}

TEST_CASE("evaluate runs a model over a featurized test set") {
  // one informative feature; model must reproduce the labels
  TrainSet train;
  train.x.resize(40, 2);
  train.y.resize(40);
  SplitMix64 rng(5);
  for (size_t i = 0; i < 40; ++i) {
    train.y[i] = i % 2;
    train.x.data[i * 2 + 0] = train.y[i] ? 10.0 + rng.uniform() : rng.uniform();
    train.x.data[i * 2 + 1] = rng.uniform();
  }
  ForestConfig cfg;
  cfg.n_trees = 5;
  cfg.max_depth = 3;
  cfg.seed = 2;
  cfg.n_threads = 1;
  cfg.feature_sampling = ForestConfig::FeatureSampling::all;
  ForestModel model = fit_forest(train, cfg);

  EvalReport r = evaluate(model, train, 0.5);
  CHECK(r.accuracy == doctest::Approx(1.0));
  CHECK(r.auc == doctest::Approx(1.0));

  TrainSet empty;
  CHECK_THROWS_AS(evaluate(model, empty, 0.5), DataError);
}

TEST_CASE("score file loader") {
  const std::string path = "test_metrics_scores_tmp.csv";
  {
    std::ofstream out(path);
    out << "score,label\n0.9,1\n0.2,0\n0.7,1\n";
  }
  std::vector<double> scores;
  std::vector<uint8_t> labels;
  load_score_file(path, scores, labels);
  REQUIRE(scores.size() == 3);
  CHECK(scores[0] == doctest::Approx(0.9));
  CHECK(labels == std::vector<uint8_t>{1, 0, 1});

  {
    std::ofstream out(path);
    out << "0.4,0\n0.6,1\n";  // header is optional
  }
  load_score_file(path, scores, labels);
  REQUIRE(scores.size() == 2);
  CHECK(scores[1] == doctest::Approx(0.6));

  {
    std::ofstream out(path);
    out << "0.4,2\n";
  }
  CHECK_THROWS_WITH_AS(load_score_file(path, scores, labels), doctest::Contains("bad label"),
                       DataError);
  {
    std::ofstream out(path);
    out << "not-a-number,1\n";
  }
  CHECK_THROWS_WITH_AS(load_score_file(path, scores, labels), doctest::Contains("bad score file"),
                       DataError);
  {
    std::ofstream out(path);
    out << "0.5 1\n";  // missing comma
  }
  CHECK_THROWS_AS(load_score_file(path, scores, labels), DataError);
  {
    std::ofstream out(path);
    out << "score,label\n";
  }
  CHECK_THROWS_WITH_AS(load_score_file(path, scores, labels), doctest::Contains("no rows"),
                       DataError);
  std::remove(path.c_str());
  CHECK_THROWS_WITH_AS(load_score_file(path, scores, labels), doctest::Contains("file not found"),
                       DataError);
}

TEST_CASE("report rendering") {
  std::vector<uint8_t> labels = {1, 0, 1, 0};
  std::vector<double> scores = {0.9, 0.8, 0.3, 0.1};
  EvalReport r = evaluate_scores(labels, scores, 0.5);

  std::string text = render_report_text(r);
  CHECK(text.find("accuracy:") != std::string::npos);
  CHECK(text.find("fpr:") != std::string::npos);
  CHECK(text.find("fnr:") != std::string::npos);
  CHECK(text.find("auc:") != std::string::npos);
  CHECK(text.find("0.75") != std::string::npos);

  std::string csv = render_report_csv(r);
  CHECK(csv.find("threshold,tp,fp,tn,fn,accuracy,fpr,fnr,auc") == 0);
  CHECK(csv.find("0.5,1,1,1,1,0.5,0.5,0.5,0.75") != std::string::npos);
}
