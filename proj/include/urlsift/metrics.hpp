#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "urlsift/random_forest.hpp"

namespace urlsift {

// Positive class is malicious throughout, so FNR counts missed malicious.
struct Confusion {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t tn = 0;
  uint64_t fn = 0;

  uint64_t total() const { return tp + fp + tn + fn; }
  double accuracy() const;
  double fpr() const;  // fp / max(1, fp + tn)
  double fnr() const;  // fn / max(1, fn + tp)
};

Confusion confusion(std::span<const uint8_t> labels, std::span<const uint8_t> predictions);

// ROC by descending-score threshold sweep: one point per distinct score,
// with (0,0) prepended and (1,1) as the final point. Both coordinates are
// non-decreasing along the curve.
std::vector<std::pair<double, double>> roc_curve(std::span<const uint8_t> labels,
                                                 std::span<const double> scores);

// Trapezoidal area under roc_curve; equals the probability that a random
// positive outscores a random negative with ties counted half.
double auc(std::span<const uint8_t> labels, std::span<const double> scores);

struct EvalReport {
  Confusion confusion;
  double threshold = 0.5;
  double accuracy = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  double auc = 0.0;
  std::vector<std::pair<double, double>> roc_points;
};

// Evaluates raw scores against labels at the given threshold (score >=
// threshold predicts malicious).
EvalReport evaluate_scores(std::span<const uint8_t> labels, std::span<const double> scores,
                           double threshold);

// Runs the model over a featurized test set and evaluates.
EvalReport evaluate(const ForestModel& model, const TrainSet& test, double threshold);

// External score file: `score,label` rows, optional header line.
void load_score_file(const std::string& path, std::vector<double>& scores,
                     std::vector<uint8_t>& labels);

std::string render_report_text(const EvalReport& report);
std::string render_report_csv(const EvalReport& report);

}  // namespace urlsift
