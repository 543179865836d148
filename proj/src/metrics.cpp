#include "urlsift/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "urlsift/errors.hpp"

namespace urlsift {

double Confusion::accuracy() const {
  return static_cast<double>(tp + tn) / static_cast<double>(std::max<uint64_t>(1, total()));
}

double Confusion::fpr() const {
  return static_cast<double>(fp) / static_cast<double>(std::max<uint64_t>(1, fp + tn));
}

double Confusion::fnr() const {
  return static_cast<double>(fn) / static_cast<double>(std::max<uint64_t>(1, fn + tp));
}

Confusion confusion(std::span<const uint8_t> labels, std::span<const uint8_t> predictions) {
  if (labels.size() != predictions.size())
    throw DataError("length mismatch: labels and predictions differ in size");
  if (labels.empty()) throw DataError("empty input: confusion needs at least one pair");
  Confusion c;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i]) {
      predictions[i] ? ++c.tp : ++c.fn;
    } else {
      predictions[i] ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

namespace {

void check_scored_input(std::span<const uint8_t> labels, std::span<const double> scores) {
  if (labels.size() != scores.size())
    throw DataError("length mismatch: labels and scores differ in size");
  uint64_t pos = 0;
  for (uint8_t label : labels) pos += label;
  if (labels.empty() || pos == 0 || pos == labels.size())
    throw DataError("single class: ROC needs both classes present");
}

}  // namespace

std::vector<std::pair<double, double>> roc_curve(std::span<const uint8_t> labels,
                                                 std::span<const double> scores) {
  check_scored_input(labels, scores);
  const size_t n = labels.size();
  uint64_t total_pos = 0;
  for (uint8_t label : labels) total_pos += label;
  const uint64_t total_neg = n - total_pos;

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  std::vector<std::pair<double, double>> points;
  points.emplace_back(0.0, 0.0);
  uint64_t tp = 0, fp = 0;
  size_t i = 0;
  while (i < n) {
    const double s = scores[order[i]];
    // consume the whole tie group before emitting a point
    while (i < n && scores[order[i]] == s) {
      labels[order[i]] ? ++tp : ++fp;
      ++i;
    }
    points.emplace_back(static_cast<double>(fp) / static_cast<double>(total_neg),
                        static_cast<double>(tp) / static_cast<double>(total_pos));
  }
  if (points.back() != std::make_pair(1.0, 1.0)) points.emplace_back(1.0, 1.0);
  return points;
}

double auc(std::span<const uint8_t> labels, std::span<const double> scores) {
  auto points = roc_curve(labels, scores);
  double area = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    area += (points[i].first - points[i - 1].first) * (points[i].second + points[i - 1].second) / 2.0;
  }
  return area;
}

EvalReport evaluate_scores(std::span<const uint8_t> labels, std::span<const double> scores,
                           double threshold) {
  check_scored_input(labels, scores);
  std::vector<uint8_t> preds(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) preds[i] = scores[i] >= threshold ? 1 : 0;

  EvalReport report;
  report.threshold = threshold;
  report.confusion = confusion(labels, preds);
  report.accuracy = report.confusion.accuracy();
  report.fpr = report.confusion.fpr();
  report.fnr = report.confusion.fnr();
  report.roc_points = roc_curve(labels, scores);
  double area = 0.0;
  const auto& pts = report.roc_points;
  for (size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2.0;
  }
  report.auc = area;
  return report;
}

EvalReport evaluate(const ForestModel& model, const TrainSet& test, double threshold) {
  if (test.x.n_rows == 0) throw DataError("empty input: evaluation needs a non-empty test set");
  std::vector<double> scores(test.x.n_rows);
  for (size_t i = 0; i < test.x.n_rows; ++i) {
    scores[i] = predict_score(model, {test.x.row(i), test.x.n_cols});
  }
  return evaluate_scores(test.y, scores, threshold);
}

void load_score_file(const std::string& path, std::vector<double>& scores,
                     std::vector<uint8_t>& labels) {
  std::ifstream in(path);
  if (!in) throw DataError("file not found: " + path);
  scores.clear();
  labels.clear();
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos) throw DataError("bad score file row: `" + line + "`");
    std::string score_text = line.substr(0, comma);
    std::string label_text = line.substr(comma + 1);
    if (first) {
      first = false;
      // tolerate a `score,label` header
      if (score_text == "score" && label_text == "label") continue;
    }
    try {
      double s = std::stod(score_text);
      int l = std::stoi(label_text);
      if (l != 0 && l != 1) throw DataError("bad label in score file: " + label_text);
      scores.push_back(s);
      labels.push_back(static_cast<uint8_t>(l));
    } catch (const std::invalid_argument&) {
      throw DataError("bad score file row: `" + line + "`");
    }
  }
  if (scores.empty()) throw DataError("empty dataset: score file has no rows");
}

std::string render_report_text(const EvalReport& report) {
  std::ostringstream out;
  const Confusion& c = report.confusion;
  out << "threshold:  " << report.threshold << "\n";
  out << "samples:    " << c.total() << "  (tp " << c.tp << ", fp " << c.fp << ", tn " << c.tn
      << ", fn " << c.fn << ")\n";
  out << "accuracy:   " << report.accuracy * 100.0 << "%\n";
  out << "fpr:        " << report.fpr * 100.0 << "%\n";
  out << "fnr:        " << report.fnr * 100.0 << "%\n";
  out << "auc:        " << report.auc << "\n";
  return out.str();
}

std::string render_report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "threshold,tp,fp,tn,fn,accuracy,fpr,fnr,auc\n";
  const Confusion& c = report.confusion;
  out << report.threshold << ',' << c.tp << ',' << c.fp << ',' << c.tn << ',' << c.fn << ','
      << report.accuracy << ',' << report.fpr << ',' << report.fnr << ',' << report.auc << '\n';
  return out.str();
}

}  // namespace urlsift
