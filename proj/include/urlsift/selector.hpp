#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "urlsift/feature_pipeline.hpp"
#include "urlsift/random_forest.hpp"

namespace urlsift {

// One classified line. action is derived: forward iff malicious. Failures
// fail open (malicious/forward, score 1.0) so broken inputs still reach
// downstream analysis.
struct Verdict {
  std::string url;
  double score = 0.0;
  bool malicious = false;
  bool failed = false;
  std::string error;  // set when failed

  std::string_view verdict_name() const { return malicious ? "malicious" : "benign"; }
  std::string_view action_name() const { return malicious ? "forward" : "reject"; }
};

// Immutable model + featurizer + threshold; classify is thread-safe.
class Selector {
 public:
  Selector(ForestModel model, Featurizer featurizer, double threshold = 0.5);

  Verdict classify(std::string_view line) const;

  const ForestModel& model() const { return model_; }
  const Featurizer& featurizer() const { return featurizer_; }
  double threshold() const { return threshold_; }

 private:
  ForestModel model_;
  Featurizer featurizer_;
  double threshold_;
};

// One-line JSON rendering: {"url":…,"verdict":…,"score":…,"action":…} plus
// "error" when the line failed. Invalid UTF-8 in the echoed URL is replaced,
// never propagated.
std::string verdict_to_json(const Verdict& v);

struct StreamOptions {
  size_t max_line_bytes = 1 << 22;  // longer lines are truncated and flagged
  unsigned jobs = 1;                // >1 classifies batches in parallel, output order unchanged
  size_t batch_size = 256;          // lines per parallel batch
};

// Reads one URL per line, writes one JSON verdict line per input line, in
// input order. Per-line failures never terminate the stream; memory is
// bounded by the longest single line, not the stream length. Returns lines
// processed.
size_t run_select_stream(const Selector& sel, std::istream& in, std::ostream& out,
                         const StreamOptions& opts = {});

// HTTP form of the selector. Endpoints:
//   GET  /health            → {status, model_digest, format_version, feature_count, trees}
//   POST /classify          → body {"url": "…"} → one verdict object
//                             body {"urls": […]} → {"verdicts": […]} in request order
// Malformed requests get a 400 with an error body; per-URL failures fail open
// inside a 200. Requests are served concurrently over the shared model.
class SelectorServer {
 public:
  // model_file_digest is murmur3 of the model file bytes, reported by /health.
  SelectorServer(std::shared_ptr<const Selector> selector, uint32_t model_file_digest);
  ~SelectorServer();

  SelectorServer(const SelectorServer&) = delete;
  SelectorServer& operator=(const SelectorServer&) = delete;

  // Binds and returns the actual port (port 0 picks a free one), or -1 on
  // failure. listen() then blocks until stop().
  int bind(const std::string& host, int port);
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace urlsift
