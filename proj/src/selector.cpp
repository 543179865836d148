#include "urlsift/selector.hpp"

#include <atomic>
#include <istream>
#include <ostream>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "urlsift/errors.hpp"
#include "urlsift/model_store.hpp"

namespace urlsift {

namespace {

using nlohmann::json;

std::string dump_json(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

json verdict_object(const Verdict& v) {
  json j{{"url", v.url},
         {"verdict", std::string(v.verdict_name())},
         {"score", v.score},
         {"action", std::string(v.action_name())}};
  if (v.failed) j["error"] = v.error;
  return j;
}

// getline with a cap: oversized lines are consumed to the newline but only
// the first max_bytes are kept. Returns false at EOF with nothing read.
bool read_line_bounded(std::istream& in, std::string& line, size_t max_bytes, bool& truncated) {
  line.clear();
  truncated = false;
  int c;
  bool any = false;
  while ((c = in.get()) != std::istream::traits_type::eof()) {
    any = true;
    if (c == '\n') return true;
    if (line.size() < max_bytes)
      line += static_cast<char>(c);
    else
      truncated = true;
  }
  return any;
}

}  // namespace

Selector::Selector(ForestModel model, Featurizer featurizer, double threshold)
    : model_(std::move(model)), featurizer_(std::move(featurizer)), threshold_(threshold) {
  check_digests(model_, featurizer_);
}

Verdict Selector::classify(std::string_view line) const {
  Verdict v;
  v.url.assign(line);
  try {
    std::vector<double> features;
    featurizer_.featurize_into(line, features);
    v.score = predict_score(model_, features);
    v.malicious = v.score >= threshold_;
  } catch (const Error& e) {
    v.failed = true;
    v.error = e.what();
    v.score = 1.0;
    v.malicious = true;  // fail open: forward to analysis
  }
  return v;
}

std::string verdict_to_json(const Verdict& v) { return dump_json(verdict_object(v)); }

size_t run_select_stream(const Selector& sel, std::istream& in, std::ostream& out,
                         const StreamOptions& opts) {
  size_t lines = 0;
  std::string line;
  bool truncated = false;

  if (opts.jobs <= 1) {
    while (read_line_bounded(in, line, opts.max_line_bytes, truncated)) {
      Verdict v = sel.classify(line);
      if (truncated) {
        v.failed = true;
        v.malicious = true;
        v.score = 1.0;
        v.error = "line truncated at " + std::to_string(opts.max_line_bytes) + " bytes";
      }
      out << verdict_to_json(v) << '\n';
      ++lines;
    }
    return lines;
  }

  // Ordered parallel mode: classify a batch of lines concurrently, then emit
  // the batch in input order before reading the next one.
  std::vector<std::string> batch;
  std::vector<uint8_t> batch_truncated;
  std::vector<Verdict> verdicts;
  batch.reserve(opts.batch_size);
  for (;;) {
    batch.clear();
    batch_truncated.clear();
    while (batch.size() < opts.batch_size &&
           read_line_bounded(in, line, opts.max_line_bytes, truncated)) {
      batch.push_back(line);
      batch_truncated.push_back(truncated ? 1 : 0);
    }
    if (batch.empty()) break;

    verdicts.assign(batch.size(), Verdict{});
    const unsigned n_workers = std::min<unsigned>(opts.jobs, batch.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
      for (size_t i = next.fetch_add(1); i < batch.size(); i = next.fetch_add(1))
        verdicts[i] = sel.classify(batch[i]);
    };
    std::vector<std::thread> workers;
    for (unsigned w = 1; w < n_workers; ++w) workers.emplace_back(work);
    work();
    for (auto& w : workers) w.join();

    for (size_t i = 0; i < verdicts.size(); ++i) {
      if (batch_truncated[i]) {
        verdicts[i].failed = true;
        verdicts[i].malicious = true;
        verdicts[i].score = 1.0;
        verdicts[i].error = "line truncated at " + std::to_string(opts.max_line_bytes) + " bytes";
      }
      out << verdict_to_json(verdicts[i]) << '\n';
      ++lines;
    }
  }
  return lines;
}

struct SelectorServer::Impl {
  std::shared_ptr<const Selector> selector;
  uint32_t model_file_digest;
  httplib::Server server;
  int port = -1;
};

SelectorServer::SelectorServer(std::shared_ptr<const Selector> selector, uint32_t model_file_digest)
    : impl_(std::make_unique<Impl>()) {
  impl_->selector = std::move(selector);
  impl_->model_file_digest = model_file_digest;

  httplib::Server& svr = impl_->server;
  Impl* impl = impl_.get();

  svr.Get("/health", [impl](const httplib::Request&, httplib::Response& res) {
    char digest[16];
    std::snprintf(digest, sizeof(digest), "%08x", impl->model_file_digest);
    const ForestModel& model = impl->selector->model();
    json j{{"status", "ok"},
           {"model_digest", digest},
           {"format_version", model.format_version},
           {"feature_count", model.feature_count},
           {"trees", model.trees.size()},
           {"threshold", impl->selector->threshold()}};
    res.set_content(dump_json(j), "application/json");
  });

  svr.Post("/classify", [impl](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      res.status = 400;
      res.set_content(dump_json(json{{"error", "body must be a JSON object"}}), "application/json");
      return;
    }
    if (body.contains("url")) {
      if (!body["url"].is_string()) {
        res.status = 400;
        res.set_content(dump_json(json{{"error", "\"url\" must be a string"}}), "application/json");
        return;
      }
      Verdict v = impl->selector->classify(body["url"].get<std::string>());
      res.set_content(dump_json(verdict_object(v)), "application/json");
      return;
    }
    if (body.contains("urls")) {
      if (!body["urls"].is_array()) {
        res.status = 400;
        res.set_content(dump_json(json{{"error", "\"urls\" must be an array of strings"}}),
                        "application/json");
        return;
      }
      json verdicts = json::array();
      for (const json& item : body["urls"]) {
        if (!item.is_string()) {
          res.status = 400;
          res.set_content(dump_json(json{{"error", "\"urls\" must be an array of strings"}}),
                          "application/json");
          return;
        }
        verdicts.push_back(verdict_object(impl->selector->classify(item.get<std::string>())));
      }
      res.set_content(dump_json(json{{"verdicts", verdicts}}), "application/json");
      return;
    }
    res.status = 400;
    res.set_content(dump_json(json{{"error", "expected \"url\" or \"urls\""}}), "application/json");
  });
}

SelectorServer::~SelectorServer() { stop(); }

int SelectorServer::bind(const std::string& host, int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else {
    impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  return impl_->port;
}

bool SelectorServer::listen() { return impl_->server.listen_after_bind(); }

void SelectorServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace urlsift
