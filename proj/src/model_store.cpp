#include "urlsift/model_store.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "urlsift/errors.hpp"
#include "urlsift/trigram_features.hpp"

namespace urlsift {

namespace {

constexpr std::string_view kMagic = "urlsift-model";

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt_hex(uint32_t v) {
  char buf[16];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, 16);
  return std::string(buf, ptr);
}

const char* sampling_name(ForestConfig::FeatureSampling mode) {
  switch (mode) {
    case ForestConfig::FeatureSampling::all:
      return "all";
    case ForestConfig::FeatureSampling::fixed:
      return "fixed";
    default:
      return "sqrt";
  }
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ > text_.size()) return false;
    size_t nl = text_.find('\n', pos_);
    if (nl == std::string::npos) {
      line = std::string_view(text_).substr(pos_);
      pos_ = text_.size() + 1;
      return !line.empty();
    }
    line = std::string_view(text_).substr(pos_, nl - pos_);
    pos_ = nl + 1;
    return true;
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
};

// Whitespace-token cursor over one line.
class Tokens {
 public:
  explicit Tokens(std::string_view line) : line_(line) {}

  std::string_view word() {
    while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
    size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ') ++pos_;
    if (start == pos_) throw ModelError("corrupt model: truncated line `" + std::string(line_) + "`");
    return line_.substr(start, pos_ - start);
  }

  template <typename T>
  T number(int base = 10) {
    std::string_view w = word();
    T value{};
    std::from_chars_result r{};
    if constexpr (std::is_floating_point_v<T>) {
      r = std::from_chars(w.data(), w.data() + w.size(), value);
    } else {
      r = std::from_chars(w.data(), w.data() + w.size(), value, base);
    }
    if (r.ec != std::errc() || r.ptr != w.data() + w.size())
      throw ModelError("corrupt model: bad number `" + std::string(w) + "`");
    return value;
  }

  bool done() {
    while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
    return pos_ == line_.size();
  }

 private:
  std::string_view line_;
  size_t pos_ = 0;
};

std::string_view expect_line(LineReader& reader, std::string_view key) {
  std::string_view line;
  if (!reader.next(line))
    throw ModelError("corrupt model: missing `" + std::string(key) + "` line");
  if (line.substr(0, key.size()) != key)
    throw ModelError("corrupt model: expected `" + std::string(key) + "`, got `" +
                     std::string(line) + "`");
  return line.substr(std::min(line.size(), key.size() + 1));
}

void validate_tree(const Tree& tree, uint32_t feature_count, uint32_t max_depth) {
  const size_t n = tree.nodes.size();
  if (n == 0) throw ModelError("corrupt model: tree has no nodes");
  std::vector<uint8_t> seen(n, 0);
  // DFS from the root; a proper binary tree visits every node exactly once
  std::vector<std::pair<size_t, uint32_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, depth] = stack.back();
    stack.pop_back();
    if (seen[i]) throw ModelError("corrupt model: node " + std::to_string(i) + " reachable twice");
    seen[i] = 1;
    if (depth > max_depth) throw ModelError("corrupt model: tree deeper than max_depth");
    const TreeNode& node = tree.nodes[i];
    if (node.is_leaf()) {
      if (node.class1_fraction < 0.0 || node.class1_fraction > 1.0)
        throw ModelError("corrupt model: leaf fraction outside [0,1]");
      if (node.sample_count == 0) throw ModelError("corrupt model: leaf with zero samples");
      continue;
    }
    if (node.feature >= static_cast<int32_t>(feature_count))
      throw ModelError("corrupt model: feature index " + std::to_string(node.feature) +
                       " outside feature_count " + std::to_string(feature_count));
    if (node.left < 0 || node.right < 0 || static_cast<size_t>(node.left) >= n ||
        static_cast<size_t>(node.right) >= n || node.left == node.right)
      throw ModelError("corrupt model: child offsets out of range at node " + std::to_string(i));
    stack.emplace_back(static_cast<size_t>(node.left), depth + 1);
    stack.emplace_back(static_cast<size_t>(node.right), depth + 1);
  }
  for (size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw ModelError("corrupt model: unreachable node " + std::to_string(i));
  }
}

}  // namespace

std::string model_to_text(const ForestModel& model) {
  std::string out;
  out += kMagic;
  out += ' ';
  out += std::to_string(model.format_version);
  out += '\n';

  const FeaturizerSpec& fz = model.featurizer;
  out += "feature_count " + std::to_string(model.feature_count) + '\n';
  out += "trigrams " + std::to_string(fz.use_trigrams ? 1 : 0) + ' ' +
         std::to_string(fz.bucket_count) + ' ' + std::to_string(fz.hash_seed) + '\n';
  out += "schema " + std::to_string(fz.schema_version) + '\n';
  out += "digests " + fmt_hex(fz.suffix_digest) + ' ' + fmt_hex(fz.suspicious_digest) + ' ' +
         fmt_hex(fz.top_domains_digest) + '\n';
  out += "trained " + std::to_string(model.meta.n_rows) + ' ' + std::to_string(model.meta.n_benign) +
         ' ' + std::to_string(model.meta.n_malicious) + '\n';

  const ForestConfig& cfg = model.config;
  out += "forest " + std::to_string(cfg.n_trees) + ' ' + std::to_string(cfg.max_depth) + ' ' +
         std::to_string(cfg.min_samples_split) + ' ' + std::to_string(cfg.min_samples_leaf) + ' ' +
         sampling_name(cfg.feature_sampling) + ' ' + std::to_string(cfg.features_fixed) + ' ' +
         std::to_string(cfg.bootstrap ? 1 : 0) + ' ' + std::to_string(cfg.seed) + '\n';

  for (size_t t = 0; t < model.trees.size(); ++t) {
    const Tree& tree = model.trees[t];
    out += "tree " + std::to_string(t) + ' ' + std::to_string(tree.nodes.size()) + '\n';
    for (const TreeNode& node : tree.nodes) {
      out += "n " + std::to_string(node.feature) + ' ' + fmt_double(node.threshold) + ' ' +
             std::to_string(node.left) + ' ' + std::to_string(node.right) + ' ' +
             fmt_double(node.class1_fraction) + ' ' + std::to_string(node.sample_count) + '\n';
    }
  }
  out += "end\n";
  return out;
}

size_t save_model(const ForestModel& model, const std::string& path) {
  std::string text = model_to_text(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ModelError("io error: cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ModelError("io error: short write to " + path);
  return text.size();
}

ForestModel model_from_text(const std::string& text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw ModelError("corrupt model: empty file");
  {
    Tokens t(line);
    if (t.word() != kMagic) throw ModelError("corrupt model: bad magic line");
    int version = t.number<int>();
    if (version > kModelFormatVersion)
      throw ModelError("unsupported version: file is format " + std::to_string(version) +
                       ", this build reads up to " + std::to_string(kModelFormatVersion));
    if (version < 1) throw ModelError("corrupt model: bad format version");
  }

  ForestModel model;
  {
    Tokens t(expect_line(reader, "feature_count"));
    model.feature_count = t.number<uint32_t>();
  }
  {
    Tokens t(expect_line(reader, "trigrams"));
    model.featurizer.use_trigrams = t.number<int>() != 0;
    model.featurizer.bucket_count = t.number<uint32_t>();
    model.featurizer.hash_seed = t.number<uint32_t>();
  }
  {
    Tokens t(expect_line(reader, "schema"));
    model.featurizer.schema_version = t.number<int>();
  }
  {
    Tokens t(expect_line(reader, "digests"));
    model.featurizer.suffix_digest = t.number<uint32_t>(16);
    model.featurizer.suspicious_digest = t.number<uint32_t>(16);
    model.featurizer.top_domains_digest = t.number<uint32_t>(16);
  }
  {
    Tokens t(expect_line(reader, "trained"));
    model.meta.n_rows = t.number<uint64_t>();
    model.meta.n_benign = t.number<uint64_t>();
    model.meta.n_malicious = t.number<uint64_t>();
  }
  {
    Tokens t(expect_line(reader, "forest"));
    model.config.n_trees = t.number<uint32_t>();
    model.config.max_depth = t.number<uint32_t>();
    model.config.min_samples_split = t.number<uint32_t>();
    model.config.min_samples_leaf = t.number<uint32_t>();
    std::string_view mode = t.word();
    if (mode == "sqrt") model.config.feature_sampling = ForestConfig::FeatureSampling::sqrt_count;
    else if (mode == "all") model.config.feature_sampling = ForestConfig::FeatureSampling::all;
    else if (mode == "fixed") model.config.feature_sampling = ForestConfig::FeatureSampling::fixed;
    else throw ModelError("corrupt model: unknown feature sampling `" + std::string(mode) + "`");
    model.config.features_fixed = t.number<uint32_t>();
    model.config.bootstrap = t.number<int>() != 0;
    model.config.seed = t.number<uint64_t>();
  }

  model.trees.reserve(model.config.n_trees);
  for (uint32_t t = 0; t < model.config.n_trees; ++t) {
    Tokens header(expect_line(reader, "tree"));
    uint32_t index = header.number<uint32_t>();
    if (index != t) throw ModelError("corrupt model: tree index out of order");
    uint64_t n_nodes = header.number<uint64_t>();
    if (n_nodes == 0) throw ModelError("corrupt model: tree has no nodes");

    Tree tree;
    tree.nodes.reserve(n_nodes);
    for (uint64_t i = 0; i < n_nodes; ++i) {
      if (!reader.next(line)) throw ModelError("corrupt model: truncated tree " + std::to_string(t));
      Tokens tok(line);
      if (tok.word() != "n") throw ModelError("corrupt model: expected node line");
      TreeNode node;
      node.feature = tok.number<int32_t>();
      node.threshold = tok.number<double>();
      node.left = tok.number<int32_t>();
      node.right = tok.number<int32_t>();
      node.class1_fraction = tok.number<double>();
      node.sample_count = tok.number<uint32_t>();
      if (!tok.done()) throw ModelError("corrupt model: trailing tokens on node line");
      tree.nodes.push_back(node);
    }
    validate_tree(tree, model.feature_count, model.config.max_depth);
    model.trees.push_back(std::move(tree));
  }

  if (!reader.next(line) || line != "end")
    throw ModelError("corrupt model: missing end marker");
  if (reader.next(line)) throw ModelError("corrupt model: trailing content after end marker");
  return model;
}

ForestModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("io error: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_text(buf.str());
}

void check_digests(const ForestModel& model, const Featurizer& featurizer) {
  const FeaturizerSpec& have = featurizer.spec();
  const FeaturizerSpec& want = model.featurizer;
  if (featurizer.feature_count() != model.feature_count)
    throw ModelError("dimension mismatch: featurizer produces " +
                     std::to_string(featurizer.feature_count()) + " features, model expects " +
                     std::to_string(model.feature_count));
  if (have.suffix_digest != want.suffix_digest)
    throw ModelError("digest mismatch: suffix list differs from the one the model was trained with");
  if (have.suspicious_digest != want.suspicious_digest)
    throw ModelError("digest mismatch: suspicious-TLD list differs from the training list");
  if (have.top_domains_digest != want.top_domains_digest)
    throw ModelError("digest mismatch: top-domains list differs from the training list");
  if (have.use_trigrams != want.use_trigrams || have.bucket_count != want.bucket_count ||
      have.hash_seed != want.hash_seed || have.schema_version != want.schema_version)
    throw ModelError("digest mismatch: featurizer config differs from the model's feature space");
}

uint32_t file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("io error: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  return murmur3_32(bytes, 0);
}

}  // namespace urlsift
