// urlsift: train, evaluate and serve a lexical malicious-URL classifier.
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "urlsift/dataset.hpp"
#include "urlsift/errors.hpp"
#include "urlsift/feature_pipeline.hpp"
#include "urlsift/lexical_features.hpp"
#include "urlsift/metrics.hpp"
#include "urlsift/model_store.hpp"
#include "urlsift/random_forest.hpp"
#include "urlsift/selector.hpp"
#include "urlsift/synthetic_corpus.hpp"
#include "urlsift/url_parse.hpp"
#include "urlsift/word_list.hpp"

namespace {

using namespace urlsift;

struct ListFlags {
  std::string suffix_list;
  std::string suspicious_tlds;
  std::string top_domains;
};

void add_list_flags(CLI::App* cmd, ListFlags& lists) {
  cmd->add_option("--suffix-list", lists.suffix_list, "Public suffix list file (default: built-in)");
  cmd->add_option("--suspicious-tlds", lists.suspicious_tlds,
                  "Suspicious TLD list file (default: built-in)");
  cmd->add_option("--top-domains", lists.top_domains,
                  "Top-domain whitelist file (default: built-in)");
}

WordList load_or_builtin(const std::string& path, const WordList& builtin) {
  return path.empty() ? builtin : WordList::from_file(path);
}

Featurizer make_featurizer(const ListFlags& lists, uint32_t buckets, bool lexical_only) {
  TrigramConfig tri;
  tri.bucket_count = buckets == 0 ? 1000 : buckets;  // bucket count is inert when lexical-only
  LexicalConfig lex{load_or_builtin(lists.suspicious_tlds, builtin_suspicious_tlds()),
                    load_or_builtin(lists.top_domains, builtin_top_domains())};
  return Featurizer(tri, std::move(lex), load_or_builtin(lists.suffix_list, builtin_suffix_list()),
                    !lexical_only && buckets > 0);
}

// Serving and evaluation reconstruct the feature space from the model file,
// then verify the active word lists against the recorded digests.
Featurizer featurizer_for_model(const ForestModel& model, const ListFlags& lists) {
  TrigramConfig tri;
  tri.bucket_count = model.featurizer.bucket_count;
  tri.hash_seed = model.featurizer.hash_seed;
  LexicalConfig lex{load_or_builtin(lists.suspicious_tlds, builtin_suspicious_tlds()),
                    load_or_builtin(lists.top_domains, builtin_top_domains())};
  Featurizer fz(tri, std::move(lex),
                load_or_builtin(lists.suffix_list, builtin_suffix_list()),
                model.featurizer.use_trigrams);
  check_digests(model, fz);
  return fz;
}

void append_double(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot write " + path);
  return file;
}

// ---------------------------------------------------------------- featurize

struct FeaturizeOpts {
  std::string dataset;
  std::string url;
  std::string out;
  uint32_t trigrams = 1000;
  bool lexical_only = false;
  ListFlags lists;
};

int run_featurize(const FeaturizeOpts& opt) {
  if (opt.dataset.empty() == opt.url.empty())
    throw UsageError("featurize needs exactly one of --dataset or --url");
  Featurizer fz = make_featurizer(opt.lists, opt.trigrams, opt.lexical_only);

  std::ofstream file;
  std::ostream& out = open_output(opt.out, file);
  std::string row;
  std::vector<double> features;
  auto emit = [&](const std::string& url, const uint8_t* label) {
    fz.featurize_into(url, features);
    row.clear();
    for (size_t i = 0; i < features.size(); ++i) {
      if (i > 0) row += ',';
      append_double(row, features[i]);
    }
    if (label) {
      row += ',';
      row += static_cast<char>('0' + *label);
    }
    row += '\n';
    out << row;
  };

  if (!opt.url.empty()) {
    emit(opt.url, nullptr);
  } else {
    LabeledDataset ds = load_dataset(opt.dataset);
    for (const LabeledRow& r : ds.rows) emit(r.url, &r.label);
  }
  out.flush();
  return 0;
}

// -------------------------------------------------------------------- train

struct TrainOpts {
  std::string dataset;
  std::string model;
  uint64_t seed = 0;
  uint32_t trees = 100;
  uint32_t max_depth = 20;
  uint32_t min_samples_split = 2;
  uint32_t min_samples_leaf = 1;
  uint32_t trigrams = 1000;
  bool lexical_only = false;
  uint32_t threads = 0;
  ListFlags lists;
};

ForestConfig forest_config(const TrainOpts& opt) {
  ForestConfig cfg;
  cfg.n_trees = opt.trees;
  cfg.max_depth = opt.max_depth;
  cfg.min_samples_split = opt.min_samples_split;
  cfg.min_samples_leaf = opt.min_samples_leaf;
  cfg.seed = opt.seed;
  cfg.n_threads = opt.threads;
  return cfg;
}

int run_train(const TrainOpts& opt) {
  LabeledDataset ds = load_dataset(opt.dataset);
  ClassSummary classes = class_summary(ds);
  Featurizer fz = make_featurizer(opt.lists, opt.trigrams, opt.lexical_only);

  auto start = std::chrono::steady_clock::now();
  TrainSet train = featurize_dataset(fz, ds);
  ForestModel model = fit_forest(train, forest_config(opt));
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  model.featurizer = fz.spec();
  size_t bytes = save_model(model, opt.model);

  std::cout << "rows: " << ds.rows.size() << " (benign " << classes.n_benign << ", malicious "
            << classes.n_malicious << ")\n"
            << "features: " << fz.feature_count() << "\n"
            << "trees: " << model.config.n_trees << "  max_depth: " << model.config.max_depth
            << "  seed: " << model.config.seed << "\n"
            << "train_time: " << std::fixed << std::setprecision(1) << elapsed << " s\n"
            << "model: " << opt.model << " (" << bytes << " bytes)\n";
  return 0;
}

// -------------------------------------------------------------------- sweep

struct SweepOpts {
  std::string dataset;
  std::string axis;
  std::vector<uint32_t> values;
  double test_fraction = 0.3;
  double threshold = 0.5;
  bool csv = false;
  TrainOpts train;  // forest + featurizer + list flags
};

struct SweepRow {
  uint32_t value;
  EvalReport report;
  size_t model_bytes;
};

int run_sweep(const SweepOpts& opt) {
  if (opt.values.size() < 2) throw UsageError("sweep needs at least 2 --values");
  LabeledDataset ds = load_dataset(opt.dataset);
  SplitResult split = stratified_split(ds, opt.test_fraction, opt.train.seed);

  std::vector<SweepRow> rows;
  auto evaluate_config = [&](uint32_t value, const Featurizer& fz, const ForestConfig& cfg) {
    TrainSet train = featurize_dataset(fz, split.train);
    TrainSet test = featurize_dataset(fz, split.test);
    ForestModel model = fit_forest(train, cfg);
    model.featurizer = fz.spec();
    rows.push_back({value, evaluate(model, test, opt.threshold), model_to_text(model).size()});
  };

  if (opt.axis == "max-depth") {
    for (uint32_t v : opt.values)
      if (v < 1) throw UsageError("max-depth values must be >= 1");
    Featurizer fz = make_featurizer(opt.train.lists, opt.train.trigrams, opt.train.lexical_only);
    TrainSet train = featurize_dataset(fz, split.train);
    TrainSet test = featurize_dataset(fz, split.test);
    for (uint32_t v : opt.values) {
      ForestConfig cfg = forest_config(opt.train);
      cfg.max_depth = v;
      ForestModel model = fit_forest(train, cfg);
      model.featurizer = fz.spec();
      rows.push_back({v, evaluate(model, test, opt.threshold), model_to_text(model).size()});
    }
  } else if (opt.axis == "trigrams") {
    for (uint32_t v : opt.values) {
      Featurizer fz = make_featurizer(opt.train.lists, v, v == 0);
      evaluate_config(v, fz, forest_config(opt.train));
    }
  } else {
    throw UsageError("unknown sweep axis `" + opt.axis + "` (expected max-depth or trigrams)");
  }

  if (opt.csv) {
    std::cout << "value,accuracy,fpr,fnr,auc,model_bytes\n";
    for (const SweepRow& r : rows) {
      std::cout << r.value << ',' << r.report.accuracy << ',' << r.report.fpr << ',' << r.report.fnr
                << ',' << r.report.auc << ',' << r.model_bytes << '\n';
    }
    return 0;
  }
  std::cout << "axis=" << opt.axis << "  trees=" << opt.train.trees
            << "  test_fraction=" << opt.test_fraction << "  seed=" << opt.train.seed
            << "  threshold=" << opt.threshold << "\n";
  std::cout << std::left << std::setw(8) << "value" << std::setw(10) << "accuracy" << std::setw(10)
            << "fpr" << std::setw(10) << "fnr" << std::setw(10) << "auc" << "model_bytes\n";
  std::cout << std::fixed << std::setprecision(4);
  for (const SweepRow& r : rows) {
    std::cout << std::left << std::setw(8) << r.value << std::setw(10) << r.report.accuracy
              << std::setw(10) << r.report.fpr << std::setw(10) << r.report.fnr << std::setw(10)
              << r.report.auc << r.model_bytes << '\n';
  }
  return 0;
}

// ----------------------------------------------------------------- evaluate

struct EvaluateOpts {
  std::string model;
  std::string test;
  std::string scores_file;
  double threshold = 0.5;
  bool csv = false;
  ListFlags lists;
};

int run_evaluate(const EvaluateOpts& opt) {
  EvalReport report;
  if (!opt.scores_file.empty()) {
    if (!opt.model.empty())
      throw UsageError("--scores-file evaluates an external classifier; drop --model");
    std::vector<double> scores;
    std::vector<uint8_t> labels;
    load_score_file(opt.scores_file, scores, labels);
    report = evaluate_scores(labels, scores, opt.threshold);
  } else {
    if (opt.model.empty() || opt.test.empty())
      throw UsageError("evaluate needs --model and --test (or --scores-file)");
    ForestModel model = load_model(opt.model);
    Featurizer fz = featurizer_for_model(model, opt.lists);
    LabeledDataset ds = load_dataset(opt.test);
    TrainSet test = featurize_dataset(fz, ds);
    report = evaluate(model, test, opt.threshold);
  }
  std::cout << (opt.csv ? render_report_csv(report) : render_report_text(report));
  return 0;
}

// ---------------------------------------------------------------------- gen

struct GenOpts {
  CorpusSpec spec;
  std::string out;
};

int run_gen(const GenOpts& opt) {
  LabeledDataset ds = generate_corpus(opt.spec);
  if (opt.out.empty() || opt.out == "-") {
    std::cout << dataset_to_csv(ds);
    return 0;
  }
  save_dataset(ds, opt.out);
  std::cout << "wrote " << ds.rows.size() << " rows (benign " << opt.spec.n_benign
            << ", malicious " << opt.spec.n_malicious << ") to " << opt.out << '\n';
  return 0;
}

// ------------------------------------------------------------------- select

struct SelectOpts {
  std::string model;
  std::string input;
  std::string output;
  double threshold = 0.5;
  unsigned jobs = 1;
  ListFlags lists;
};

int run_select(const SelectOpts& opt) {
  ForestModel model = load_model(opt.model);
  Featurizer fz = featurizer_for_model(model, opt.lists);
  Selector sel(std::move(model), std::move(fz), opt.threshold);

  std::ifstream in_file;
  std::istream* in = &std::cin;
  if (!opt.input.empty() && opt.input != "-") {
    in_file.open(opt.input, std::ios::binary);
    if (!in_file) throw DataError("cannot read " + opt.input);
    in = &in_file;
  }
  std::ofstream out_file;
  std::ostream& out = open_output(opt.output, out_file);

  StreamOptions stream;
  stream.jobs = std::max(1u, opt.jobs);
  run_select_stream(sel, *in, out, stream);
  out.flush();
  return 0;
}

// -------------------------------------------------------------------- serve

struct ServeOpts {
  std::string model;
  std::string bind = "127.0.0.1:8080";
  double threshold = 0.5;
  ListFlags lists;
};

int run_serve(const ServeOpts& opt) {
  size_t colon = opt.bind.rfind(':');
  if (colon == std::string::npos)
    throw UsageError("--bind expects host:port, got `" + opt.bind + "`");
  std::string host = opt.bind.substr(0, colon);
  int port = -1;
  const char* first = opt.bind.data() + colon + 1;
  const char* last = opt.bind.data() + opt.bind.size();
  auto [ptr, ec] = std::from_chars(first, last, port);
  if (ec != std::errc() || ptr != last || port < 0 || port > 65535)
    throw UsageError("--bind expects host:port, got `" + opt.bind + "`");

  ForestModel model = load_model(opt.model);
  Featurizer fz = featurizer_for_model(model, opt.lists);
  uint32_t digest = file_digest(opt.model);
  auto sel = std::make_shared<const Selector>(std::move(model), std::move(fz), opt.threshold);

  SelectorServer server(sel, digest);
  int bound = server.bind(host, port);
  if (bound < 0) throw UsageError("cannot bind " + opt.bind);
  std::cout << "listening on " << host << ':' << bound << std::endl;
  server.listen();
  return 0;
}

// -------------------------------------------------------------------- prune

struct PruneOpts {
  std::string dataset;
  double corr_threshold = 0.75;
  ListFlags lists;
};

int run_prune(const PruneOpts& opt) {
  LabeledDataset ds = load_dataset(opt.dataset);
  Featurizer fz = make_featurizer(opt.lists, 0, true);

  std::vector<std::vector<double>> columns(kLexicalFeatureCount);
  for (auto& col : columns) col.reserve(ds.rows.size());
  std::vector<double> features;
  for (size_t i = 0; i < ds.rows.size(); ++i) {
    try {
      fz.featurize_into(ds.rows[i].url, features);
    } catch (const Error& e) {
      throw DataError("row " + std::to_string(i + 1) + " (" + ds.rows[i].url + "): " + e.what());
    }
    for (size_t f = 0; f < columns.size(); ++f) columns[f].push_back(features[f]);
  }

  PruneMask mask = prune_features(columns, opt.corr_threshold);
  std::cout << render_prune_report(mask);
  return 0;
}

void add_forest_flags(CLI::App* cmd, TrainOpts& opt) {
  cmd->add_option("--seed", opt.seed, "Master RNG seed")->capture_default_str();
  cmd->add_option("--trees", opt.trees, "Number of trees")->capture_default_str();
  cmd->add_option("--max-depth", opt.max_depth, "Maximum tree depth (edges)")->capture_default_str();
  cmd->add_option("--min-samples-split", opt.min_samples_split,
                  "Minimum samples to split a node")->capture_default_str();
  cmd->add_option("--min-samples-leaf", opt.min_samples_leaf, "Minimum samples per leaf")
      ->capture_default_str();
  cmd->add_option("--trigrams", opt.trigrams, "Trigram bucket count (0 = lexical only)")
      ->capture_default_str();
  cmd->add_flag("--lexical-only", opt.lexical_only, "Use only the 23 lexical features");
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = auto)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"urlsift: lexical malicious-URL triage (featurize, train, evaluate, select)"};
  app.require_subcommand(1);

  FeaturizeOpts featurize_opts;
  CLI::App* featurize = app.add_subcommand("featurize", "Emit feature vectors as CSV rows");
  featurize->add_option("--dataset", featurize_opts.dataset, "Labeled CSV; label passes through");
  featurize->add_option("--url", featurize_opts.url, "Single URL instead of a dataset");
  featurize->add_option("--out", featurize_opts.out, "Output path (default stdout)");
  featurize->add_option("--trigrams", featurize_opts.trigrams, "Trigram bucket count")
      ->capture_default_str();
  featurize->add_flag("--lexical-only", featurize_opts.lexical_only,
                      "Use only the 23 lexical features");
  add_list_flags(featurize, featurize_opts.lists);

  TrainOpts train_opts;
  CLI::App* train = app.add_subcommand("train", "Train a random forest and save the model");
  train->add_option("--dataset", train_opts.dataset, "Labeled training CSV")->required();
  train->add_option("--model", train_opts.model, "Output model path")->required();
  add_forest_flags(train, train_opts);
  add_list_flags(train, train_opts.lists);

  SweepOpts sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a hyperparameter axis on a fixed split");
  sweep->add_option("--dataset", sweep_opts.dataset, "Labeled CSV (split internally)")->required();
  sweep->add_option("--axis", sweep_opts.axis, "max-depth or trigrams")->required();
  sweep->add_option("--values", sweep_opts.values, "Axis values (comma separated, at least 2)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--test-fraction", sweep_opts.test_fraction, "Held-out fraction")
      ->capture_default_str();
  sweep->add_option("--threshold", sweep_opts.threshold, "Classification threshold")
      ->capture_default_str();
  sweep->add_flag("--csv", sweep_opts.csv, "Machine-readable output");
  add_forest_flags(sweep, sweep_opts.train);
  add_list_flags(sweep, sweep_opts.train.lists);

  EvaluateOpts eval_opts;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score a model (or external scores) on a test set");
  evaluate->add_option("--model", eval_opts.model, "Model path");
  evaluate->add_option("--test", eval_opts.test, "Labeled test CSV");
  evaluate->add_option("--scores-file", eval_opts.scores_file,
                       "External `score,label` rows instead of a model");
  evaluate->add_option("--threshold", eval_opts.threshold, "Classification threshold")
      ->capture_default_str();
  evaluate->add_flag("--csv", eval_opts.csv, "Machine-readable output");
  add_list_flags(evaluate, eval_opts.lists);

  GenOpts gen_opts;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic labeled corpus");
  gen->add_option("--benign", gen_opts.spec.n_benign, "Benign row count")->required();
  gen->add_option("--malicious", gen_opts.spec.n_malicious, "Malicious row count")->required();
  gen->add_option("--seed", gen_opts.spec.seed, "Corpus seed")->capture_default_str();
  gen->add_option("--out", gen_opts.out, "Output CSV path (default stdout)");
  gen->add_option("--sub-depth-min", gen_opts.spec.sub_depth_min, "Malicious subdomain depth lower bound")
      ->capture_default_str();
  gen->add_option("--sub-depth-max", gen_opts.spec.sub_depth_max, "Malicious subdomain depth upper bound")
      ->capture_default_str();
  gen->add_option("--special-density", gen_opts.spec.special_char_density,
                  "Malicious path decoration rate")->capture_default_str();
  gen->add_option("--lookalike-rate", gen_opts.spec.lookalike_rate,
                  "Malicious brand-lookalike rate")->capture_default_str();
  gen->add_option("--suspicious-tld-rate", gen_opts.spec.suspicious_tld_rate,
                  "Malicious suspicious-TLD rate")->capture_default_str();

  SelectOpts select_opts;
  CLI::App* select = app.add_subcommand("select", "Stream URLs to JSON verdicts (one per line)");
  select->add_option("--model", select_opts.model, "Model path")->required();
  select->add_option("--input", select_opts.input, "Input path (default stdin)");
  select->add_option("--output", select_opts.output, "Output path (default stdout)");
  select->add_option("--threshold", select_opts.threshold, "Classification threshold")
      ->capture_default_str();
  select->add_option("--jobs", select_opts.jobs, "Parallel workers (output order unchanged)")
      ->capture_default_str();
  add_list_flags(select, select_opts.lists);

  ServeOpts serve_opts;
  CLI::App* serve = app.add_subcommand("serve", "Serve the selector over HTTP");
  serve->add_option("--model", serve_opts.model, "Model path")->required();
  serve->add_option("--bind", serve_opts.bind, "host:port (port 0 picks a free port)")
      ->capture_default_str();
  serve->add_option("--threshold", serve_opts.threshold, "Classification threshold")
      ->capture_default_str();
  add_list_flags(serve, serve_opts.lists);

  PruneOpts prune_opts;
  CLI::App* prune = app.add_subcommand("prune", "Report correlation-pruned lexical features");
  prune->add_option("--dataset", prune_opts.dataset, "Labeled CSV")->required();
  prune->add_option("--corr-threshold", prune_opts.corr_threshold,
                    "Absolute correlation above which the later feature drops")
      ->capture_default_str();
  add_list_flags(prune, prune_opts.lists);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (featurize->parsed()) return run_featurize(featurize_opts);
    if (train->parsed()) return run_train(train_opts);
    if (sweep->parsed()) return run_sweep(sweep_opts);
    if (evaluate->parsed()) return run_evaluate(eval_opts);
    if (gen->parsed()) return run_gen(gen_opts);
    if (select->parsed()) return run_select(select_opts);
    if (serve->parsed()) return run_serve(serve_opts);
    if (prune->parsed()) return run_prune(prune_opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
