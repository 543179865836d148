#include "urlsift/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "urlsift/errors.hpp"
#include "urlsift/rng.hpp"

namespace urlsift {

namespace {

// Minimal RFC-4180 field splitter for a single line (no embedded newlines;
// URLs cannot contain raw newlines). Returns false on unbalanced quotes.
bool split_csv_line(const std::string& line, std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool in_quotes = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (in_quotes) return false;
  fields.push_back(std::move(cur));
  return true;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string lower(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

std::optional<uint8_t> parse_label(const std::string& s) {
  std::string l = lower(s);
  if (l == "0" || l == "benign") return 0;
  if (l == "1" || l == "malicious") return 1;
  return std::nullopt;
}

}  // namespace

LabeledDataset parse_dataset_csv(const std::string& text) {
  LabeledDataset ds;
  std::istringstream in(text);
  std::string line;

  if (!std::getline(in, line)) throw DataError("empty dataset: file has no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  if (!split_csv_line(line, header) || header.size() < 2 || header.size() > 3 ||
      lower(header[0]) != "label" || lower(header[1]) != "url" ||
      (header.size() == 3 && lower(header[2]) != "source")) {
    throw DataError("header mismatch: expected `label,url[,source]`, got `" + line + "`");
  }

  std::unordered_set<std::string> seen;
  std::vector<std::string> fields;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!split_csv_line(line, fields) || fields.size() < 2 || fields.size() > 3) {
      ++ds.report.rows_skipped;
      continue;
    }
    auto label = parse_label(fields[0]);
    if (!label || fields[1].empty()) {
      ++ds.report.rows_skipped;
      continue;
    }
    LabeledRow row;
    row.label = *label;
    row.url = fields[1];
    if (fields.size() == 3) row.source = fields[2];
    if (!seen.insert(row.url).second) ++ds.report.duplicate_urls;
    ds.rows.push_back(std::move(row));
  }
  ds.report.rows_loaded = ds.rows.size();
  if (ds.rows.empty()) throw DataError("empty dataset: no valid rows");
  return ds;
}

LabeledDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("file not found: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_csv(buf.str());
}

std::string dataset_to_csv(const LabeledDataset& ds) {
  bool any_source = std::any_of(ds.rows.begin(), ds.rows.end(),
                                [](const LabeledRow& r) { return !r.source.empty(); });
  std::string out = any_source ? "label,url,source\n" : "label,url\n";
  for (const auto& row : ds.rows) {
    out += row.label ? '1' : '0';
    out += ',';
    out += csv_escape(row.url);
    if (any_source) {
      out += ',';
      out += csv_escape(row.source);
    }
    out += '\n';
  }
  return out;
}

void save_dataset(const LabeledDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write: " + path);
  out << dataset_to_csv(ds);
}

ClassSummary class_summary(const LabeledDataset& ds) {
  ClassSummary s;
  for (const auto& row : ds.rows) {
    if (row.label) ++s.n_malicious;
    else ++s.n_benign;
  }
  size_t total = s.n_benign + s.n_malicious;
  if (total > 0) s.benign_fraction = static_cast<double>(s.n_benign) / static_cast<double>(total);
  return s;
}

SplitResult stratified_split(const LabeledDataset& ds, double test_fraction, uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw DataError("invalid test fraction: must be in (0,1)");

  std::vector<size_t> by_class[2];
  for (size_t i = 0; i < ds.rows.size(); ++i) by_class[ds.rows[i].label].push_back(i);
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2)
      throw DataError(std::string("class too small: ") + (c ? "malicious" : "benign") +
                      " has fewer than 2 rows");
  }

  SplitResult out;
  for (int c = 0; c < 2; ++c) {
    SplitMix64 rng(derive_seed(seed, static_cast<uint64_t>(c)));
    auto& idx = by_class[c];
    rng.shuffle(idx);
    size_t n_test = static_cast<size_t>(
        std::llround(static_cast<double>(idx.size()) * test_fraction));
    for (size_t k = 0; k < idx.size(); ++k) {
      (k < n_test ? out.test : out.train).rows.push_back(ds.rows[idx[k]]);
    }
  }
  out.train.report.rows_loaded = out.train.rows.size();
  out.test.report.rows_loaded = out.test.rows.size();
  return out;
}

LabeledDataset downsample_to_fraction(const LabeledDataset& ds, double benign_fraction, uint64_t seed) {
  if (!(benign_fraction > 0.0 && benign_fraction < 1.0))
    throw DataError("invalid benign fraction: must be in (0,1)");
  std::vector<size_t> by_class[2];
  for (size_t i = 0; i < ds.rows.size(); ++i) by_class[ds.rows[i].label].push_back(i);
  double nb = static_cast<double>(by_class[0].size());
  double nm = static_cast<double>(by_class[1].size());
  // Keep whichever class is over-represented down to the target ratio.
  size_t keep_b = by_class[0].size();
  size_t keep_m = by_class[1].size();
  if (nb * (1.0 - benign_fraction) > nm * benign_fraction) {
    keep_b = static_cast<size_t>(std::llround(nm * benign_fraction / (1.0 - benign_fraction)));
  } else {
    keep_m = static_cast<size_t>(std::llround(nb * (1.0 - benign_fraction) / benign_fraction));
  }
  size_t keep[2] = {keep_b, keep_m};

  LabeledDataset out;
  std::vector<size_t> chosen;
  for (int c = 0; c < 2; ++c) {
    SplitMix64 rng(derive_seed(seed, 16 + static_cast<uint64_t>(c)));
    auto idx = by_class[c];
    rng.shuffle(idx);
    idx.resize(std::min(keep[c], idx.size()));
    chosen.insert(chosen.end(), idx.begin(), idx.end());
  }
  std::sort(chosen.begin(), chosen.end());  // preserve original row order
  for (size_t i : chosen) out.rows.push_back(ds.rows[i]);
  out.report.rows_loaded = out.rows.size();
  return out;
}

}  // namespace urlsift
