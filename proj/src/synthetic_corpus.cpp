#include "urlsift/synthetic_corpus.hpp"

#include <initializer_list>
#include <span>
#include <string_view>

#include "urlsift/errors.hpp"
#include "urlsift/rng.hpp"
#include "urlsift/word_list.hpp"

namespace urlsift {

namespace {

// Neutral vocabulary shared by both classes; the class contrast lives in
// structure (subdomain depth, decoration, TLD, primary-domain shape), not in
// the words themselves.
constexpr std::string_view kWords[] = {
    "home",    "index",   "about",   "blog",   "news",    "image",   "style",
    "script",  "api",     "data",    "files",  "docs",    "photo",   "video",
    "music",   "store",   "shop",    "cart",   "item",    "page",    "post",
    "view",    "edit",    "user",    "profile", "search", "tag",     "list",
    "feed",    "archive", "category", "product", "article", "report", "static",
    "assets",  "media",   "content", "portal", "main",    "info",    "help",
    "support", "contact", "team",    "press",  "jobs",    "events",  "forum",
    "wiki",    "share",   "map",     "mail",   "account", "service", "update",
    "center",  "public",  "web",     "host",   "cloud",   "zone",    "lab",
};

constexpr std::string_view kSubLabels[] = {"mail", "cdn", "en", "us", "eu", "de", "m", "app"};

constexpr std::string_view kCleanTlds[] = {"com", "net", "org", "io",    "co",
                                           "app", "dev", "info", "me",   "co.uk"};
constexpr double kCleanTldWeights[] = {55, 10, 10, 6, 4, 4, 3, 3, 2, 3};

constexpr std::string_view kSuspiciousTlds[] = {"tk",  "ml",   "ga",   "cf",  "gq",
                                                "xyz", "top",  "work", "click", "icu",
                                                "buzz", "loan", "win"};

constexpr std::string_view kExtensions[] = {"html", "php", "htm", "aspx", "jpg", "png", "pdf"};

constexpr std::string_view kQueryKeys[] = {"id", "q", "page", "ref", "lang", "sort"};

std::string_view pick(SplitMix64& rng, std::span<const std::string_view> pool) {
  return pool[rng.bounded(pool.size())];
}

size_t pick_weighted(SplitMix64& rng, std::span<const double> weights) {
  double total = 0;
  for (double w : weights) total += w;
  double r = rng.uniform() * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    r -= weights[i];
    if (r < 0) return i;
  }
  return weights.size() - 1;
}

bool chance(SplitMix64& rng, double p) { return rng.uniform() < p; }

char digit_char(SplitMix64& rng, double zero_p) {
  if (chance(rng, zero_p)) return '0';
  return static_cast<char>('1' + rng.bounded(9));
}

void append_digits(std::string& out, SplitMix64& rng, size_t count, double zero_p) {
  for (size_t i = 0; i < count; ++i) out += digit_char(rng, zero_p);
}

std::string_view clean_tld(SplitMix64& rng) {
  return kCleanTlds[pick_weighted(rng, kCleanTldWeights)];
}

void append_query(std::string& out, SplitMix64& rng) {
  out += '?';
  size_t n = 1 + rng.bounded(2);
  for (size_t i = 0; i < n; ++i) {
    if (i > 0) out += '&';
    out += pick(rng, kQueryKeys);
    out += '=';
    size_t len = 1 + rng.bounded(5);
    for (size_t j = 0; j < len; ++j) {
      if (chance(rng, 0.3))
        out += digit_char(rng, 0.1);
      else
        out += static_cast<char>('a' + rng.bounded(26));
    }
  }
}

void append_scheme(std::string& out, SplitMix64& rng) {
  out += chance(rng, 0.65) ? "https://" : "http://";
}

// Single-character brand edits: duplication, transposition, digit-for-letter
// substitution, insertion, deletion. Digit substitution is the most common
// real-world form, so it gets the heaviest weight. The result is never the
// brand itself.
std::string lookalike(SplitMix64& rng, std::string_view brand) {
  std::string pd(brand);
  static constexpr double kEditWeights[] = {0.15, 0.15, 0.40, 0.15, 0.15};
  switch (pick_weighted(rng, kEditWeights)) {
    case 0: {  // duplicate a letter
      size_t i = rng.bounded(pd.size());
      pd.insert(pd.begin() + static_cast<long>(i), pd[i]);
      break;
    }
    case 1: {  // transpose adjacent letters
      if (pd.size() >= 2) {
        size_t i = rng.bounded(pd.size() - 1);
        if (pd[i] == pd[i + 1]) i = (i + 1) % (pd.size() - 1);
        std::swap(pd[i], pd[i + 1]);
        if (std::string_view(pd) == brand) pd.insert(pd.begin(), pd[0]);
      } else {
        pd += pd;
      }
      break;
    }
    case 2: {  // swap a letter for a look-alike digit
      bool done = false;
      size_t start = rng.bounded(pd.size());
      for (size_t k = 0; k < pd.size() && !done; ++k) {
        char& c = pd[(start + k) % pd.size()];
        switch (c) {
          case 'o': c = '0'; done = true; break;
          case 'i': case 'l': c = '1'; done = true; break;
          case 'e': c = '3'; done = true; break;
          case 'a': c = '4'; done = true; break;
          case 's': c = '5'; done = true; break;
          default: break;
        }
      }
      if (!done) pd.insert(pd.begin() + static_cast<long>(start), pd[start]);
      break;
    }
    case 3: {  // insert a random letter
      size_t i = rng.bounded(pd.size() + 1);
      pd.insert(pd.begin() + static_cast<long>(i), static_cast<char>('a' + rng.bounded(26)));
      break;
    }
    default: {  // delete a letter (guarding very short brands)
      if (pd.size() > 4) {
        pd.erase(pd.begin() + static_cast<long>(rng.bounded(pd.size())));
      } else {
        pd.insert(pd.begin(), pd[0]);
      }
      break;
    }
  }
  return pd;
}

void append_path_segment(std::string& out, SplitMix64& rng, double decorate_p, bool malicious) {
  out += '/';
  if (!chance(rng, decorate_p)) {
    out += pick(rng, kWords);
    return;
  }
  if (!malicious) {  // benign decoration is a plain hyphenated pair
    out += pick(rng, kWords);
    out += '-';
    out += pick(rng, kWords);
    return;
  }
  switch (rng.bounded(5)) {
    case 0:
      out += pick(rng, kWords);
      out += '_';
      out += pick(rng, kWords);
      break;
    case 1:
      out += pick(rng, kWords);
      out += '-';
      out += pick(rng, kWords);
      break;
    case 2:
      out += pick(rng, kWords);
      out += '=';
      append_digits(out, rng, 1 + rng.bounded(3), 0.3);
      break;
    case 3:
      out += pick(rng, kWords);
      out += "%20";
      out += pick(rng, kWords);
      break;
    default:
      out += '~';
      out += pick(rng, kWords);
      break;
  }
}

void validate(const CorpusSpec& spec) {
  if (spec.n_benign < 1 || spec.n_malicious < 1)
    throw DataError("invalid corpus spec: class counts must be at least 1");
  if (spec.sub_depth_min > spec.sub_depth_max || spec.sub_depth_max > 10)
    throw DataError("invalid corpus spec: bad subdomain depth range");
  for (double rate : {spec.special_char_density, spec.lookalike_rate, spec.suspicious_tld_rate}) {
    if (rate < 0.0 || rate > 1.0)
      throw DataError("invalid corpus spec: rates must lie in [0,1]");
  }
}

}  // namespace

std::string benign_url(const CorpusSpec& spec, uint64_t index) {
  SplitMix64 rng(derive_seed(spec.seed, index * 2));
  std::string url;
  url.reserve(64);
  append_scheme(url, rng);

  // 0-2 subdomain levels, mostly none or www
  static constexpr double kDepthWeights[] = {0.35, 0.50, 0.15};
  size_t depth = pick_weighted(rng, kDepthWeights);
  for (size_t i = 0; i < depth; ++i) {
    url += (i == 0 && chance(rng, 0.7)) ? std::string_view("www") : pick(rng, kSubLabels);
    url += '.';
  }

  // Primary domain: mostly a whitelisted brand, else a short generic name
  const auto& brands = builtin_top_domains().entries();
  if (chance(rng, 0.55)) {
    url += brands[rng.bounded(brands.size())];
  } else {
    url += pick(rng, kWords);
    if (chance(rng, 0.35)) url += pick(rng, kWords);
    if (chance(rng, 0.03)) append_digits(url, rng, 2, 0.1);
  }
  url += '.';
  url += clean_tld(rng);
  if (chance(rng, 0.01)) url += ":8080";

  static constexpr double kSegWeights[] = {0.20, 0.30, 0.30, 0.20};
  size_t n_seg = pick_weighted(rng, kSegWeights);
  for (size_t i = 0; i < n_seg; ++i) {
    if (i + 1 == n_seg && chance(rng, 0.15)) {
      url += '/';
      append_digits(url, rng, 1 + rng.bounded(4), 0.08);
    } else {
      append_path_segment(url, rng, 0.04, false);
    }
  }
  if (n_seg > 0 && chance(rng, 0.35)) {
    url += '.';
    url += pick(rng, kExtensions);
  } else if (n_seg > 0 && chance(rng, 0.3)) {
    url += '/';
  } else if (n_seg == 0 && chance(rng, 0.5)) {
    url += '/';
  }
  if (chance(rng, 0.3)) append_query(url, rng);
  return url;
}

std::string malicious_url(const CorpusSpec& spec, uint64_t index) {
  SplitMix64 rng(derive_seed(spec.seed, index * 2 + 1));
  std::string url;
  url.reserve(96);
  append_scheme(url, rng);

  // Several subdomain levels, geometric over the range
  size_t span = spec.sub_depth_max - spec.sub_depth_min + 1;
  size_t depth = spec.sub_depth_min;
  for (size_t i = 1; i < span && chance(rng, 0.80); ++i) ++depth;
  for (size_t i = 0; i < depth; ++i) {
    url += (i == 0 && chance(rng, 0.3)) ? std::string_view("www") : pick(rng, kWords);
    url += '.';
  }

  // Primary domain: either a near-miss of a whitelisted brand, or a longer
  // generic compound
  const auto& brands = builtin_top_domains().entries();
  if (chance(rng, spec.lookalike_rate)) {
    std::string_view brand = brands[rng.bounded(brands.size())];
    if (chance(rng, 0.7)) {
      url += lookalike(rng, brand);
    } else {
      url += brand;
      url += '-';
      url += pick(rng, kWords);
    }
  } else {
    url += pick(rng, kWords);
    std::string_view join = chance(rng, 0.3) ? "-" : "";
    url += join;
    url += pick(rng, kWords);
    if (chance(rng, 0.45)) {
      url += join;
      url += pick(rng, kWords);
    }
    if (chance(rng, 0.40)) append_digits(url, rng, 1 + rng.bounded(3), 0.45);
  }
  url += '.';
  url += chance(rng, spec.suspicious_tld_rate) ? pick(rng, kSuspiciousTlds) : clean_tld(rng);

  static constexpr double kSegWeights[] = {0.03, 0.15, 0.25, 0.27, 0.18, 0.12};
  size_t n_seg = pick_weighted(rng, kSegWeights);
  bool zero_segment = chance(rng, 0.45);
  for (size_t i = 0; i < n_seg; ++i) {
    if (zero_segment && i + 1 == n_seg) {
      url += '/';
      append_digits(url, rng, 2 + rng.bounded(4), 0.5);
    } else {
      append_path_segment(url, rng, spec.special_char_density, true);
    }
  }
  if (n_seg > 0 && chance(rng, 0.35)) {
    url += '.';
    url += pick(rng, kExtensions);
  } else if (n_seg > 0 && chance(rng, 0.3)) {
    url += '/';
  } else if (n_seg == 0) {
    url += '/';
  }
  if (chance(rng, 0.3)) append_query(url, rng);
  return url;
}

LabeledDataset generate_corpus(const CorpusSpec& spec) {
  validate(spec);
  LabeledDataset ds;
  ds.rows.reserve(spec.n_benign + spec.n_malicious);
  for (uint64_t i = 0; i < spec.n_benign; ++i)
    ds.rows.push_back({benign_url(spec, i), 0, ""});
  for (uint64_t i = 0; i < spec.n_malicious; ++i)
    ds.rows.push_back({malicious_url(spec, i), 1, ""});
  ds.report.rows_loaded = ds.rows.size();
  return ds;
}

}  // namespace urlsift
