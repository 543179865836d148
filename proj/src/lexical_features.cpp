#include "urlsift/lexical_features.hpp"

#include <algorithm>
#include <string_view>

namespace urlsift {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_upper(c) || is_lower(c); }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }

double count_if_chars(std::string_view s, bool (*pred)(char)) {
  return static_cast<double>(std::count_if(s.begin(), s.end(), pred));
}

double count_char(std::string_view s, char c) {
  return static_cast<double>(std::count(s.begin(), s.end(), c));
}

// Directory segments: non-empty '/'-separated path segments, minus the final
// one when the path does not end in '/' (that one is conventionally a file).
template <typename Fn>
void for_each_dir_segment(std::string_view path, Fn&& fn) {
  size_t pos = 0;
  while (pos <= path.size()) {
    size_t slash = path.find('/', pos);
    bool last = slash == std::string_view::npos;
    std::string_view seg = last ? path.substr(pos) : path.substr(pos, slash - pos);
    if (!seg.empty() && !last) fn(seg);
    if (last) break;
    pos = slash + 1;
  }
}

}  // namespace

const std::array<LexicalSchemaEntry, kLexicalFeatureCount>& lexical_schema() {
  static const std::array<LexicalSchemaEntry, kLexicalFeatureCount> schema = {{
      {0, "url_length", FeatureKind::length},
      {1, "url_special_count", FeatureKind::count},
      {2, "digit_letter_ratio", FeatureKind::ratio},
      {3, "tld_suspicious", FeatureKind::boolean},
      {4, "pd_contains_ip", FeatureKind::boolean},
      {5, "pd_length", FeatureKind::length},
      {6, "pd_digit_count", FeatureKind::count},
      {7, "pd_non_alnum_count", FeatureKind::count},
      {8, "pd_hyphen_count", FeatureKind::count},
      {9, "pd_at_count", FeatureKind::count},
      {10, "pd_in_top_domains", FeatureKind::boolean},
      {11, "sub_dot_count", FeatureKind::count},
      {12, "sub_count", FeatureKind::count},
      {13, "path_slash_count", FeatureKind::count},
      {14, "path_subdir_count", FeatureKind::count},
      {15, "path_has_pct20", FeatureKind::boolean},
      {16, "path_has_upper_dir", FeatureKind::boolean},
      {17, "path_has_single_char_dir", FeatureKind::boolean},
      {18, "path_special_count", FeatureKind::count},
      {19, "path_zero_count", FeatureKind::count},
      {20, "path_upper_lower_ratio", FeatureKind::ratio},
      {21, "params_length", FeatureKind::length},
      {22, "query_count", FeatureKind::count},
  }};
  return schema;
}

LexicalConfig LexicalConfig::builtin() {
  return LexicalConfig{builtin_suspicious_tlds(), builtin_top_domains()};
}

LexicalVector extract_lexical(const UrlParts& parts, const HostSplit& host, const LexicalConfig& cfg) {
  LexicalVector f{};
  const std::string_view raw = parts.raw;
  const std::string_view pd = host.primary_domain;
  const std::string_view sub = host.subdomain;
  const std::string_view path = parts.path;

  f[0] = static_cast<double>(raw.size());
  f[1] = static_cast<double>(std::count_if(raw.begin(), raw.end(), [](char c) {
    return c == ';' || c == '_' || c == '?' || c == '=' || c == '&';
  }));
  f[2] = count_if_chars(raw, is_digit) / std::max(1.0, count_if_chars(raw, is_alpha));
  f[3] = cfg.suspicious_tlds.contains(host.public_suffix) ? 1.0 : 0.0;
  f[4] = host.is_ip ? 1.0 : 0.0;
  f[5] = static_cast<double>(pd.size());
  f[6] = count_if_chars(pd, is_digit);
  f[7] = count_if_chars(pd, [](char c) { return !is_alnum(c); });
  f[8] = count_char(pd, '-');
  // '@' over the userinfo+host authority text, separator included.
  f[9] = count_char(parts.userinfo, '@') + (parts.has_userinfo ? 1.0 : 0.0) +
         count_char(parts.host_raw, '@');
  f[10] = cfg.top_domains.contains(pd) ? 1.0 : 0.0;
  f[11] = count_char(sub, '.');
  if (!sub.empty()) {
    double labels = 0;
    size_t pos = 0;
    while (pos <= sub.size()) {
      size_t dot = sub.find('.', pos);
      size_t count = dot == std::string_view::npos ? std::string_view::npos : dot - pos;
      if (!sub.substr(pos, count).empty()) ++labels;
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
    f[12] = labels;
  }
  f[13] = count_char(path, '/');
  double subdirs = 0;
  bool upper_dir = false;
  bool single_char_dir = false;
  for_each_dir_segment(path, [&](std::string_view seg) {
    ++subdirs;
    if (seg.size() == 1) single_char_dir = true;
    double alpha = count_if_chars(seg, is_alpha);
    if (alpha > 0 && count_if_chars(seg, is_upper) == alpha) upper_dir = true;
  });
  f[14] = subdirs;
  f[15] = path.find("%20") != std::string_view::npos ? 1.0 : 0.0;
  f[16] = upper_dir ? 1.0 : 0.0;
  f[17] = single_char_dir ? 1.0 : 0.0;
  f[18] = count_if_chars(path, [](char c) { return !is_alnum(c) && c != '/'; });
  f[19] = count_char(path, '0');
  f[20] = count_if_chars(path, is_upper) / std::max(1.0, count_if_chars(path, is_lower));
  f[21] = static_cast<double>(parts.params.size());
  f[22] = parts.query.empty() ? 0.0 : 1.0 + count_char(parts.query, '&');
  return f;
}

}  // namespace urlsift
