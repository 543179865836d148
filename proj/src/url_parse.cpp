#include "urlsift/url_parse.hpp"

#include <algorithm>
#include <cctype>

#include "urlsift/errors.hpp"

namespace urlsift {

namespace {

bool is_scheme_token(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '+' || c == '-' || c == '.';
  });
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

}  // namespace

std::string UrlParts::reassemble() const {
  std::string out;
  out.reserve(raw.size());
  if (has_scheme) {
    out += scheme;
    out += "://";
  }
  if (has_userinfo) {
    out += userinfo;
    out += '@';
  }
  out += host_raw;
  if (has_port) {
    out += ':';
    out += port_text;
  }
  out += path;
  if (has_params) {
    out += ';';
    out += params;
  }
  if (has_query) {
    out += '?';
    out += query;
  }
  if (has_fragment) {
    out += '#';
    out += fragment;
  }
  return out;
}

UrlParts parse_url(std::string_view raw) {
  if (raw.empty()) throw DataError("empty input: URL string has no bytes");
  if (raw.size() > kMaxUrlBytes)
    throw DataError("input too long: URL exceeds " + std::to_string(kMaxUrlBytes) + " bytes");

  UrlParts p;
  p.raw.assign(raw);

  size_t pos = 0;

  // scheme:// — recognized only in the full "://" form; a ':' without "//"
  // (mailto:, host:port) is left for the authority/path rules below.
  size_t colon = raw.find(':');
  if (colon != std::string_view::npos && raw.compare(colon, 3, "://") == 0 &&
      is_scheme_token(raw.substr(0, colon))) {
    p.has_scheme = true;
    p.scheme.assign(raw.substr(0, colon));
    pos = colon + 3;
  }

  // Authority runs to the first of '/', '?', '#'.
  size_t auth_end = raw.find_first_of("/?#", pos);
  if (auth_end == std::string_view::npos) auth_end = raw.size();
  std::string_view authority = raw.substr(pos, auth_end - pos);

  // userinfo@ — split at the last '@' so a crafted userinfo cannot pose as
  // the host.
  std::string_view hostport = authority;
  size_t at = authority.rfind('@');
  if (at != std::string_view::npos) {
    p.has_userinfo = true;
    p.userinfo.assign(authority.substr(0, at));
    hostport = authority.substr(at + 1);
  }

  // :port — digits only, at most 9 of them, and past any ']' of a bracketed
  // IPv6 literal. Anything else stays part of the host.
  std::string_view host_sv = hostport;
  size_t last_colon = hostport.rfind(':');
  if (last_colon != std::string_view::npos) {
    size_t bracket = hostport.rfind(']');
    bool past_bracket = bracket == std::string_view::npos || last_colon > bracket;
    std::string_view digits = hostport.substr(last_colon + 1);
    if (past_bracket && all_digits(digits) && digits.size() <= 9) {
      p.has_port = true;
      p.port_text.assign(digits);
      uint32_t value = 0;
      for (char c : digits) value = value * 10 + static_cast<uint32_t>(c - '0');
      p.port = value;
      host_sv = hostport.substr(0, last_colon);
    }
  }
  p.host_raw.assign(host_sv);
  p.host = to_lower(host_sv);

  // path[;params][?query][#fragment]
  std::string_view rest = raw.substr(auth_end);
  size_t hash = rest.find('#');
  if (hash != std::string_view::npos) {
    p.has_fragment = true;
    p.fragment.assign(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  size_t qmark = rest.find('?');
  if (qmark != std::string_view::npos) {
    p.has_query = true;
    p.query.assign(rest.substr(qmark + 1));
    rest = rest.substr(0, qmark);
  }
  // params live after the first ';' of the final path segment only
  size_t last_slash = rest.rfind('/');
  size_t seg_start = last_slash == std::string_view::npos ? 0 : last_slash + 1;
  size_t semi = rest.find(';', seg_start);
  if (semi != std::string_view::npos) {
    p.has_params = true;
    p.params.assign(rest.substr(semi + 1));
    rest = rest.substr(0, semi);
  }
  p.path.assign(rest);

  return p;
}

}  // namespace urlsift
