#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace urlsift {

// Maximum accepted input size for a single URL.
inline constexpr size_t kMaxUrlBytes = 64 * 1024;

// Decomposed URL. Components are raw substrings of the input; nothing is
// percent-decoded. `host` is lowercased; `host_raw` keeps the original
// spelling so the decomposition can be reassembled byte-for-byte.
struct UrlParts {
  std::string raw;

  std::string scheme;    // without "://"
  std::string userinfo;  // text before the last '@' of the authority
  std::string host;      // lowercase
  std::string host_raw;  // as written
  std::optional<uint32_t> port;
  std::string port_text;  // port digits as written (may have leading zeros)
  std::string path;       // includes leading '/' when present
  std::string params;     // after the first ';' of the final path segment
  std::string query;      // after '?', before '#'
  std::string fragment;   // after '#'

  // Separator presence, recorded so reassembly is exact even for empty parts.
  bool has_scheme = false;    // "://" was present
  bool has_userinfo = false;  // '@' was present in the authority
  bool has_port = false;      // ':' before a digit-only tail
  bool has_params = false;
  bool has_query = false;
  bool has_fragment = false;

  // Inverse of parse_url; equals `raw` for every parse result.
  std::string reassemble() const;
};

// Splits a URL string into components. Total over arbitrary bytes up to
// kMaxUrlBytes: a string with no scheme is read as host[/path...], and a
// string with no scheme and no '/' is host-only.
// Throws DataError on empty input or input over the size cap.
UrlParts parse_url(std::string_view raw);

}  // namespace urlsift
