#pragma once

#include <string>
#include <string_view>

#include "urlsift/word_list.hpp"

namespace urlsift {

struct HostSplit {
  std::string subdomain;       // labels left of the primary domain, dot-joined
  std::string primary_domain;  // single registrable label
  std::string public_suffix;   // longest suffix-list match
  bool is_ip = false;          // dotted-quad IPv4 or bracketed IPv6 literal
};

// Splits a lowercased host into subdomain / primary domain / public suffix
// by longest suffix match. IP literals yield all-empty parts with is_ip set.
// An unmatched trailing label acts as its own suffix (the list's implicit
// catch-all rule), and the suffix never consumes the whole of a multi-label
// host, so those hosts always keep a primary domain.
HostSplit split_host(std::string_view host, const SuffixList& suffixes);

}  // namespace urlsift
