#include "urlsift/host_split.hpp"

namespace urlsift {

namespace {

bool is_ipv4(std::string_view host) {
  int labels = 0;
  size_t pos = 0;
  while (true) {
    size_t dot = host.find('.', pos);
    size_t count = dot == std::string_view::npos ? std::string_view::npos : dot - pos;
    std::string_view label = host.substr(pos, count);
    if (label.empty() || label.size() > 5) return false;
    uint32_t value = 0;
    for (char c : label) {
      if (c < '0' || c > '9') return false;
      value = value * 10 + static_cast<uint32_t>(c - '0');
    }
    if (value > 255) return false;
    ++labels;
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return labels == 4;
}

}  // namespace

HostSplit split_host(std::string_view host, const SuffixList& suffixes) {
  HostSplit out;
  if (host.empty()) return out;

  if (host.front() == '[' || is_ipv4(host)) {
    out.is_ip = true;
    return out;
  }

  // Candidate suffixes start after each dot; the leftmost dot gives the
  // longest candidate, so the first hit is the longest match.
  size_t suffix_start = std::string_view::npos;
  for (size_t dot = host.find('.'); dot != std::string_view::npos; dot = host.find('.', dot + 1)) {
    if (suffixes.contains(host.substr(dot + 1))) {
      suffix_start = dot + 1;
      break;
    }
  }
  if (suffix_start == std::string_view::npos) {
    size_t last_dot = host.rfind('.');
    if (last_dot == std::string_view::npos) {
      out.public_suffix.assign(host);
      return out;
    }
    suffix_start = last_dot + 1;
  }

  out.public_suffix.assign(host.substr(suffix_start));
  std::string_view left = host.substr(0, suffix_start - 1);
  size_t pd_dot = left.rfind('.');
  if (pd_dot == std::string_view::npos) {
    out.primary_domain.assign(left);
  } else {
    out.primary_domain.assign(left.substr(pd_dot + 1));
    out.subdomain.assign(left.substr(0, pd_dot));
  }
  return out;
}

}  // namespace urlsift
