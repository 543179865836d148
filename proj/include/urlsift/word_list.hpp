#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace urlsift {

// Immutable lowercase word list (suffixes, TLDs, domain labels) loaded from
// the newline-delimited config format: one entry per line, '#' comments,
// UTF-8. Entries are normalized to lowercase on load.
class WordList {
 public:
  WordList() = default;
  explicit WordList(std::vector<std::string> entries);

  static WordList from_text(std::string_view text);
  static WordList from_file(const std::string& path);

  bool contains(std::string_view entry) const {
    return set_.count(std::string(entry)) > 0;
  }
  size_t size() const { return entries_.size(); }
  const std::vector<std::string>& entries() const { return entries_; }

  // murmur3_32(seed 0) over the canonicalized bytes: entries sorted,
  // deduplicated, newline-joined. Pinned in model files to catch drift
  // between training-time and serving-time lists.
  uint32_t digest() const;

 private:
  std::unordered_set<std::string> set_;
  std::vector<std::string> entries_;
};

// The spec's suffix-list role; structurally a plain word list.
using SuffixList = WordList;

std::vector<std::string> read_list_lines(std::string_view text);
std::vector<std::string> read_list_file(const std::string& path);
uint32_t list_digest(std::vector<std::string> entries);

// Embedded snapshots (see data/*.txt and builtin_data.hpp).
const WordList& builtin_suffix_list();
const WordList& builtin_suspicious_tlds();
const WordList& builtin_top_domains();

}  // namespace urlsift
