#include "urlsift/word_list.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "urlsift/builtin_data.hpp"
#include "urlsift/errors.hpp"
#include "urlsift/trigram_features.hpp"

namespace urlsift {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> read_list_lines(std::string_view text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    size_t count = nl == std::string_view::npos ? std::string_view::npos : nl - pos;
    std::string_view line = trim(text.substr(pos, count));
    if (!line.empty() && line.front() != '#') {
      std::string entry(line);
      for (char& c : entry)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      out.push_back(std::move(entry));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string> read_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("file not found: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_list_lines(buf.str());
}

uint32_t list_digest(std::vector<std::string> entries) {
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  std::string canon;
  for (const auto& e : entries) {
    canon += e;
    canon += '\n';
  }
  return murmur3_32(canon, 0);
}

WordList::WordList(std::vector<std::string> entries) : entries_(std::move(entries)) {
  set_.reserve(entries_.size());
  for (const auto& e : entries_) set_.insert(e);
}

WordList WordList::from_text(std::string_view text) { return WordList(read_list_lines(text)); }

WordList WordList::from_file(const std::string& path) { return WordList(read_list_file(path)); }

uint32_t WordList::digest() const { return list_digest(entries_); }

const WordList& builtin_suffix_list() {
  static const WordList list = WordList::from_text(builtin_data::kPublicSuffixSnapshot);
  return list;
}

const WordList& builtin_suspicious_tlds() {
  static const WordList list = WordList::from_text(builtin_data::kSuspiciousTlds);
  return list;
}

const WordList& builtin_top_domains() {
  static const WordList list = WordList::from_text(builtin_data::kTopDomains);
  return list;
}

}  // namespace urlsift
