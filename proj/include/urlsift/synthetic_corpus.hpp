#pragma once

#include <cstdint>
#include <string>

#include "urlsift/dataset.hpp"

namespace urlsift {

// Knobs control malicious-pattern intensity only; the benign recipe is
// fixed. Defaults are tuned so the two populations overlap on every single
// feature but separate jointly.
struct CorpusSpec {
  size_t n_benign = 0;
  size_t n_malicious = 0;
  uint64_t seed = 0;

  uint32_t sub_depth_min = 1;          // malicious subdomain levels, inclusive range
  uint32_t sub_depth_max = 6;
  double special_char_density = 0.45;  // per-segment chance of special-char decoration
  double lookalike_rate = 0.35;        // fraction of malicious pds that are edited brand names
  double suspicious_tld_rate = 0.40;   // fraction of malicious hosts on a suspicious TLD
};

// Deterministic in spec: row i of each class is generated from a seed derived
// from (spec.seed, class, i), so any index subrange can be regenerated
// independently. Every emitted URL parses under parse_url. Throws DataError
// on an invalid spec (zero counts, inverted depth range, rates outside
// [0,1]).
LabeledDataset generate_corpus(const CorpusSpec& spec);

// Single-URL generators backing generate_corpus; index is the row number
// within the class. Exposed for streaming use (latency benchmarks) so callers
// need not materialize a corpus.
std::string benign_url(const CorpusSpec& spec, uint64_t index);
std::string malicious_url(const CorpusSpec& spec, uint64_t index);

}  // namespace urlsift
