#pragma once

#include <cstdint>
#include <string>

#include "urlsift/random_forest.hpp"

namespace urlsift {

// Canonical text serialization: fixed field order, one node per line,
// doubles printed with shortest round-trip formatting. Identical models
// produce identical bytes; save/load round-trips predictions exactly and
// the format is endian-neutral.
//
// Runtime-only knobs (thread count) are not part of the file.
std::string model_to_text(const ForestModel& model);

// Writes the canonical form; returns bytes written. Throws ModelError on IO
// failure.
size_t save_model(const ForestModel& model, const std::string& path);

// Parses and validates: version gate, per-tree structural check (children in
// range, every node reachable exactly once, depth within max_depth, feature
// indices within feature_count), config consistency. Throws ModelError
// naming the failed invariant.
ForestModel model_from_text(const std::string& text);
ForestModel load_model(const std::string& path);

// Digest-based drift guard: the word lists active at serve time must be the
// ones the model was trained with. Throws ModelError naming the list that
// drifted.
void check_digests(const ForestModel& model, const Featurizer& featurizer);

// murmur3_32 over the raw file bytes, for health reporting.
uint32_t file_digest(const std::string& path);

}  // namespace urlsift
