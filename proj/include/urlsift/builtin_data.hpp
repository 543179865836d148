#pragma once

namespace urlsift::builtin_data {

// Snapshots embedded at build time from data/*.txt (same line format as the
// --suffix-list / --suspicious-tlds / --top-domains override files).
extern const char* const kPublicSuffixSnapshot;
extern const char* const kSuspiciousTlds;
extern const char* const kTopDomains;

}  // namespace urlsift::builtin_data
