#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "failscen/corpus.hpp"
#include "failscen/localize.hpp"

namespace failscen::store {

// Tally of one buildIndex run.
struct IndexStats {
    int accepted = 0;
    int patterns = 0;
    std::map<std::string, int> rejectedByReason;
    std::map<std::string, int> patternsByType;

    bool operator==(const IndexStats&) const = default;
};

// On-disk index: localized patterns grouped by exception type, plus the
// per-type ideal size the size heuristic normalizes against.
struct PatternStore {
    std::map<std::string, std::vector<local::Pattern>> patternsByType;
    std::map<std::string, int> medianSizeByType;
    std::uint64_t corpusDigest = 0;     // fnv1a64 of the corpus bytes
    std::uint64_t formatTimestamp = 0;  // constant so rebuilds are byte-identical

    bool operator==(const PatternStore&) const = default;
};

// Lower median: for even counts the smaller of the two middle values, so the
// ideal size is always a size that actually occurs.
int lowerMedian(std::vector<int> sizes);

// Filters posts, runs the full pipeline per accepted post (parallel across
// posts, gathered in corpus order), localizes patterns, and groups them by
// exception type. `corpusDigest` is recorded verbatim for provenance.
PatternStore buildIndex(const std::vector<corpus::PostRecord>& posts,
                        const std::vector<std::string>& knownExceptionTypes,
                        IndexStats* stats = nullptr,
                        std::uint64_t corpusDigest = 0);

// Versioned little-endian binary serialization. saveStore throws IoError on
// write failure; loadStore throws IoError when the file cannot be read and
// FormatVersionError on a bad magic, an unsupported version, or truncation.
void saveStore(const PatternStore& s, const std::string& path);
PatternStore loadStore(const std::string& path);

// In-memory forms of the same encoding, exposed for tests and digests.
std::string encodeStore(const PatternStore& s);
PatternStore decodeStore(const std::string& bytes);

}  // namespace failscen::store
