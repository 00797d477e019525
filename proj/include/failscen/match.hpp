#pragma once

#include <string>
#include <vector>

#include "failscen/align.hpp"
#include "failscen/store.hpp"

namespace failscen::match {

// Weights for the four heuristics, in C/T/V/S order.
struct Weights {
    double construct = 1.0;
    double type = 2.0;
    double varUse = 1.0;
    double size = 1.4;

    bool operator==(const Weights&) const = default;
};

inline constexpr Weights kDefaultWeights{};
// Raw-count debug scoring: weighted sum of matched-node count, full-match
// count, and summed Jaccard scores; the size term is unused.
inline constexpr Weights kRawCountWeights{1.0, 2.0, 0.5, 0.0};

// full: localized patterns, weighted heuristics. noloc: unpruned question
// trees instead of patterns. simplematch: score is the plain count of
// matched nodes.
enum class Variant { Full, NoLoc, SimpleMatch };

struct SimilarityBreakdown {
    double constructScore = 0.0;  // C: partial matches / matches
    double typeScore = 0.0;       // T: full matches / matches
    double varUseScore = 0.0;     // V: mean Jaccard over paired variables
    double sizeScore = 0.0;       // S: min/max of pattern size vs ideal size
    double score = 0.0;
    Weights weights;

    bool operator==(const SimilarityBreakdown&) const = default;
};

struct RankedResult {
    std::string postId;
    std::string exceptionType;
    SimilarityBreakdown breakdown;
    int votes = 0;
    int patternSize = 0;
    int rank = 0;
};

// Heuristics over an alignment produced by alignTrees(buggy, pattern):
// the a-side is the buggy tree, the b-side the pattern. The root pair is
// excluded from the matched-node set the fractions range over.
double constructSim(const align::Alignment& al);
double typeSim(const align::Alignment& al);
// Pairs variables positionally inside each matched pair's payloads
// (caller with caller, argument i with argument i), deduplicates the
// (pattern variable, buggy variable) pairs, and averages the Jaccard
// similarity of their data-edge use sets.
double varUseSim(const align::Alignment& al, const model::AbstractTree& pattern,
                 const model::AbstractTree& buggy);
double sizeSim(int patternSize, int idealSize);

enum class ScoreMode {
    Weighted,    // w1·C + w2·T + w3·V + w4·S
    RawCounts,   // w1·|matches| + w2·|full| + w3·ΣJaccard
    MatchCount,  // |matches|
};

// Aligns the buggy tree (failing-line nodes protected) against one pattern
// tree and fills in the full breakdown under the given mode.
SimilarityBreakdown scoreAgainst(const model::AbstractTree& buggy,
                                 const std::vector<int>& protectedNodes,
                                 const model::AbstractTree& pattern, int idealSize,
                                 const Weights& w, ScoreMode mode = ScoreMode::Weighted);

struct QueryOptions {
    Weights weights = kDefaultWeights;
    int topK = 1;  // <= 0 returns every post
    Variant variant = Variant::Full;
    bool rawCounts = false;
};

// Online phase: builds the buggy tree for the failing line, scores every
// stored pattern of the exception type (in parallel), collapses each post to
// its best pattern, and returns the top posts sorted by score, then votes,
// then postId. Throws NoPatternsError when the type has no patterns and
// UnparseableError when the buggy source cannot be parsed.
std::vector<RankedResult> rankPosts(const std::string& buggySource, int failingLine,
                                    const std::string& exceptionType,
                                    const store::PatternStore& store,
                                    const QueryOptions& opts = {},
                                    bool* wholeFileFallback = nullptr);

}  // namespace failscen::match
