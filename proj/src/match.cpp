#include "failscen/match.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "failscen/errors.hpp"
#include "failscen/pipeline.hpp"
#include "failscen/util.hpp"

namespace failscen::match {

namespace {

bool isRootPair(const align::MatchPair& m) { return m.a == 0 && m.b == 0; }

struct MatchTally {
    int total = 0;
    int full = 0;
    int partial = 0;
};

MatchTally tally(const align::Alignment& al) {
    MatchTally t;
    for (const auto& m : al.matches) {
        if (isRootPair(m)) continue;
        ++t.total;
        if (m.kind == align::MatchKind::Full) ++t.full;
        else ++t.partial;
    }
    return t;
}

// Positional payload zip: descend while kinds agree, record a pair when both
// slots are variables. Pairs are kept as (pattern variable, buggy variable).
void zipTerms(const model::Term& pat, const model::Term& bug,
              std::set<std::pair<std::string, std::string>>& pairs) {
    if (pat.kind != bug.kind) return;
    if (pat.kind == model::TermKind::Var) {
        pairs.insert({pat.text, bug.text});
        return;
    }
    std::size_t n = std::min(pat.kids.size(), bug.kids.size());
    for (std::size_t i = 0; i < n; ++i) zipTerms(pat.kids[i], bug.kids[i], pairs);
}

// Construct labels of the endpoints of every data edge carrying the variable.
std::set<std::string> useSet(const model::AbstractTree& t, const std::string& var) {
    std::set<std::string> out;
    for (const auto& e : t.dataEdges) {
        bool carries = std::any_of(e.vars.begin(), e.vars.end(),
                                   [&](const model::VarUse& v) { return v.name == var; });
        if (!carries) continue;
        out.insert(model::constructOf(t.nodes[e.from]));
        out.insert(model::constructOf(t.nodes[e.to]));
    }
    return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

struct VarUseStats {
    double jaccardSum = 0.0;
    int pairs = 0;
};

VarUseStats varUseStats(const align::Alignment& al, const model::AbstractTree& pattern,
                        const model::AbstractTree& buggy) {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& m : al.matches) {
        const auto& patPayload = pattern.nodes[m.b].payload;
        const auto& bugPayload = buggy.nodes[m.a].payload;
        std::size_t n = std::min(patPayload.size(), bugPayload.size());
        for (std::size_t i = 0; i < n; ++i) zipTerms(patPayload[i], bugPayload[i], pairs);
    }
    VarUseStats st;
    for (const auto& [pv, bv] : pairs) {
        st.jaccardSum += jaccard(useSet(pattern, pv), useSet(buggy, bv));
        ++st.pairs;
    }
    return st;
}

}  // namespace

double constructSim(const align::Alignment& al) {
    MatchTally t = tally(al);
    return t.total == 0 ? 0.0 : static_cast<double>(t.partial) / t.total;
}

double typeSim(const align::Alignment& al) {
    MatchTally t = tally(al);
    return t.total == 0 ? 0.0 : static_cast<double>(t.full) / t.total;
}

double varUseSim(const align::Alignment& al, const model::AbstractTree& pattern,
                 const model::AbstractTree& buggy) {
    VarUseStats st = varUseStats(al, pattern, buggy);
    return st.pairs == 0 ? 0.0 : st.jaccardSum / st.pairs;
}

double sizeSim(int patternSize, int idealSize) {
    if (patternSize <= 0 || idealSize <= 0) return 0.0;
    return static_cast<double>(std::min(patternSize, idealSize)) /
           static_cast<double>(std::max(patternSize, idealSize));
}

SimilarityBreakdown scoreAgainst(const model::AbstractTree& buggy,
                                 const std::vector<int>& protectedNodes,
                                 const model::AbstractTree& pattern, int idealSize,
                                 const Weights& w, ScoreMode mode) {
    align::Alignment al = align::alignTrees(buggy, pattern, protectedNodes);
    MatchTally t = tally(al);
    VarUseStats vs = varUseStats(al, pattern, buggy);

    SimilarityBreakdown br;
    br.weights = w;
    br.constructScore = t.total == 0 ? 0.0 : static_cast<double>(t.partial) / t.total;
    br.typeScore = t.total == 0 ? 0.0 : static_cast<double>(t.full) / t.total;
    br.varUseScore = vs.pairs == 0 ? 0.0 : vs.jaccardSum / vs.pairs;
    br.sizeScore = sizeSim(static_cast<int>(pattern.nodes.size()), idealSize);
    switch (mode) {
        case ScoreMode::Weighted:
            br.score = w.construct * br.constructScore + w.type * br.typeScore +
                       w.varUse * br.varUseScore + w.size * br.sizeScore;
            break;
        case ScoreMode::RawCounts:
            br.score = w.construct * t.total + w.type * t.full + w.varUse * vs.jaccardSum;
            break;
        case ScoreMode::MatchCount:
            br.score = t.total;
            break;
    }
    return br;
}

std::vector<RankedResult> rankPosts(const std::string& buggySource, int failingLine,
                                    const std::string& exceptionType,
                                    const store::PatternStore& store,
                                    const QueryOptions& opts, bool* wholeFileFallback) {
    auto it = store.patternsByType.find(exceptionType);
    if (it == store.patternsByType.end() || it->second.empty())
        throw NoPatternsError("no patterns indexed for exception type " + exceptionType);
    const auto& patterns = it->second;

    bool wholeFile = false;
    model::AbstractTree buggy = pipeline::buildBuggyTree(buggySource, failingLine, &wholeFile);
    if (wholeFileFallback) *wholeFileFallback = wholeFile;
    std::vector<int> prot = pipeline::failingNodes(buggy, failingLine);

    int idealSize;
    if (opts.variant == Variant::NoLoc) {
        // Unpruned scoring normalizes against the median unpruned size.
        std::vector<int> sizes;
        sizes.reserve(patterns.size());
        for (const auto& p : patterns) sizes.push_back(static_cast<int>(p.fullTree.nodes.size()));
        idealSize = store::lowerMedian(std::move(sizes));
    } else {
        idealSize = store.medianSizeByType.at(exceptionType);
    }

    ScoreMode mode = opts.variant == Variant::SimpleMatch ? ScoreMode::MatchCount
                     : opts.rawCounts                     ? ScoreMode::RawCounts
                                                          : ScoreMode::Weighted;

    std::vector<SimilarityBreakdown> breakdowns(patterns.size());
    util::parallelFor(patterns.size(), [&](std::size_t i) {
        const auto& tree =
            opts.variant == Variant::NoLoc ? patterns[i].fullTree : patterns[i].tree;
        breakdowns[i] = scoreAgainst(buggy, prot, tree, idealSize, opts.weights, mode);
    });

    // One row per post: the best-scoring of its patterns (first wins ties).
    std::vector<RankedResult> rows;
    std::map<std::string, std::size_t> rowOf;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto& p = patterns[i];
        RankedResult r;
        r.postId = p.postId;
        r.exceptionType = p.exceptionType;
        r.breakdown = breakdowns[i];
        r.votes = p.votes;
        r.patternSize = static_cast<int>(
            (opts.variant == Variant::NoLoc ? p.fullTree : p.tree).nodes.size());
        auto [pos, inserted] = rowOf.try_emplace(r.postId, rows.size());
        if (inserted) rows.push_back(std::move(r));
        else if (r.breakdown.score > rows[pos->second].breakdown.score)
            rows[pos->second] = std::move(r);
    }

    std::sort(rows.begin(), rows.end(), [](const RankedResult& a, const RankedResult& b) {
        if (a.breakdown.score != b.breakdown.score) return a.breakdown.score > b.breakdown.score;
        if (a.votes != b.votes) return a.votes > b.votes;
        return a.postId < b.postId;
    });
    if (opts.topK > 0 && rows.size() > static_cast<std::size_t>(opts.topK))
        rows.resize(static_cast<std::size_t>(opts.topK));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i) + 1;
    return rows;
}

}  // namespace failscen::match
