#pragma once

#include <vector>

#include "failscen/atree.hpp"

namespace failscen::align {

enum class MatchKind { Full, Partial };

// An aligned node pair: `a` indexes the first tree, `b` the second. Full
// pairs agree on construct and types, partial pairs on construct only.
struct MatchPair {
    int a = 0;
    int b = 0;
    MatchKind kind = MatchKind::Full;

    bool operator==(const MatchPair&) const = default;
};

enum class EditOp { Match, Update, Delete, Insert };

// One operation of the edit script: Match/Update carry both nodes, Delete
// only `a` (first tree), Insert only `b` (second tree).
struct EditStep {
    EditOp op = EditOp::Match;
    int a = -1;
    int b = -1;

    bool operator==(const EditStep&) const = default;
};

struct Alignment {
    double cost = 0.0;
    // matched pairs of the optimal edit script, ascending by `a`; pairs the
    // script substitutes at full mismatch cost are updates, not matches
    std::vector<MatchPair> matches;
    // the full script, ordered bottom-up (ascending postorder on both sides)
    std::vector<EditStep> script;
};

// Substitution cost between two nodes: 0 when construct and type lists agree
// (an unresolved type equals nothing, not even itself), 0.5 when only the
// construct agrees, 1 otherwise.
double nodeCost(const model::AtNode& a, const model::AtNode& b);

// Ordered tree edit distance (insert/delete cost 1, substitution per
// nodeCost) with recovery of the matched pairs. Nodes of `t1` listed in
// `protectedT1` cost (|t1|+|t2|+1)*2 to delete, which keeps them aligned
// whenever any alignment at all can cover them. Deterministic: script
// recovery runs right to left resolving ties as deletion, then insertion,
// then substitution, which settles on the leftmost-matched variant among
// equal-cost scripts.
Alignment alignTrees(const model::AbstractTree& t1, const model::AbstractTree& t2,
                     const std::vector<int>& protectedT1 = {});

}  // namespace failscen::align
