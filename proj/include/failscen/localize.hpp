#pragma once

#include <string>
#include <vector>

#include "failscen/atree.hpp"

namespace failscen::local {

struct PostMeta {
    std::string postId;
    std::string exceptionType;
    int votes = 0;
};

// A question tree pruned to its exception scenario, tagged with the post it
// came from. The unpruned tree rides along for the scoring variant that
// skips localization.
struct Pattern {
    model::AbstractTree tree;      // localized question tree
    model::AbstractTree fullTree;  // question tree as built, before pruning
    std::string postId;
    std::string exceptionType;
    int votes = 0;

    int size() const { return static_cast<int>(tree.nodes.size()); }

    bool operator==(const Pattern&) const = default;
};

// Drops every node outside `marked` (the root always survives), re-attaching
// children of dropped nodes to their nearest retained ancestor in order, and
// rebuilds data edges over the survivors.
model::AbstractTree pruneUnmarked(const model::AbstractTree& tree,
                                  const std::vector<int>& marked);

// One Pattern per question tree: the nodes any answer tree aligns with
// survive, the rest are pruned. With no answer trees there is nothing to
// localize against and no Pattern is produced.
std::vector<Pattern> localize(const std::vector<model::AbstractTree>& questionTrees,
                              const std::vector<model::AbstractTree>& answerTrees,
                              const PostMeta& meta);

}  // namespace failscen::local
