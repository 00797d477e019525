#include "failscen/localize.hpp"

#include "failscen/align.hpp"
#include "failscen/pipeline.hpp"

namespace failscen::local {

using model::AbstractTree;
using model::AtNode;

namespace {

void copyMarked(const AbstractTree& src, const std::vector<char>& keep, int id,
                int newParent, AbstractTree& out) {
    int attach = newParent;
    if (keep[id]) {
        AtNode n = src.nodes[id];
        n.parent = newParent;
        n.kids.clear();
        attach = static_cast<int>(out.nodes.size());
        if (newParent >= 0) out.nodes[newParent].kids.push_back(attach);
        out.nodes.push_back(std::move(n));
    }
    for (int kid : src.nodes[id].kids) copyMarked(src, keep, kid, attach, out);
}

}  // namespace

AbstractTree pruneUnmarked(const AbstractTree& tree, const std::vector<int>& marked) {
    std::vector<char> keep(tree.nodes.size(), 0);
    keep[0] = 1;
    for (int id : marked) {
        if (id >= 0 && id < static_cast<int>(keep.size())) keep[id] = 1;
    }

    AbstractTree out;
    out.tempCounter = tree.tempCounter;
    copyMarked(tree, keep, 0, -1, out);
    // variables whose in-between uses were pruned reconnect across the gap
    pipeline::rebuildDataEdges(out);
    return out;
}

std::vector<Pattern> localize(const std::vector<AbstractTree>& questionTrees,
                              const std::vector<AbstractTree>& answerTrees,
                              const PostMeta& meta) {
    std::vector<Pattern> out;
    if (answerTrees.empty()) return out;

    for (const AbstractTree& q : questionTrees) {
        std::vector<int> marked;
        for (const AbstractTree& a : answerTrees) {
            for (const auto& m : align::alignTrees(q, a).matches) marked.push_back(m.a);
        }
        Pattern p;
        p.tree = pruneUnmarked(q, marked);
        p.fullTree = q;
        p.postId = meta.postId;
        p.exceptionType = meta.exceptionType;
        p.votes = meta.votes;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace failscen::local
