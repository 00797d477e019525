#pragma once

// Deterministic random generator for small well-formed trees, used to drive
// the aligner against the exhaustive oracle.

#include <random>
#include <string>
#include <vector>

#include "failscen/atree.hpp"

namespace testsupport {

inline failscen::model::Term randomVar(std::mt19937& rng) {
    using failscen::model::Term;
    using failscen::model::TermKind;
    static const char* names[] = {"a", "b", "list", "it", "x"};
    static const char* types[] = {"", "Integer", "String", "Collection", "Iterator"};
    Term v;
    v.kind = TermKind::Var;
    v.text = names[std::uniform_int_distribution<int>(0, 4)(rng)];
    v.type = types[std::uniform_int_distribution<int>(0, 4)(rng)];
    return v;
}

inline void appendRandomNode(std::mt19937& rng, failscen::model::AbstractTree& t) {
    using namespace failscen::model;
    static const char* tags[] = {"add", "remove", "get", "next"};

    AtNode n;
    n.line = static_cast<int>(t.nodes.size());
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0:
            n.kind = NodeKind::Method;
            n.tag = tags[std::uniform_int_distribution<int>(0, 3)(rng)];
            n.payload.push_back(randomVar(rng));
            if (std::uniform_int_distribution<int>(0, 1)(rng))
                n.payload.push_back(randomVar(rng));
            break;
        case 1:
            n.kind = NodeKind::Loop;
            n.form = SyntaxForm::WhileLoop;
            n.payload.push_back(randomVar(rng));
            break;
        case 2:
            n.kind = NodeKind::If;
            n.form = SyntaxForm::PlainIf;
            if (std::uniform_int_distribution<int>(0, 1)(rng)) n.payload.push_back(randomVar(rng));
            break;
        default:
            n.kind = NodeKind::Declare;
            n.payload.push_back(randomVar(rng));
            break;
    }
    int parent =
        std::uniform_int_distribution<int>(0, static_cast<int>(t.nodes.size()) - 1)(rng);
    n.parent = parent;
    int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back(n);
    t.nodes[parent].kids.push_back(id);
}

inline failscen::model::AbstractTree randomTree(std::mt19937& rng, int maxNodes = 6) {
    using namespace failscen::model;
    AbstractTree t;
    AtNode root;
    root.kind = NodeKind::Root;
    t.nodes.push_back(root);

    int extra = std::uniform_int_distribution<int>(0, maxNodes - 1)(rng);
    for (int i = 0; i < extra; ++i) appendRandomNode(rng, t);
    return t;
}

// exactly nodeCount nodes including the root
inline failscen::model::AbstractTree sizedRandomTree(std::mt19937& rng, int nodeCount) {
    using namespace failscen::model;
    AbstractTree t;
    AtNode root;
    root.kind = NodeKind::Root;
    t.nodes.push_back(root);
    for (int i = 1; i < nodeCount; ++i) appendRandomNode(rng, t);
    return t;
}

// random subset of the non-root nodes, usable as a protected set
inline std::vector<int> randomProtected(std::mt19937& rng,
                                        const failscen::model::AbstractTree& t) {
    std::vector<int> out;
    for (int id = 1; id < static_cast<int>(t.nodes.size()); ++id) {
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) out.push_back(id);
    }
    return out;
}

}  // namespace testsupport
