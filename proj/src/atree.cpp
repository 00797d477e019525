#include "failscen/atree.hpp"

#include <algorithm>

namespace failscen::model {

namespace {

const char* kindName(NodeKind k) {
    switch (k) {
        case NodeKind::Root: return "root";
        case NodeKind::Variable: return "variable";
        case NodeKind::Method: return "method";
        case NodeKind::If: return "if";
        case NodeKind::Loop: return "loop";
        case NodeKind::Cast: return "cast";
        case NodeKind::ArrAccess: return "arrAccess";
        case NodeKind::FieldAccess: return "fieldAccess";
        case NodeKind::Constructor: return "constructor";
        case NodeKind::Declare: return "declare";
        case NodeKind::Literal: return "literal";
        case NodeKind::Operation: return "operation";
        case NodeKind::InstanceOf: return "instanceof";
        case NodeKind::Sync: return "sync";
    }
    return "?";
}

std::string orMissing(const std::string& type) {
    return type.empty() ? kMissingType : type;
}

void collectTypes(const Term& t, std::vector<std::string>& out) {
    switch (t.kind) {
        case TermKind::Var:
            out.push_back(orMissing(t.type));
            return;
        case TermKind::Lit:
            if (t.type != "null") out.push_back(orMissing(t.type));
            return;
        case TermKind::TypeName:
            out.push_back(orMissing(t.type.empty() ? t.text : t.type));
            return;
        case TermKind::Ctor:
        case TermKind::NewArray:
            out.push_back(orMissing(t.type));
            break;  // then arguments
        case TermKind::Cast:
        case TermKind::InstanceOf:
            out.push_back(orMissing(t.type));
            break;  // then operand
        case TermKind::This:
        case TermKind::Super:
        case TermKind::NoRecv:
        case TermKind::ChainRef:
        case TermKind::Unknown:
            return;  // no contribution, no children
        default:
            break;  // calls, fields, operators: children only
    }
    for (const Term& kid : t.kids) collectTypes(kid, out);
}

void collectVars(const Term& t, std::vector<VarUse>& out) {
    if (t.kind == TermKind::Var) {
        out.push_back({t.text, t.type});
        return;
    }
    for (const Term& kid : t.kids) collectVars(kid, out);
}

}  // namespace

std::string constructOf(const AtNode& node) {
    switch (node.kind) {
        case NodeKind::Declare: {
            std::string type;
            if (!node.payload.empty() && node.payload[0].kind == TermKind::Var)
                type = node.payload[0].type;
            return "declare:" + orMissing(type);
        }
        case NodeKind::Method:
            return "method:" + node.tag;
        case NodeKind::Operation:
            return "operation:" + node.tag;
        default:
            return kindName(node.kind);
    }
}

std::vector<std::string> typesOf(const AtNode& node) {
    std::vector<std::string> out;
    for (const Term& t : node.payload) collectTypes(t, out);
    return out;
}

std::vector<VarUse> varsOf(const AtNode& node) {
    std::vector<VarUse> out;
    for (const Term& t : node.payload) collectVars(t, out);
    return out;
}

std::size_t termSize(const Term& t) {
    std::size_t n = 1;
    for (const Term& kid : t.kids) n += termSize(kid);
    return n;
}

bool wellFormed(const AbstractTree& tree, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (tree.nodes.empty()) return fail("empty tree");
    if (tree.nodes[0].kind != NodeKind::Root || tree.nodes[0].parent != -1)
        return fail("node 0 must be a parentless root");
    if (!tree.nodes[0].payload.empty()) return fail("root carries payload");
    const int n = static_cast<int>(tree.nodes.size());
    for (int i = 0; i < n; ++i) {
        const AtNode& node = tree.nodes[i];
        if (i > 0) {
            if (node.kind == NodeKind::Root) return fail("secondary root");
            if (node.parent < 0 || node.parent >= n)
                return fail("node " + std::to_string(i) + " has bad parent");
            const auto& sibs = tree.nodes[node.parent].kids;
            if (std::count(sibs.begin(), sibs.end(), i) != 1)
                return fail("node " + std::to_string(i) + " not linked from parent");
        }
        for (int kid : node.kids) {
            if (kid <= 0 || kid >= n || tree.nodes[kid].parent != i)
                return fail("node " + std::to_string(i) + " has bad child link");
        }
        if (node.kind == NodeKind::Method && node.tag.empty())
            return fail("method node without a name");
        if (node.kind == NodeKind::Operation && node.tag.empty())
            return fail("operation node without a tag");
        if (node.kind == NodeKind::Declare &&
            (node.payload.empty() || node.payload[0].kind != TermKind::Var))
            return fail("declare node must lead with the declared variable");
    }
    for (const DataEdge& e : tree.dataEdges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n || e.from == e.to)
            return fail("data edge endpoints invalid");
        if (e.vars.empty()) return fail("data edge without variables");
        for (const VarUse& v : e.vars) {
            auto uses = [&](int idx) {
                for (const VarUse& u : varsOf(tree.nodes[idx]))
                    if (u.name == v.name) return true;
                return false;
            };
            if (!uses(e.from) || !uses(e.to))
                return fail("data edge names variable absent at an endpoint: " + v.name);
        }
    }
    return true;
}

}  // namespace failscen::model
