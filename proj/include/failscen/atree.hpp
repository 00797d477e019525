#pragma once

#include <optional>
#include <string>
#include <vector>

namespace failscen::model {

// Node kinds of the abstract failure-scenario tree. One node summarizes one
// statement-level group; nested expression structure lives in the payload.
enum class NodeKind {
    Root,
    Variable,
    Method,
    If,
    Loop,
    Cast,
    ArrAccess,
    FieldAccess,
    Constructor,
    Declare,
    Literal,
    Operation,
    InstanceOf,
    Sync,
};

// Concrete syntax a node was summarized from; canonical kinds collapse the
// four loop forms and three branch forms, the form keeps the original for
// attribution (e.g. for-each targets become Collection).
enum class SyntaxForm {
    None,
    ForClassic,
    ForEachLoop,
    WhileLoop,
    DoWhileLoop,
    PlainIf,
    TernaryIf,
    SwitchIf,
};

// Payload term language. A term mirrors the summarized expression: callers,
// arguments, operands. Types are empty strings until resolved; an empty type
// renders as MISSING and never compares equal.
enum class TermKind {
    Var,         // text=name, type=resolved type
    Lit,         // text=value, type=literal type ("null" contributes nothing)
    Call,        // text=name; kids: [receiver, args...]
    Field,       // text=name; kids: [receiver]
    ArrIndex,    // kids: [base, index]
    Ctor,        // type=class; kids: args
    Cast,        // type=target; kids: [expr]
    InstanceOf,  // type=tested; kids: [expr]
    Op,          // text=operator tag (assign | binary:<op> | unary:<op>); kids: operands
    Lambda,      // kids: [body expr]?
    TypeName,    // text=spelling, type=abstracted name (static receivers, class literals)
    This,
    Super,
    NoRecv,      // call without explicit receiver; attribution rewrites to This
    ChainRef,    // receiver extracted into a child node
    ForEachHdr,  // kids: [loop Var, iterable]
    ForHdr,      // kids: [Seq(inits), cond | Unknown, Seq(updates)]
    DeclInit,    // kids: [Var, init]?
    Seq,         // ordered container
    NewArray,    // type=element type; kids: dims / initializer elements
    Unknown,
};

struct Term {
    TermKind kind = TermKind::Unknown;
    std::string text;
    std::string type;
    std::vector<Term> kids;

    bool operator==(const Term&) const = default;
};

struct AtNode {
    NodeKind kind = NodeKind::Root;
    SyntaxForm form = SyntaxForm::None;
    std::string tag;  // method name or operator tag; empty otherwise
    std::vector<Term> payload;
    int line = -1;  // source line, -1 for synthesized nodes
    int parent = -1;
    std::vector<int> kids;

    bool operator==(const AtNode&) const = default;
};

struct VarUse {
    std::string name;
    std::string type;

    bool operator==(const VarUse&) const = default;
};

// Data edge between consecutive uses of one or more variables.
struct DataEdge {
    int from = 0;
    int to = 0;
    std::vector<VarUse> vars;  // non-empty

    bool operator==(const DataEdge&) const = default;
};

// The abstract tree: nodes[0] is always the root; kids vectors give the
// ordered structural edges, dataEdges the usage links. Value semantics
// throughout so trees copy and compare freely.
struct AbstractTree {
    std::vector<AtNode> nodes;
    std::vector<DataEdge> dataEdges;
    int tempCounter = 0;

    bool operator==(const AbstractTree&) const = default;
};

inline constexpr const char* kMissingType = "MISSING";

// Construct label of a node: the kind name, refined for declare (variable
// type), method (name), and operation (operator tag).
std::string constructOf(const AtNode& node);

// Ordered list of types appearing in the node payload. Unresolved slots
// render as MISSING; call results and null literals contribute nothing.
std::vector<std::string> typesOf(const AtNode& node);

// Ordered variable occurrences (name, type) in the node payload.
std::vector<VarUse> varsOf(const AtNode& node);

// Number of terms in the subterm rooted at t.
std::size_t termSize(const Term& t);

// True when every structural invariant holds: parent/kids mirror each other,
// payload shapes match the node kind, data edges reference real nodes and
// carry non-empty var sets naming variables present at both ends.
bool wellFormed(const AbstractTree& tree, std::string* why = nullptr);

}  // namespace failscen::model
