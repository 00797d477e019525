#pragma once

#include <string>
#include <vector>

namespace failscen::java {

// Parse-tree node kinds for the supported Java subset. The shape of each
// kind's children is documented next to it; `a`/`b` carry identifier, type,
// or operator spellings so nodes stay POD-ish and copyable.
enum class Syn {
    Unit,        // kids: type declarations
    ClassDecl,   // a=name; kids: members
    MethodDecl,  // a=name, b=return type; kids: [ParamList, Block?]
    CtorDecl,    // a=name; kids: [ParamList, Block]
    ParamList,   // kids: Param*
    Param,       // a=name, b=type
    FieldDecl,   // b=type; kids: Declarator*
    LocalDecl,   // b=type; kids: Declarator*
    Declarator,  // a=name; kids: [init expr]?
    Block,       // kids: statements
    If,          // kids: [cond, then, else?]
    While,       // kids: [cond, body]
    DoWhile,     // kids: [body, cond]
    For,         // kids: [ForInit, cond | Empty, ForUpdate, body]
    ForInit,     // kids: LocalDecl | expr statements
    ForUpdate,   // kids: exprs
    ForEach,     // a=var name, b=var type; kids: [iterable, body]
    Switch,      // kids: [selector, Case*]
    Case,        // a="case"|"default"; kids: [label?]; then statements
    Sync,        // kids: [expr, Block]
    Try,         // kids: [Block, Catch*, Finally?]
    Catch,       // a=param name, b=param type; kids: [Block]
    Finally,     // kids: [Block]
    Return,      // kids: [expr]?
    Throw,       // kids: [expr]
    Break,       // a=label?
    Continue,    // a=label?
    ExprStmt,    // kids: [expr]
    Empty,
    Labeled,     // a=label; kids: [stmt]

    Assign,      // a=op ("=", "+=", ...); kids: [lhs, rhs]
    Ternary,     // kids: [cond, then, else]
    Binary,      // a=op; kids: [lhs, rhs]
    Unary,       // a=op, b="pre"|"post"; kids: [operand]
    Cast,        // a=type; kids: [expr]
    InstanceOf,  // a=type; kids: [expr]
    Call,        // a=method name; kids: [caller | NoCaller, args...]
    FieldAcc,    // a=field name; kids: [caller]
    ArrIndex,    // kids: [base, index]
    New,         // a=type; kids: args
    NewArray,    // a=element type; kids: dim exprs / ArrayInit
    ArrayInit,   // kids: element exprs
    Name,        // a=identifier
    Lit,         // a=value, b=literal type (Integer, Long, ..., String, null)
    Lambda,      // a=comma-joined params; kids: [expr | Block]
    MethodRef,   // a=name; kids: [qualifier]
    This,
    Super,
    NoCaller,    // placeholder: call without explicit receiver
    ClassLit,    // a=type ("Foo.class")
};

struct SynNode {
    SynNode() = default;
    SynNode(Syn k, int l) : kind(k), line(l) {}

    Syn kind = Syn::Empty;
    int line = 0;
    std::string a;
    std::string b;
    std::vector<SynNode> kids;
};

}  // namespace failscen::java
