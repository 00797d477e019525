#pragma once

#include <optional>
#include <string>
#include <vector>

#include "failscen/atree.hpp"
#include "failscen/java/parser.hpp"

namespace failscen::pipeline {

// How a snippet had to be wrapped before it parsed as a compilation unit.
enum class WrapMode { Unit, Method, Class, ClassMethod };

struct Preprocessed {
    std::string text;       // text actually parsed (possibly wrapped)
    int lineOffset = 0;     // parsed line - lineOffset == original line
    WrapMode mode = WrapMode::Unit;
    java::SynNode root;     // parsed unit
};

// Tries the snippet as-is, then wrapped in a method, then in a class, then in
// a class plus method, recording the line offset of the wrapping prefix.
// Throws UnparseableError when no rung parses.
Preprocessed preprocess(const std::string& text);

// Builds the raw abstract tree (one node per statement-level group, nested
// expressions in payloads, if-condition call chains extracted into child
// nodes) plus initial data edges. Types carry declared spellings or are
// left empty (missing).
model::AbstractTree createTree(const Preprocessed& pre);

// Same, but restricted to the method enclosing `failingLine` (original
// numbering). When no method encloses the line the whole file is used and
// *wholeFile is set.
model::AbstractTree createTreeForLine(const Preprocessed& pre, int failingLine,
                                      bool* wholeFile = nullptr);

// Heuristic type attribution, applied in order: loop/branch header positions
// (for-each sources become Collection, bare condition variables Boolean),
// receiver-less calls get a `this` receiver, and declarations/assignments
// from literals, constructors, or array creations propagate their type.
// Every occurrence of a variable the rules resolve is stamped.
void attributeTypes(model::AbstractTree& tree);

// Abstraction pass: maps all type spellings onto the abstract vocabulary,
// hoists duplicated payload subexpressions into $tN temporaries (largest
// first, until none remain), re-runs attribution for the new temporaries,
// and rebuilds data edges. Idempotent.
void abstractTree(model::AbstractTree& tree);

// Recomputes data edges from consecutive variable occurrences in node order.
void rebuildDataEdges(model::AbstractTree& tree);

// Full pipeline for a snippet: preprocess, createTree, attributeTypes,
// abstractTree.
model::AbstractTree buildTree(const std::string& text);

// Full pipeline for a buggy file with a failing line; `wholeFile` reports
// the no-enclosing-method fallback.
model::AbstractTree buildBuggyTree(const std::string& fileText, int failingLine,
                                   bool* wholeFile = nullptr);

// Nodes whose sourceLine equals failingLine; falls back to the nearest
// statement starting at or before the line, then to the earliest statement.
std::vector<int> failingNodes(const model::AbstractTree& tree, int failingLine);

}  // namespace failscen::pipeline
