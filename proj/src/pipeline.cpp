#include "failscen/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "failscen/errors.hpp"
#include "failscen/type_tables.hpp"

namespace failscen::pipeline {

using java::Syn;
using java::SynNode;
using model::AbstractTree;
using model::AtNode;
using model::NodeKind;
using model::SyntaxForm;
using model::Term;
using model::TermKind;
using model::VarUse;

// --------------------------------------------------------------- preprocess

namespace {

std::optional<SynNode> tryParse(const std::string& text) {
    try {
        return java::parseUnit(text);
    } catch (const java::ParseError&) {
        return std::nullopt;
    }
}

}  // namespace

Preprocessed preprocess(const std::string& text) {
    struct Rung {
        std::string wrapped;
        int offset;
        WrapMode mode;
    };
    const Rung rungs[] = {
        {text, 0, WrapMode::Unit},
        {"void __snippet__() {\n" + text + "\n}", 1, WrapMode::Method},
        {"class __Snippet__ {\n" + text + "\n}", 1, WrapMode::Class},
        {"class __Snippet__ { void __snippet__() {\n" + text + "\n} }", 1,
         WrapMode::ClassMethod},
    };
    for (const Rung& r : rungs) {
        if (auto root = tryParse(r.wrapped))
            return Preprocessed{r.wrapped, r.offset, r.mode, std::move(*root)};
    }
    throw UnparseableError("snippet does not parse under any wrapping");
}

// --------------------------------------------------------------- tree build

namespace {

bool startsUpper(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class TreeBuilder {
  public:
    explicit TreeBuilder(int lineOffset) : off_(lineOffset) {
        tree_.nodes.push_back(AtNode{});
    }

    // Fills the type environment from declarations in `n`. With fieldsOnly
    // set, method bodies are skipped so locals of other methods stay out of
    // scope.
    void scan(const SynNode& n, bool fieldsOnly) {
        switch (n.kind) {
            case Syn::Param:
                declareVar(n.a, n.b);
                break;
            case Syn::LocalDecl:
            case Syn::FieldDecl:
                for (const SynNode& d : n.kids)
                    if (d.kind == Syn::Declarator) declareVar(d.a, n.b);
                break;
            case Syn::ForEach:
            case Syn::Catch:
                declareVar(n.a, n.b);
                break;
            case Syn::MethodDecl:
            case Syn::CtorDecl:
                if (fieldsOnly) return;
                break;
            default:
                break;
        }
        for (const SynNode& kid : n.kids) scan(kid, fieldsOnly);
    }

    void emitUnit(const SynNode& unit) {
        for (const SynNode& kid : unit.kids) emitMember(kid);
    }

    void emitMember(const SynNode& m) {
        switch (m.kind) {
            case Syn::ClassDecl:
                for (const SynNode& kid : m.kids) emitMember(kid);
                break;
            case Syn::MethodDecl:
            case Syn::CtorDecl:
                for (const SynNode& kid : m.kids)
                    if (kid.kind == Syn::Block) emitStmts(0, kid.kids);
                break;
            case Syn::FieldDecl:
                emitDecl(0, m);
                break;
            default:
                break;
        }
    }

    AbstractTree finish() {
        rebuildDataEdges(tree_);
        return std::move(tree_);
    }

  private:
    int off_;
    AbstractTree tree_;
    std::unordered_map<std::string, std::string> env_;

    void declareVar(const std::string& name, const std::string& type) {
        if (name.empty()) return;
        env_.emplace(name, type == "var" ? std::string() : type);
    }

    Term varTerm(const std::string& name) const {
        auto it = env_.find(name);
        return Term{TermKind::Var, name,
                    it != env_.end() ? it->second : std::string(), {}};
    }

    int addNode(int parent, NodeKind kind, SyntaxForm form, std::string tag,
                int synLine) {
        AtNode node;
        node.kind = kind;
        node.form = form;
        node.tag = std::move(tag);
        node.line = synLine > 0 ? synLine - off_ : synLine;
        node.parent = parent;
        const int idx = static_cast<int>(tree_.nodes.size());
        tree_.nodes.push_back(std::move(node));
        tree_.nodes[parent].kids.push_back(idx);
        return idx;
    }

    using Ternaries = std::vector<const SynNode*>;

    // Dotted static receivers and class literals keep only the simple name.
    static std::string simpleNameOf(const SynNode& e) {
        if (e.kind == Syn::Name) return e.a;
        if (e.kind == Syn::FieldAcc) return e.a;
        return std::string();
    }

    Term term(const SynNode& e, Ternaries& tern, bool receiverPos = false) {
        switch (e.kind) {
            case Syn::Name: {
                if (auto it = env_.find(e.a); it != env_.end())
                    return Term{TermKind::Var, e.a, it->second, {}};
                if (receiverPos &&
                    (model::isKnownClassName(e.a) || startsUpper(e.a)))
                    return Term{TermKind::TypeName, e.a, "", {}};
                return Term{TermKind::Var, e.a, "", {}};
            }
            case Syn::Lit:
                return Term{TermKind::Lit, e.a, e.b, {}};
            case Syn::Call: {
                Term t{TermKind::Call, e.a, "", {}};
                if (!e.kids.empty()) {
                    if (e.kids[0].kind == Syn::NoCaller)
                        t.kids.push_back(Term{TermKind::NoRecv, "", "", {}});
                    else
                        t.kids.push_back(term(e.kids[0], tern, true));
                    for (std::size_t i = 1; i < e.kids.size(); ++i)
                        t.kids.push_back(term(e.kids[i], tern));
                }
                return t;
            }
            case Syn::FieldAcc:
            case Syn::MethodRef: {
                Term t{TermKind::Field, e.a, "", {}};
                if (!e.kids.empty()) t.kids.push_back(term(e.kids[0], tern, true));
                return t;
            }
            case Syn::ArrIndex: {
                Term t{TermKind::ArrIndex, "", "", {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::New: {
                Term t{TermKind::Ctor, "", e.a, {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::NewArray: {
                std::string ty = e.a;
                int dims = 0;
                for (const SynNode& k : e.kids)
                    if (k.kind != Syn::ArrayInit) ++dims;
                if (dims == 0) dims = 1;
                for (int i = 0; i < dims; ++i) ty += "[]";
                Term t{TermKind::NewArray, "", ty, {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::ArrayInit: {
                Term t{TermKind::NewArray, "", "", {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::Assign: {
                Term t{TermKind::Op, "assign", "", {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::Binary: {
                Term t{TermKind::Op, "binary:" + e.a, "", {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::Unary: {
                Term t{TermKind::Op, "unary:" + e.a, "", {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::Cast: {
                Term t{TermKind::Cast, "", e.a, {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::InstanceOf: {
                Term t{TermKind::InstanceOf, "", e.a, {}};
                for (const SynNode& k : e.kids) t.kids.push_back(term(k, tern));
                return t;
            }
            case Syn::Ternary:
                tern.push_back(&e);
                return Term{TermKind::Unknown, "", "", {}};
            case Syn::Lambda: {
                Term t{TermKind::Lambda, e.a, "", {}};
                if (!e.kids.empty() && e.kids[0].kind != Syn::Block)
                    t.kids.push_back(term(e.kids[0], tern));
                return t;
            }
            case Syn::This:
                return Term{TermKind::This, "", "", {}};
            case Syn::Super:
                return Term{TermKind::Super, "", "", {}};
            case Syn::ClassLit: {
                std::string n = e.kids.empty() ? "" : simpleNameOf(e.kids[0]);
                return Term{TermKind::TypeName, n, "", {}};
            }
            default:
                return Term{TermKind::Unknown, "", "", {}};
        }
    }

    void emitStmts(int parent, const std::vector<SynNode>& stmts) {
        for (const SynNode& s : stmts) emitStmt(parent, s);
    }

    void emitStmt(int parent, const SynNode& s) {
        switch (s.kind) {
            case Syn::Block:
                emitStmts(parent, s.kids);
                break;
            case Syn::LocalDecl:
            case Syn::FieldDecl:
                emitDecl(parent, s);
                break;
            case Syn::ExprStmt:
                if (!s.kids.empty()) exprNode(parent, s.kids[0], s.line);
                break;
            case Syn::If:
                emitIf(parent, s);
                break;
            case Syn::While: {
                Ternaries tern;
                Term cond = term(s.kids[0], tern);
                int idx = addNode(parent, NodeKind::Loop, SyntaxForm::WhileLoop,
                                  "", s.line);
                tree_.nodes[idx].payload.push_back(std::move(cond));
                emitTernaries(idx, tern);
                emitStmt(idx, s.kids[1]);
                break;
            }
            case Syn::DoWhile: {
                Ternaries tern;
                Term cond = term(s.kids[1], tern);
                int idx = addNode(parent, NodeKind::Loop,
                                  SyntaxForm::DoWhileLoop, "", s.line);
                tree_.nodes[idx].payload.push_back(std::move(cond));
                emitTernaries(idx, tern);
                emitStmt(idx, s.kids[0]);
                break;
            }
            case Syn::ForEach: {
                Ternaries tern;
                Term hdr{TermKind::ForEachHdr, "", "", {}};
                hdr.kids.push_back(varTerm(s.a));
                hdr.kids.push_back(term(s.kids[0], tern));
                int idx = addNode(parent, NodeKind::Loop,
                                  SyntaxForm::ForEachLoop, "", s.line);
                tree_.nodes[idx].payload.push_back(std::move(hdr));
                emitTernaries(idx, tern);
                emitStmt(idx, s.kids[1]);
                break;
            }
            case Syn::For: {
                Ternaries tern;
                Term hdr{TermKind::ForHdr, "", "", {}};
                Term inits{TermKind::Seq, "", "", {}};
                for (const SynNode& in : s.kids[0].kids) {
                    if (in.kind == Syn::LocalDecl) {
                        for (const SynNode& d : in.kids) {
                            if (d.kind != Syn::Declarator) continue;
                            Term di{TermKind::DeclInit, "", "", {}};
                            di.kids.push_back(varTerm(d.a));
                            if (!d.kids.empty())
                                di.kids.push_back(term(d.kids[0], tern));
                            inits.kids.push_back(std::move(di));
                        }
                    } else if (in.kind == Syn::ExprStmt && !in.kids.empty()) {
                        inits.kids.push_back(term(in.kids[0], tern));
                    }
                }
                hdr.kids.push_back(std::move(inits));
                hdr.kids.push_back(s.kids[1].kind == Syn::Empty
                                       ? Term{TermKind::Unknown, "", "", {}}
                                       : term(s.kids[1], tern));
                Term upds{TermKind::Seq, "", "", {}};
                for (const SynNode& u : s.kids[2].kids)
                    if (u.kind == Syn::ExprStmt && !u.kids.empty())
                        upds.kids.push_back(term(u.kids[0], tern));
                hdr.kids.push_back(std::move(upds));
                int idx = addNode(parent, NodeKind::Loop, SyntaxForm::ForClassic,
                                  "", s.line);
                tree_.nodes[idx].payload.push_back(std::move(hdr));
                emitTernaries(idx, tern);
                emitStmt(idx, s.kids[3]);
                break;
            }
            case Syn::Switch:
                emitSwitch(parent, s);
                break;
            case Syn::Sync: {
                Ternaries tern;
                Term mon = term(s.kids[0], tern);
                int idx = addNode(parent, NodeKind::Sync, SyntaxForm::None, "",
                                  s.line);
                tree_.nodes[idx].payload.push_back(std::move(mon));
                emitTernaries(idx, tern);
                emitStmt(idx, s.kids[1]);
                break;
            }
            case Syn::Try:
                // try/catch/finally are transparent: bodies flatten in order
                for (const SynNode& k : s.kids) {
                    if (k.kind == Syn::Block) {
                        emitStmts(parent, k.kids);
                    } else if (k.kind == Syn::Catch || k.kind == Syn::Finally) {
                        for (const SynNode& b : k.kids)
                            if (b.kind == Syn::Block) emitStmts(parent, b.kids);
                    }
                }
                break;
            case Syn::Return:
            case Syn::Throw:
                if (!s.kids.empty()) {
                    const SynNode& e = s.kids[0];
                    switch (e.kind) {
                        case Syn::Call:
                        case Syn::New:
                        case Syn::NewArray:
                        case Syn::Assign:
                        case Syn::Binary:
                        case Syn::Unary:
                        case Syn::Cast:
                        case Syn::InstanceOf:
                        case Syn::Ternary:
                            exprNode(parent, e, s.line);
                            break;
                        default:
                            break;  // bare names and literals vanish
                    }
                }
                break;
            case Syn::Labeled:
                if (!s.kids.empty()) emitStmt(parent, s.kids[0]);
                break;
            default:
                break;  // break/continue/empty/nested type declarations
        }
    }

    void emitDecl(int parent, const SynNode& decl) {
        for (const SynNode& d : decl.kids) {
            if (d.kind != Syn::Declarator) continue;
            Ternaries tern;
            Term v = varTerm(d.a);
            std::optional<Term> init;
            if (!d.kids.empty()) init = term(d.kids[0], tern);
            int idx =
                addNode(parent, NodeKind::Declare, SyntaxForm::None, "", d.line);
            tree_.nodes[idx].payload.push_back(std::move(v));
            if (init) tree_.nodes[idx].payload.push_back(std::move(*init));
            emitTernaries(idx, tern);
        }
    }

    void exprNode(int parent, const SynNode& e, int line) {
        NodeKind kind;
        std::string tag;
        switch (e.kind) {
            case Syn::Call:
                kind = NodeKind::Method;
                tag = e.a;
                break;
            case Syn::New:
            case Syn::NewArray:
                kind = NodeKind::Constructor;
                break;
            case Syn::Assign:
                kind = NodeKind::Operation;
                tag = "assign";
                break;
            case Syn::Binary:
                kind = NodeKind::Operation;
                tag = "binary:" + e.a;
                break;
            case Syn::Unary:
                kind = NodeKind::Operation;
                tag = "unary:" + e.a;
                break;
            case Syn::Cast:
                kind = NodeKind::Cast;
                break;
            case Syn::InstanceOf:
                kind = NodeKind::InstanceOf;
                break;
            case Syn::ArrIndex:
                kind = NodeKind::ArrAccess;
                break;
            case Syn::FieldAcc:
                kind = NodeKind::FieldAccess;
                break;
            case Syn::Name:
                kind = NodeKind::Variable;
                break;
            case Syn::Lit:
                kind = NodeKind::Literal;
                break;
            case Syn::Ternary:
                emitTernaryIf(parent, e);
                return;
            default:
                return;  // nothing summarizable (bare lambda, method ref)
        }
        Ternaries tern;
        Term top = term(e, tern);
        int idx = addNode(parent, kind, SyntaxForm::None, std::move(tag), line);
        tree_.nodes[idx].payload.push_back(std::move(top));
        emitTernaries(idx, tern);
    }

    void emitTernaries(int parent, const Ternaries& tern) {
        for (const SynNode* t : tern) emitTernaryIf(parent, *t);
    }

    void emitTernaryIf(int parent, const SynNode& t) {
        Ternaries nested;
        Term cond = term(t.kids[0], nested);
        Term whenTrue = term(t.kids[1], nested);
        Term whenFalse = term(t.kids[2], nested);
        int idx =
            addNode(parent, NodeKind::If, SyntaxForm::TernaryIf, "", t.line);
        tree_.nodes[idx].payload.push_back(std::move(cond));
        tree_.nodes[idx].payload.push_back(std::move(whenTrue));
        tree_.nodes[idx].payload.push_back(std::move(whenFalse));
        emitTernaries(idx, nested);
    }

    void emitIf(int parent, const SynNode& s) {
        int idx = addNode(parent, NodeKind::If, SyntaxForm::PlainIf, "", s.line);
        const SynNode& cond = s.kids[0];
        if (cond.kind == Syn::Call) {
            emitCondChain(idx, cond, s.line);
        } else {
            Ternaries tern;
            Term c = term(cond, tern);
            tree_.nodes[idx].payload.push_back(std::move(c));
            emitTernaries(idx, tern);
        }
        if (s.kids.size() > 1) emitStmt(idx, s.kids[1]);
        if (s.kids.size() > 2) emitStmt(idx, s.kids[2]);
    }

    // A call chain in an if condition becomes nested method child nodes, the
    // outermost call first; the extracted receiver slot is marked ChainRef and
    // the innermost node keeps the chain's base receiver.
    void emitCondChain(int ifIdx, const SynNode& call, int line) {
        std::vector<const SynNode*> chain;
        const SynNode* base = &call;
        while (base->kind == Syn::Call) {
            chain.push_back(base);
            if (base->kids.empty() || base->kids[0].kind == Syn::NoCaller) {
                base = nullptr;
                break;
            }
            base = &base->kids[0];
        }
        int parent = ifIdx;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const SynNode& c = *chain[i];
            const bool innermost = i + 1 == chain.size();
            Ternaries tern;
            Term t{TermKind::Call, c.a, "", {}};
            if (!innermost)
                t.kids.push_back(Term{TermKind::ChainRef, "", "", {}});
            else if (base)
                t.kids.push_back(term(*base, tern, true));
            else
                t.kids.push_back(Term{TermKind::NoRecv, "", "", {}});
            for (std::size_t k = 1; k < c.kids.size(); ++k)
                t.kids.push_back(term(c.kids[k], tern));
            int idx = addNode(parent, NodeKind::Method, SyntaxForm::None, c.a,
                              line);
            tree_.nodes[idx].payload.push_back(std::move(t));
            emitTernaries(idx, tern);
            parent = idx;
        }
    }

    void emitSwitch(int parent, const SynNode& s) {
        const SynNode& selector = s.kids[0];
        int chainParent = parent;
        for (std::size_t i = 1; i < s.kids.size(); ++i) {
            const SynNode& arm = s.kids[i];
            if (arm.kind != Syn::Case) continue;
            int idx = addNode(chainParent, NodeKind::If, SyntaxForm::SwitchIf,
                              "", arm.line);
            std::size_t firstStmt = 0;
            if (arm.a == "case" && !arm.kids.empty()) {
                Ternaries tern;
                Term eq{TermKind::Op, "binary:==", "", {}};
                eq.kids.push_back(term(selector, tern));
                eq.kids.push_back(term(arm.kids[0], tern));
                tree_.nodes[idx].payload.push_back(std::move(eq));
                emitTernaries(idx, tern);
                firstStmt = 1;
            }
            for (std::size_t k = firstStmt; k < arm.kids.size(); ++k)
                emitStmt(idx, arm.kids[k]);
            chainParent = idx;
        }
    }
};

int maxLineOf(const SynNode& n) {
    int best = n.line;
    for (const SynNode& kid : n.kids) best = std::max(best, maxLineOf(kid));
    return best;
}

const SynNode* enclosingMethod(const SynNode& n, int line) {
    const SynNode* best = nullptr;
    std::function<void(const SynNode&)> walk = [&](const SynNode& cur) {
        if ((cur.kind == Syn::MethodDecl || cur.kind == Syn::CtorDecl) &&
            cur.line <= line && line <= maxLineOf(cur)) {
            if (!best || cur.line >= best->line) best = &cur;
        }
        for (const SynNode& kid : cur.kids) walk(kid);
    };
    walk(n);
    return best;
}

}  // namespace

AbstractTree createTree(const Preprocessed& pre) {
    TreeBuilder b(pre.lineOffset);
    b.scan(pre.root, false);
    b.emitUnit(pre.root);
    return b.finish();
}

AbstractTree createTreeForLine(const Preprocessed& pre, int failingLine,
                               bool* wholeFile) {
    const int parsedLine = failingLine + pre.lineOffset;
    if (const SynNode* method = enclosingMethod(pre.root, parsedLine)) {
        if (wholeFile) *wholeFile = false;
        TreeBuilder b(pre.lineOffset);
        b.scan(pre.root, true);   // fields stay visible
        b.scan(*method, false);   // params and locals of the method itself
        b.emitMember(*method);
        return b.finish();
    }
    if (wholeFile) *wholeFile = true;
    return createTree(pre);
}

// -------------------------------------------------------------- attribution

namespace {

template <typename Fn>
void eachTerm(Term& t, Fn&& fn) {
    fn(t);
    for (Term& k : t.kids) eachTerm(k, fn);
}

template <typename Fn>
void eachTreeTerm(AbstractTree& tree, Fn&& fn) {
    for (AtNode& n : tree.nodes)
        for (Term& t : n.payload) eachTerm(t, fn);
}

}  // namespace

void attributeTypes(AbstractTree& tree) {
    std::unordered_map<std::string, std::string> known;
    eachTreeTerm(tree, [&](Term& t) {
        if (t.kind == TermKind::Var && !t.type.empty())
            known.emplace(t.text, t.type);
    });
    auto learn = [&](const std::string& name, const std::string& type) {
        if (!name.empty()) known.emplace(name, type);
    };

    // Rule 1: header positions. For-each sources are collections; a bare
    // variable used as a branch or loop condition is a boolean.
    for (AtNode& n : tree.nodes) {
        if (n.payload.empty()) continue;
        Term& top = n.payload[0];
        if (n.kind == NodeKind::Loop && n.form == SyntaxForm::ForEachLoop &&
            top.kind == TermKind::ForEachHdr && top.kids.size() == 2 &&
            top.kids[1].kind == TermKind::Var)
            learn(top.kids[1].text, "Collection");
        const Term* cond = nullptr;
        if (n.kind == NodeKind::If) cond = &top;
        if (n.kind == NodeKind::Loop) {
            if (n.form == SyntaxForm::WhileLoop ||
                n.form == SyntaxForm::DoWhileLoop)
                cond = &top;
            else if (n.form == SyntaxForm::ForClassic &&
                     top.kind == TermKind::ForHdr && top.kids.size() == 3)
                cond = &top.kids[1];
        }
        if (cond && cond->kind == TermKind::Var) learn(cond->text, "Boolean");
    }

    // Rule 2: calls without an explicit receiver target `this`.
    eachTreeTerm(tree, [](Term& t) {
        if (t.kind == TermKind::Call && !t.kids.empty() &&
            t.kids[0].kind == TermKind::NoRecv)
            t.kids[0] = Term{TermKind::This, "", "", {}};
    });

    // Rule 3: declarations and assignments from a literal, constructor, or
    // array creation carry that type onto the target variable.
    auto rhsType = [](const Term& rhs) -> std::string {
        switch (rhs.kind) {
            case TermKind::Lit:
                return rhs.type == "null" ? std::string() : rhs.type;
            case TermKind::Ctor:
            case TermKind::NewArray:
                return rhs.type;
            default:
                return std::string();
        }
    };
    for (AtNode& n : tree.nodes) {
        if (n.kind == NodeKind::Declare && n.payload.size() >= 2 &&
            n.payload[0].kind == TermKind::Var) {
            if (auto t = rhsType(n.payload[1]); !t.empty())
                learn(n.payload[0].text, t);
        }
        if (n.kind == NodeKind::Operation && n.tag == "assign" &&
            !n.payload.empty()) {
            const Term& top = n.payload[0];
            if (top.kind == TermKind::Op && top.kids.size() == 2 &&
                top.kids[0].kind == TermKind::Var) {
                if (auto t = rhsType(top.kids[1]); !t.empty())
                    learn(top.kids[0].text, t);
            }
        }
        // declarations inside classic-for headers
        for (Term& p : n.payload) {
            eachTerm(p, [&](Term& t) {
                if (t.kind == TermKind::DeclInit && t.kids.size() >= 2 &&
                    t.kids[0].kind == TermKind::Var) {
                    if (auto ty = rhsType(t.kids[1]); !ty.empty())
                        learn(t.kids[0].text, ty);
                }
            });
        }
    }

    // Stamp every unresolved occurrence of a now-known variable.
    eachTreeTerm(tree, [&](Term& t) {
        if (t.kind == TermKind::Var && t.type.empty()) {
            if (auto it = known.find(t.text); it != known.end())
                t.type = it->second;
        }
    });
}

// -------------------------------------------------------------- abstraction

namespace {

void abstractTermTypes(Term& t) {
    switch (t.kind) {
        case TermKind::Var:
        case TermKind::Ctor:
        case TermKind::NewArray:
        case TermKind::Cast:
        case TermKind::InstanceOf:
            t.type = model::abstractType(t.type);
            break;
        case TermKind::TypeName:
            t.type = model::abstractType(t.text);
            break;
        default:
            break;  // literal types are already wrapper names
    }
    for (Term& k : t.kids) abstractTermTypes(k);
}

void serializeTerm(const Term& t, std::string& out) {
    out += std::to_string(static_cast<int>(t.kind));
    out += '(';
    out += t.text;
    out += '|';
    out += t.type;
    for (const Term& k : t.kids) {
        out += ',';
        serializeTerm(k, out);
    }
    out += ')';
}

bool hoistableKind(TermKind k) {
    switch (k) {
        case TermKind::Call:
        case TermKind::Field:
        case TermKind::ArrIndex:
        case TermKind::Ctor:
        case TermKind::Cast:
        case TermKind::InstanceOf:
        case TermKind::Op:
        case TermKind::NewArray:
            return true;
        default:
            return false;
    }
}

// Nodes whose leading payload term IS the summarized statement; that term is
// the node itself, not a reusable subexpression, so it never hoists.
bool leadsWithOwnSummary(NodeKind k) {
    switch (k) {
        case NodeKind::Method:
        case NodeKind::Constructor:
        case NodeKind::Operation:
        case NodeKind::Cast:
        case NodeKind::InstanceOf:
        case NodeKind::ArrAccess:
        case NodeKind::FieldAccess:
        case NodeKind::Variable:
        case NodeKind::Literal:
            return true;
        default:
            return false;
    }
}

// One hoisting round: find the largest duplicated payload subexpression (ties
// by first occurrence), replace all its occurrences with a fresh $tN variable.
bool hoistOnce(AbstractTree& tree) {
    struct Entry {
        std::vector<Term*> occs;
        std::size_t size = 0;
        std::size_t firstSeen = 0;
    };
    std::unordered_map<std::string, Entry> groups;
    std::size_t counter = 0;

    std::function<void(Term&, bool)> visit = [&](Term& t, bool candidate) {
        if (candidate && hoistableKind(t.kind)) {
            if (std::size_t sz = model::termSize(t); sz >= 2) {
                std::string key;
                serializeTerm(t, key);
                Entry& e = groups[key];
                if (e.occs.empty()) {
                    e.size = sz;
                    e.firstSeen = counter;
                }
                e.occs.push_back(&t);
            }
        }
        ++counter;
        for (Term& k : t.kids) visit(k, true);
    };
    for (AtNode& n : tree.nodes)
        for (std::size_t i = 0; i < n.payload.size(); ++i)
            visit(n.payload[i], !(i == 0 && leadsWithOwnSummary(n.kind)));

    const Entry* best = nullptr;
    for (const auto& [key, e] : groups) {
        if (e.occs.size() < 2) continue;
        if (!best || e.size > best->size ||
            (e.size == best->size && e.firstSeen < best->firstSeen))
            best = &e;
    }
    if (!best) return false;

    ++tree.tempCounter;
    const Term repl{TermKind::Var, "$t" + std::to_string(tree.tempCounter), "",
                    {}};
    // occurrences of one key are disjoint subtrees, so in-place replacement
    // never invalidates a later pointer
    for (Term* t : best->occs) *t = repl;
    return true;
}

}  // namespace

void rebuildDataEdges(AbstractTree& tree) {
    tree.dataEdges.clear();
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<int>> occ;
    std::unordered_map<std::string, std::string> types;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        std::unordered_set<std::string> seen;
        for (const VarUse& u : model::varsOf(tree.nodes[i])) {
            if (!seen.insert(u.name).second) continue;
            if (!occ.count(u.name)) order.push_back(u.name);
            occ[u.name].push_back(static_cast<int>(i));
            if (types[u.name].empty()) types[u.name] = u.type;
        }
    }
    std::map<std::pair<int, int>, std::vector<VarUse>> edges;
    for (const std::string& name : order) {
        const auto& v = occ[name];
        for (std::size_t k = 0; k + 1 < v.size(); ++k)
            edges[{v[k], v[k + 1]}].push_back({name, types[name]});
    }
    for (auto& [key, vars] : edges)
        tree.dataEdges.push_back({key.first, key.second, std::move(vars)});
}

void abstractTree(AbstractTree& tree) {
    for (AtNode& n : tree.nodes)
        for (Term& t : n.payload) abstractTermTypes(t);
    while (hoistOnce(tree)) {
    }
    // fresh temporaries may resolve through the header rules
    attributeTypes(tree);
    for (AtNode& n : tree.nodes)
        for (Term& t : n.payload) abstractTermTypes(t);
    rebuildDataEdges(tree);
}

// ---------------------------------------------------------------- frontends

AbstractTree buildTree(const std::string& text) {
    Preprocessed pre = preprocess(text);
    AbstractTree tree = createTree(pre);
    attributeTypes(tree);
    abstractTree(tree);
    return tree;
}

AbstractTree buildBuggyTree(const std::string& fileText, int failingLine,
                            bool* wholeFile) {
    Preprocessed pre = preprocess(fileText);
    AbstractTree tree = createTreeForLine(pre, failingLine, wholeFile);
    attributeTypes(tree);
    abstractTree(tree);
    return tree;
}

std::vector<int> failingNodes(const AbstractTree& tree, int failingLine) {
    std::vector<int> out;
    for (std::size_t i = 1; i < tree.nodes.size(); ++i)
        if (tree.nodes[i].line == failingLine) out.push_back(static_cast<int>(i));
    if (!out.empty()) return out;

    int bestLine = -1;
    for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
        const int l = tree.nodes[i].line;
        if (l > 0 && l <= failingLine) bestLine = std::max(bestLine, l);
    }
    if (bestLine < 0) {
        int minLine = INT_MAX;
        for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
            const int l = tree.nodes[i].line;
            if (l > 0) minLine = std::min(minLine, l);
        }
        if (minLine == INT_MAX) return {};
        bestLine = minLine;
    }
    for (std::size_t i = 1; i < tree.nodes.size(); ++i)
        if (tree.nodes[i].line == bestLine) out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace failscen::pipeline
