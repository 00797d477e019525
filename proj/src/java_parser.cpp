#include "failscen/java/parser.hpp"

#include <optional>

#include "failscen/java/lexer.hpp"

namespace failscen::java {

namespace {

bool isModifier(const std::string& s) {
    return s == "public" || s == "private" || s == "protected" || s == "static" ||
           s == "final" || s == "abstract" || s == "native" || s == "transient" ||
           s == "volatile" || s == "strictfp" || s == "default" || s == "synchronized";
}

bool isPrimitive(const std::string& s) {
    return s == "byte" || s == "short" || s == "int" || s == "long" || s == "float" ||
           s == "double" || s == "char" || s == "boolean" || s == "void";
}

class Parser {
public:
    explicit Parser(const std::string& source) : toks_(lex(source)) {}

    SynNode unit() {
        SynNode u{Syn::Unit, lineHere()};
        skipAnnotations();
        if (atIdent("package")) {
            while (!atPunct(";") && !atEnd()) next();
            expectPunct(";");
        }
        while (true) {
            skipAnnotations();
            if (!atIdent("import")) break;
            while (!atPunct(";") && !atEnd()) next();
            expectPunct(";");
        }
        while (!atEnd()) {
            u.kids.push_back(typeDecl());
        }
        return u;
    }

    SynNode members() {
        SynNode wrap{Syn::ClassDecl, lineHere()};
        while (!atEnd()) wrap.kids.push_back(member());
        return wrap;
    }

    SynNode statements() {
        SynNode block{Syn::Block, lineHere()};
        while (!atEnd()) block.kids.push_back(statement());
        return block;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    // ---- token plumbing ----

    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(std::size_t k) const {
        std::size_t i = pos_ + k;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool atEnd() const { return cur().kind == Tok::End; }
    int lineHere() const { return cur().line; }
    void next() {
        if (pos_ + 1 < toks_.size()) ++pos_;
    }
    bool atPunct(const char* p) const { return cur().kind == Tok::Punct && cur().text == p; }
    bool atIdent(const char* s) const { return cur().kind == Tok::Ident && cur().text == s; }
    bool atAnyIdent() const { return cur().kind == Tok::Ident && !isKeyword(cur().text); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError{msg + " near '" + cur().text + "'", cur().line};
    }
    void expectPunct(const char* p) {
        if (!atPunct(p)) fail(std::string("expected '") + p + "'");
        next();
    }
    std::string expectIdent() {
        if (cur().kind != Tok::Ident) fail("expected identifier");
        std::string s = cur().text;
        next();
        return s;
    }

    std::size_t mark() const { return pos_; }
    void rewind(std::size_t m) { pos_ = m; }

    bool adjacent(std::size_t k) const {
        // true when token pos_+k starts right after token pos_+k-1 ends
        const Token& a = ahead(k - 1);
        const Token& b = ahead(k);
        return a.line == b.line && b.col == a.col + static_cast<int>(a.text.size());
    }

    void skipAnnotations() {
        while (atPunct("@")) {
            next();
            if (cur().kind != Tok::Ident) fail("expected annotation name");
            next();
            while (atPunct(".")) {
                next();
                expectIdent();
            }
            if (atPunct("(")) skipBalanced("(", ")");
        }
    }

    void skipModifiers() {
        for (;;) {
            if (cur().kind == Tok::Ident && isModifier(cur().text)) {
                next();
            } else if (atPunct("@")) {
                skipAnnotations();
            } else {
                return;
            }
        }
    }

    void skipBalanced(const char* open, const char* close) {
        expectPunct(open);
        int depth = 1;
        while (depth > 0) {
            if (atEnd()) fail(std::string("unbalanced '") + open + "'");
            if (atPunct(open)) ++depth;
            else if (atPunct(close)) --depth;
            next();
        }
    }

    // Skips a generic argument list starting at '<'. Returns false (without
    // consuming) when the brackets do not balance like a type argument list.
    bool skipTypeArgs() {
        std::size_t m = mark();
        expectPunct("<");
        int depth = 1;
        while (depth > 0) {
            if (atEnd() || atPunct(";") || atPunct("{")) {
                rewind(m);
                return false;
            }
            if (atPunct("<")) ++depth;
            else if (atPunct(">")) --depth;
            else if (cur().kind != Tok::Ident && !atPunct(",") && !atPunct("?") &&
                     !atPunct(".") && !atPunct("[") && !atPunct("]") && !atPunct("&")) {
                rewind(m);
                return false;
            }
            next();
        }
        return true;
    }

    // ---- types ----

    // Parses a type reference, returning its erased spelling: qualified name
    // without type arguments, '[]' per array dimension. Throws on mismatch.
    std::string typeRef() {
        std::string out;
        if (cur().kind == Tok::Ident && (isPrimitive(cur().text) || cur().text == "var")) {
            out = cur().text;
            next();
        } else if (atAnyIdent()) {
            out = cur().text;
            next();
            if (atPunct("<") && !skipTypeArgs()) fail("malformed type arguments");
            while (atPunct(".") && ahead(1).kind == Tok::Ident && !isKeyword(ahead(1).text)) {
                next();
                out += "." + cur().text;
                next();
                if (atPunct("<") && !skipTypeArgs()) fail("malformed type arguments");
            }
        } else {
            fail("expected type");
        }
        while (atPunct("[") && ahead(1).kind == Tok::Punct && ahead(1).text == "]") {
            next();
            next();
            out += "[]";
        }
        if (atPunct("...")) {  // vararg param: treat as array
            next();
            out += "[]";
        }
        return out;
    }

    std::optional<std::string> tryTypeRef() {
        std::size_t m = mark();
        try {
            return typeRef();
        } catch (const ParseError&) {
            rewind(m);
            return std::nullopt;
        }
    }

    // ---- declarations ----

    SynNode typeDecl() {
        int line = lineHere();
        skipModifiers();
        bool isEnum = atIdent("enum");
        if (!atIdent("class") && !atIdent("interface") && !isEnum && !atIdent("record")) {
            fail("expected type declaration");
        }
        next();
        SynNode cls{Syn::ClassDecl, line};
        cls.a = expectIdent();
        if (atPunct("<")) {
            if (!skipTypeArgs()) fail("malformed type parameters");
        }
        if (atPunct("(")) skipBalanced("(", ")");  // record header
        while (atIdent("extends") || atIdent("implements")) {
            next();
            typeRef();
            while (atPunct(",")) {
                next();
                typeRef();
            }
        }
        expectPunct("{");
        if (isEnum) enumConstants(cls);
        while (!atPunct("}")) {
            if (atEnd()) fail("unterminated class body");
            cls.kids.push_back(member());
        }
        next();
        if (atPunct(";")) next();
        return cls;
    }

    void enumConstants(SynNode& cls) {
        while (atAnyIdent()) {
            SynNode c{Syn::FieldDecl, lineHere()};
            c.b = cls.a;
            SynNode d{Syn::Declarator, lineHere()};
            d.a = expectIdent();
            if (atPunct("(")) skipBalanced("(", ")");
            if (atPunct("{")) skipBalanced("{", "}");
            c.kids.push_back(std::move(d));
            cls.kids.push_back(std::move(c));
            if (atPunct(",")) {
                next();
                continue;
            }
            break;
        }
        if (atPunct(";")) next();
    }

    SynNode member() {
        int line = lineHere();
        skipModifiers();
        if (atIdent("class") || atIdent("interface") || atIdent("enum") || atIdent("record")) {
            return typeDecl();
        }
        if (atPunct("{")) {  // instance or static initializer
            SynNode m{Syn::MethodDecl, line};
            m.kids.push_back(SynNode{Syn::ParamList, line});
            m.kids.push_back(block());
            return m;
        }
        if (atPunct("<")) {
            if (!skipTypeArgs()) fail("malformed type parameters");
        }
        // constructor: Name '('
        if (atAnyIdent() && ahead(1).kind == Tok::Punct && ahead(1).text == "(") {
            SynNode ctor{Syn::CtorDecl, line};
            ctor.a = expectIdent();
            ctor.kids.push_back(paramList());
            skipThrows();
            ctor.kids.push_back(block());
            return ctor;
        }
        std::string type = typeRef();
        if (!atAnyIdent()) fail("expected member name");
        std::string name = cur().text;
        next();
        if (atPunct("(")) {
            SynNode m{Syn::MethodDecl, line};
            m.a = name;
            m.b = type;
            m.kids.push_back(paramList());
            skipThrows();
            if (atPunct(";")) {
                next();
            } else {
                m.kids.push_back(block());
            }
            return m;
        }
        SynNode f{Syn::FieldDecl, line};
        f.b = type;
        f.kids.push_back(declarator(name, line));
        while (atPunct(",")) {
            next();
            int dline = lineHere();
            std::string dname = expectIdent();
            f.kids.push_back(declarator(dname, dline));
        }
        expectPunct(";");
        return f;
    }

    SynNode paramList() {
        SynNode params{Syn::ParamList, lineHere()};
        expectPunct("(");
        while (!atPunct(")")) {
            if (atEnd()) fail("unterminated parameter list");
            skipAnnotations();
            if (atIdent("final")) next();
            SynNode p{Syn::Param, lineHere()};
            p.b = typeRef();
            p.a = expectIdent();
            while (atPunct("[") && ahead(1).text == "]") {
                next();
                next();
                p.b += "[]";
            }
            params.kids.push_back(std::move(p));
            if (atPunct(",")) next();
        }
        next();
        return params;
    }

    void skipThrows() {
        if (atIdent("throws")) {
            next();
            typeRef();
            while (atPunct(",")) {
                next();
                typeRef();
            }
        }
    }

    SynNode declarator(std::string name, int line) {
        SynNode d{Syn::Declarator, line};
        d.a = std::move(name);
        while (atPunct("[") && ahead(1).text == "]") {
            next();
            next();
        }
        if (atPunct("=")) {
            next();
            d.kids.push_back(varInit());
        }
        return d;
    }

    SynNode varInit() {
        if (atPunct("{")) return arrayInit();
        return expr();
    }

    SynNode arrayInit() {
        SynNode init{Syn::ArrayInit, lineHere()};
        expectPunct("{");
        while (!atPunct("}")) {
            if (atEnd()) fail("unterminated array initializer");
            init.kids.push_back(varInit());
            if (atPunct(",")) next();
        }
        next();
        return init;
    }

    // ---- statements ----

    SynNode block() {
        SynNode b{Syn::Block, lineHere()};
        expectPunct("{");
        while (!atPunct("}")) {
            if (atEnd()) fail("unterminated block");
            b.kids.push_back(statement());
        }
        next();
        return b;
    }

    SynNode statement() {
        int line = lineHere();
        if (atPunct("{")) return block();
        if (atPunct(";")) {
            next();
            return SynNode{Syn::Empty, line};
        }
        if (atPunct("@")) skipAnnotations();
        if (atIdent("if")) return ifStmt();
        if (atIdent("while")) return whileStmt();
        if (atIdent("do")) return doStmt();
        if (atIdent("for")) return forStmt();
        if (atIdent("switch")) return switchStmt();
        if (atIdent("synchronized")) return syncStmt();
        if (atIdent("try")) return tryStmt();
        if (atIdent("return")) {
            next();
            SynNode r{Syn::Return, line};
            if (!atPunct(";")) r.kids.push_back(expr());
            expectPunct(";");
            return r;
        }
        if (atIdent("throw")) {
            next();
            SynNode t{Syn::Throw, line};
            t.kids.push_back(expr());
            expectPunct(";");
            return t;
        }
        if (atIdent("break") || atIdent("continue")) {
            SynNode s{atIdent("break") ? Syn::Break : Syn::Continue, line};
            next();
            if (atAnyIdent()) {
                s.a = cur().text;
                next();
            }
            expectPunct(";");
            return s;
        }
        if (atIdent("assert")) {
            next();
            SynNode s{Syn::ExprStmt, line};
            s.kids.push_back(expr());
            if (atPunct(":")) {
                next();
                expr();
            }
            expectPunct(";");
            return s;
        }
        if (atIdent("class") || atIdent("interface") || atIdent("enum")) return typeDecl();
        // labeled statement
        if (atAnyIdent() && ahead(1).kind == Tok::Punct && ahead(1).text == ":" &&
            !(ahead(1).text == ":" && ahead(2).kind == Tok::Punct && ahead(2).text == ":")) {
            SynNode l{Syn::Labeled, line};
            l.a = expectIdent();
            next();  // ':'
            l.kids.push_back(statement());
            return l;
        }
        if (auto decl = tryLocalDecl()) return std::move(*decl);
        SynNode s{Syn::ExprStmt, line};
        s.kids.push_back(expr());
        expectPunct(";");
        return s;
    }

    std::optional<SynNode> tryLocalDecl() {
        std::size_t m = mark();
        int line = lineHere();
        bool sawFinal = false;
        while (atIdent("final") || atPunct("@")) {
            if (atIdent("final")) {
                next();
                sawFinal = true;
            } else {
                skipAnnotations();
            }
        }
        auto type = tryTypeRef();
        if (!type) {
            rewind(m);
            return std::nullopt;
        }
        if (!atAnyIdent()) {
            rewind(m);
            return std::nullopt;
        }
        const Token& after = ahead(1);
        bool looksDecl = after.kind == Tok::Punct &&
                         (after.text == "=" || after.text == ";" || after.text == "," ||
                          (after.text == "[" && ahead(2).text == "]"));
        if (!looksDecl && !sawFinal) {
            rewind(m);
            return std::nullopt;
        }
        SynNode d{Syn::LocalDecl, line};
        d.b = *type;
        std::string name = expectIdent();
        d.kids.push_back(declarator(std::move(name), line));
        while (atPunct(",")) {
            next();
            int dline = lineHere();
            std::string dname = expectIdent();
            d.kids.push_back(declarator(std::move(dname), dline));
        }
        if (!atPunct(";")) {
            rewind(m);
            return std::nullopt;
        }
        next();
        return d;
    }

    SynNode ifStmt() {
        SynNode s{Syn::If, lineHere()};
        next();
        expectPunct("(");
        s.kids.push_back(expr());
        expectPunct(")");
        s.kids.push_back(statement());
        if (atIdent("else")) {
            next();
            s.kids.push_back(statement());
        }
        return s;
    }

    SynNode whileStmt() {
        SynNode s{Syn::While, lineHere()};
        next();
        expectPunct("(");
        s.kids.push_back(expr());
        expectPunct(")");
        s.kids.push_back(statement());
        return s;
    }

    SynNode doStmt() {
        SynNode s{Syn::DoWhile, lineHere()};
        next();
        s.kids.push_back(statement());
        if (!atIdent("while")) fail("expected 'while' after do body");
        next();
        expectPunct("(");
        s.kids.push_back(expr());
        expectPunct(")");
        expectPunct(";");
        return s;
    }

    SynNode forStmt() {
        int line = lineHere();
        next();
        expectPunct("(");
        // for-each probe: [final] Type Ident ':'
        {
            std::size_t m = mark();
            if (atIdent("final")) next();
            auto type = tryTypeRef();
            if (type && atAnyIdent() && ahead(1).kind == Tok::Punct && ahead(1).text == ":") {
                SynNode s{Syn::ForEach, line};
                s.b = *type;
                s.a = expectIdent();
                next();  // ':'
                s.kids.push_back(expr());
                expectPunct(")");
                s.kids.push_back(statement());
                return s;
            }
            rewind(m);
        }
        SynNode s{Syn::For, line};
        SynNode init{Syn::ForInit, line};
        if (!atPunct(";")) {
            if (auto decl = tryLocalDeclNoSemi()) {
                init.kids.push_back(std::move(*decl));
            } else {
                init.kids.push_back(exprAsStmt());
                while (atPunct(",")) {
                    next();
                    init.kids.push_back(exprAsStmt());
                }
            }
        }
        expectPunct(";");
        s.kids.push_back(std::move(init));
        if (!atPunct(";")) {
            s.kids.push_back(expr());
        } else {
            s.kids.push_back(SynNode{Syn::Empty, lineHere()});
        }
        expectPunct(";");
        SynNode upd{Syn::ForUpdate, lineHere()};
        if (!atPunct(")")) {
            upd.kids.push_back(exprAsStmt());
            while (atPunct(",")) {
                next();
                upd.kids.push_back(exprAsStmt());
            }
        }
        s.kids.push_back(std::move(upd));
        expectPunct(")");
        s.kids.push_back(statement());
        return s;
    }

    // local declaration inside a for header (no trailing ';' consumed)
    std::optional<SynNode> tryLocalDeclNoSemi() {
        std::size_t m = mark();
        int line = lineHere();
        if (atIdent("final")) next();
        auto type = tryTypeRef();
        if (!type || !atAnyIdent()) {
            rewind(m);
            return std::nullopt;
        }
        const Token& after = ahead(1);
        if (!(after.kind == Tok::Punct && (after.text == "=" || after.text == ","))) {
            rewind(m);
            return std::nullopt;
        }
        SynNode d{Syn::LocalDecl, line};
        d.b = *type;
        std::string name = expectIdent();
        d.kids.push_back(declarator(std::move(name), line));
        while (atPunct(",")) {
            next();
            int dline = lineHere();
            std::string dname = expectIdent();
            d.kids.push_back(declarator(std::move(dname), dline));
        }
        return d;
    }

    SynNode exprAsStmt() {
        SynNode s{Syn::ExprStmt, lineHere()};
        s.kids.push_back(expr());
        return s;
    }

    SynNode switchStmt() {
        SynNode s{Syn::Switch, lineHere()};
        next();
        expectPunct("(");
        s.kids.push_back(expr());
        expectPunct(")");
        expectPunct("{");
        while (!atPunct("}")) {
            if (atEnd()) fail("unterminated switch");
            SynNode c{Syn::Case, lineHere()};
            if (atIdent("case")) {
                next();
                c.a = "case";
                c.kids.push_back(expr());
            } else if (atIdent("default")) {
                next();
                c.a = "default";
            } else {
                fail("expected case label");
            }
            expectPunct(":");
            while (!atIdent("case") && !atIdent("default") && !atPunct("}")) {
                if (atEnd()) fail("unterminated switch");
                c.kids.push_back(statement());
            }
            s.kids.push_back(std::move(c));
        }
        next();
        return s;
    }

    SynNode syncStmt() {
        SynNode s{Syn::Sync, lineHere()};
        next();
        expectPunct("(");
        s.kids.push_back(expr());
        expectPunct(")");
        s.kids.push_back(block());
        return s;
    }

    SynNode tryStmt() {
        SynNode s{Syn::Try, lineHere()};
        next();
        std::vector<SynNode> resources;
        if (atPunct("(")) {
            next();
            while (!atPunct(")")) {
                if (atEnd()) fail("unterminated try resources");
                if (auto decl = tryLocalDeclNoSemi()) {
                    resources.push_back(std::move(*decl));
                } else {
                    resources.push_back(exprAsStmt());
                }
                if (atPunct(";")) next();
            }
            next();
        }
        SynNode body = block();
        if (!resources.empty()) {
            body.kids.insert(body.kids.begin(), std::make_move_iterator(resources.begin()),
                             std::make_move_iterator(resources.end()));
        }
        s.kids.push_back(std::move(body));
        while (atIdent("catch")) {
            SynNode c{Syn::Catch, lineHere()};
            next();
            expectPunct("(");
            if (atIdent("final")) next();
            c.b = typeRef();
            while (atPunct("|")) {  // multi-catch; first type wins
                next();
                typeRef();
            }
            c.a = expectIdent();
            expectPunct(")");
            c.kids.push_back(block());
            s.kids.push_back(std::move(c));
        }
        if (atIdent("finally")) {
            SynNode f{Syn::Finally, lineHere()};
            next();
            f.kids.push_back(block());
            s.kids.push_back(std::move(f));
        }
        return s;
    }

    // ---- expressions ----

    SynNode expr() { return assignment(); }

    bool atShiftAssign() const {
        // '>' '>' '=' or '>' '>' '>' '=' spelled with adjacent tokens
        if (!atPunct(">")) return false;
        if (ahead(1).text == ">" && adjacent(1)) {
            if (ahead(2).text == "=" && adjacent(2)) return true;
            if (ahead(2).text == ">" && adjacent(2) && ahead(3).text == "=" && adjacent(3)) return true;
        }
        return false;
    }

    SynNode assignment() {
        SynNode lhs = ternary();
        if (cur().kind == Tok::Punct) {
            const std::string& t = cur().text;
            bool simple = t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" ||
                          t == "%=" || t == "&=" || t == "|=" || t == "^=" || t == "<<=";
            if (simple) {
                SynNode a{Syn::Assign, lhs.line};
                a.a = t;
                next();
                a.kids.push_back(std::move(lhs));
                a.kids.push_back(assignment());
                return a;
            }
            if (atShiftAssign()) {
                SynNode a{Syn::Assign, lhs.line};
                a.a = ahead(2).text == "=" ? ">>=" : ">>>=";
                std::size_t eat = ahead(2).text == "=" ? 3 : 4;
                for (std::size_t k = 0; k < eat; ++k) next();
                a.kids.push_back(std::move(lhs));
                a.kids.push_back(assignment());
                return a;
            }
        }
        return lhs;
    }

    SynNode ternary() {
        SynNode cond = binary(0);
        if (atPunct("?")) {
            SynNode t{Syn::Ternary, cond.line};
            next();
            t.kids.push_back(std::move(cond));
            t.kids.push_back(expr());
            expectPunct(":");
            t.kids.push_back(ternary());
            return t;
        }
        return cond;
    }

    // precedence levels, loosest first
    static constexpr int kLevels = 9;

    int levelOf(const std::string& op) const {
        if (op == "||") return 0;
        if (op == "&&") return 1;
        if (op == "|") return 2;
        if (op == "^") return 3;
        if (op == "&") return 4;
        if (op == "==" || op == "!=") return 5;
        if (op == "<" || op == ">" || op == "<=" || op == ">=") return 6;
        if (op == "<<" || op == ">>" || op == ">>>") return 7;
        if (op == "+" || op == "-") return 8;
        if (op == "*" || op == "/" || op == "%") return 9;
        return -1;
    }

    // Reassembles adjacent '>' tokens into a shift spelling, or returns the
    // single-token operator. Does not consume.
    std::string peekBinaryOp(std::size_t& tokenCount) const {
        tokenCount = 1;
        if (cur().kind != Tok::Punct) return "";
        if (atPunct(">")) {
            if (atShiftAssign()) return "";  // leave for assignment
            if (ahead(1).text == ">" && adjacent(1)) {
                if (ahead(2).text == ">" && adjacent(2)) {
                    tokenCount = 3;
                    return ">>>";
                }
                tokenCount = 2;
                return ">>";
            }
            if (ahead(1).text == "=" && adjacent(1)) {
                tokenCount = 2;
                return ">=";
            }
            return ">";
        }
        return cur().text;
    }

    SynNode binary(int level) {
        if (level > kLevels) return unary();
        SynNode lhs = binary(level + 1);
        for (;;) {
            if (atIdent("instanceof") && level == 6) {
                next();
                SynNode io{Syn::InstanceOf, lhs.line};
                io.a = typeRef();
                io.kids.push_back(std::move(lhs));
                lhs = std::move(io);
                continue;
            }
            std::size_t count = 0;
            std::string op = peekBinaryOp(count);
            if (op.empty() || levelOf(op) != level) break;
            for (std::size_t k = 0; k < count; ++k) next();
            SynNode b{Syn::Binary, lhs.line};
            b.a = op;
            b.kids.push_back(std::move(lhs));
            b.kids.push_back(binary(level + 1));
            lhs = std::move(b);
        }
        return lhs;
    }

    bool castAhead() {
        // '(' Type ')' followed by something that can begin a unary expression
        if (!atPunct("(")) return false;
        std::size_t m = mark();
        next();
        auto type = tryTypeRef();
        bool ok = false;
        if (type && atPunct(")")) {
            const Token& after = ahead(1);
            bool primitive = isPrimitive(*type);
            if (after.kind == Tok::Ident || after.kind == Tok::Number || after.kind == Tok::StringLit ||
                after.kind == Tok::CharLit) {
                // '(name) - x' stays a subtraction; keywords like new/this are casts
                ok = primitive || after.kind != Tok::Ident || !isKeyword(after.text) ||
                     after.text == "new" || after.text == "this" || after.text == "super" ||
                     after.text == "true" || after.text == "false" || after.text == "null";
            } else if (after.kind == Tok::Punct && (after.text == "(" || after.text == "!" || after.text == "~")) {
                ok = true;
            }
        }
        rewind(m);
        return ok;
    }

    SynNode unary() {
        int line = lineHere();
        if (atPunct("++") || atPunct("--")) {
            SynNode u{Syn::Unary, line};
            u.a = cur().text;
            u.b = "pre";
            next();
            u.kids.push_back(unary());
            return u;
        }
        if (atPunct("+") || atPunct("-") || atPunct("!") || atPunct("~")) {
            SynNode u{Syn::Unary, line};
            u.a = cur().text;
            u.b = "pre";
            next();
            u.kids.push_back(unary());
            return u;
        }
        if (castAhead()) {
            SynNode c{Syn::Cast, line};
            next();  // '('
            c.a = typeRef();
            expectPunct(")");
            c.kids.push_back(unary());
            return c;
        }
        return postfix();
    }

    SynNode postfix() {
        SynNode node = primary();
        for (;;) {
            if (atPunct(".")) {
                next();
                if (atPunct("<")) {
                    if (!skipTypeArgs()) fail("malformed type arguments");
                }
                if (atIdent("class")) {
                    next();
                    SynNode cl{Syn::ClassLit, node.line};
                    cl.a = "class";
                    cl.kids.push_back(std::move(node));
                    node = std::move(cl);
                    continue;
                }
                if (atIdent("this")) {
                    next();
                    node = SynNode{Syn::This, node.line};
                    continue;
                }
                if (atIdent("new")) {  // inner-class creation: treat as plain creation
                    node = creation();
                    continue;
                }
                std::string name = expectIdent();
                if (atPunct("(")) {
                    SynNode call{Syn::Call, node.line};
                    call.a = std::move(name);
                    call.kids.push_back(std::move(node));
                    arguments(call);
                    node = std::move(call);
                } else {
                    SynNode fa{Syn::FieldAcc, node.line};
                    fa.a = std::move(name);
                    fa.kids.push_back(std::move(node));
                    node = std::move(fa);
                }
                continue;
            }
            if (atPunct("[")) {
                next();
                SynNode ai{Syn::ArrIndex, node.line};
                ai.kids.push_back(std::move(node));
                ai.kids.push_back(expr());
                expectPunct("]");
                node = std::move(ai);
                continue;
            }
            if (atPunct("::")) {
                next();
                SynNode mr{Syn::MethodRef, node.line};
                mr.a = atIdent("new") ? "new" : expectIdent();
                if (mr.a == "new") next();
                mr.kids.push_back(std::move(node));
                node = std::move(mr);
                continue;
            }
            if (atPunct("++") || atPunct("--")) {
                SynNode u{Syn::Unary, node.line};
                u.a = cur().text;
                u.b = "post";
                next();
                u.kids.push_back(std::move(node));
                node = std::move(u);
                continue;
            }
            break;
        }
        return node;
    }

    void arguments(SynNode& call) {
        expectPunct("(");
        while (!atPunct(")")) {
            if (atEnd()) fail("unterminated argument list");
            call.kids.push_back(expr());
            if (atPunct(",")) next();
        }
        next();
    }

    SynNode creation() {
        int line = lineHere();
        next();  // 'new'
        std::string type = typeRef();
        if (atPunct("<")) skipTypeArgs();  // diamond already erased by typeRef
        if (atPunct("[")) {
            SynNode na{Syn::NewArray, line};
            na.a = type;
            while (atPunct("[")) {
                next();
                if (!atPunct("]")) na.kids.push_back(expr());
                expectPunct("]");
            }
            if (atPunct("{")) na.kids.push_back(arrayInit());
            return na;
        }
        // 'new int[...]' handled above; plain constructor otherwise
        SynNode n{Syn::New, line};
        n.a = type;
        if (atPunct("(")) {
            arguments(n);
        }
        if (atPunct("{")) skipBalanced("{", "}");  // anonymous class body ignored
        return n;
    }

    bool lambdaAhead() {
        if (atAnyIdent() && ahead(1).kind == Tok::Punct && ahead(1).text == "->") return true;
        if (!atPunct("(")) return false;
        std::size_t m = mark();
        next();
        int depth = 1;
        while (depth > 0 && !atEnd()) {
            if (atPunct("(")) ++depth;
            else if (atPunct(")")) --depth;
            next();
        }
        bool arrow = atPunct("->");
        rewind(m);
        return arrow;
    }

    SynNode lambda() {
        SynNode l{Syn::Lambda, lineHere()};
        std::vector<std::string> params;
        if (atAnyIdent()) {
            params.push_back(expectIdent());
        } else {
            expectPunct("(");
            while (!atPunct(")")) {
                if (atEnd()) fail("unterminated lambda parameters");
                if (atIdent("final")) next();
                std::size_t m = mark();
                auto type = tryTypeRef();
                if (type && atAnyIdent()) {
                    params.push_back(expectIdent());
                } else {
                    rewind(m);
                    params.push_back(expectIdent());
                }
                if (atPunct(",")) next();
            }
            next();
        }
        expectPunct("->");
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) l.a += ",";
            l.a += params[i];
        }
        if (atPunct("{")) {
            l.kids.push_back(block());
        } else {
            l.kids.push_back(expr());
        }
        return l;
    }

    SynNode primary() {
        int line = lineHere();
        if (lambdaAhead()) return lambda();
        if (cur().kind == Tok::Number) {
            SynNode lit{Syn::Lit, line};
            lit.a = cur().text;
            lit.b = numberType(cur().text);
            next();
            return lit;
        }
        if (cur().kind == Tok::StringLit) {
            SynNode lit{Syn::Lit, line};
            lit.a = cur().text;
            lit.b = "String";
            next();
            return lit;
        }
        if (cur().kind == Tok::CharLit) {
            SynNode lit{Syn::Lit, line};
            lit.a = cur().text;
            lit.b = "Character";
            next();
            return lit;
        }
        if (atIdent("true") || atIdent("false")) {
            SynNode lit{Syn::Lit, line};
            lit.a = cur().text;
            lit.b = "Boolean";
            next();
            return lit;
        }
        if (atIdent("null")) {
            SynNode lit{Syn::Lit, line};
            lit.a = "null";
            lit.b = "null";
            next();
            return lit;
        }
        if (atIdent("new")) return creation();
        if (atIdent("this")) {
            next();
            if (atPunct("(")) {  // this(...) delegate call
                SynNode call{Syn::Call, line};
                call.a = "this";
                call.kids.push_back(SynNode{Syn::NoCaller, line});
                arguments(call);
                return call;
            }
            return SynNode{Syn::This, line};
        }
        if (atIdent("super")) {
            next();
            if (atPunct("(")) {
                SynNode call{Syn::Call, line};
                call.a = "super";
                call.kids.push_back(SynNode{Syn::NoCaller, line});
                arguments(call);
                return call;
            }
            return SynNode{Syn::Super, line};
        }
        if (cur().kind == Tok::Ident && isPrimitive(cur().text)) {
            // e.g. int.class
            SynNode n{Syn::Name, line};
            n.a = cur().text;
            next();
            return n;
        }
        if (atAnyIdent()) {
            std::string name = cur().text;
            next();
            if (atPunct("(")) {
                SynNode call{Syn::Call, line};
                call.a = std::move(name);
                call.kids.push_back(SynNode{Syn::NoCaller, line});
                arguments(call);
                return call;
            }
            SynNode n{Syn::Name, line};
            n.a = std::move(name);
            return n;
        }
        if (atPunct("(")) {
            next();
            SynNode inner = expr();
            expectPunct(")");
            return inner;
        }
        fail("expected expression");
    }

    static std::string numberType(const std::string& text) {
        bool hex = text.size() > 1 && (text[1] == 'x' || text[1] == 'X');
        char suffix = text.empty() ? '\0' : text.back();
        if (suffix == 'l' || suffix == 'L') return "Long";
        if (!hex && (suffix == 'f' || suffix == 'F')) return "Float";
        if (!hex && (suffix == 'd' || suffix == 'D')) return "Double";
        if (!hex && (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
                     text.find('E') != std::string::npos)) {
            return "Double";
        }
        return "Integer";
    }
};

}  // namespace

SynNode parseUnit(const std::string& source) { return Parser(source).unit(); }
SynNode parseMembers(const std::string& source) { return Parser(source).members(); }
SynNode parseStatements(const std::string& source) { return Parser(source).statements(); }

}  // namespace failscen::java
