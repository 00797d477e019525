#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "failscen/java/parser.hpp"

using failscen::java::parseMembers;
using failscen::java::parseStatements;
using failscen::java::parseUnit;
using failscen::java::ParseError;
using failscen::java::Syn;
using failscen::java::SynNode;

namespace {

const SynNode& only(const SynNode& n) {
    REQUIRE(n.kids.size() == 1);
    return n.kids[0];
}

// first statement of a one-class, one-method unit body
const SynNode& methodBody(const SynNode& unit) {
    const SynNode& cls = only(unit);
    REQUIRE(cls.kind == Syn::ClassDecl);
    const SynNode& m = cls.kids[0];
    REQUIRE((m.kind == Syn::MethodDecl || m.kind == Syn::CtorDecl));
    REQUIRE(m.kids.back().kind == Syn::Block);
    return m.kids.back();
}

}  // namespace

TEST_CASE("whole compilation unit with package and imports") {
    const char* src = R"(
package com.example.app;

import java.util.List;
import java.util.ArrayList;

public class Box {
    private int size;

    public Box(int size) {
        this.size = size;
    }

    public int getSize() { return size; }
}
)";
    SynNode unit = parseUnit(src);
    REQUIRE(unit.kind == Syn::Unit);
    const SynNode& cls = only(unit);
    CHECK(cls.a == "Box");
    REQUIRE(cls.kids.size() == 3);
    CHECK(cls.kids[0].kind == Syn::FieldDecl);
    CHECK(cls.kids[0].b == "int");
    CHECK(cls.kids[1].kind == Syn::CtorDecl);
    CHECK(cls.kids[2].kind == Syn::MethodDecl);
    CHECK(cls.kids[2].a == "getSize");
    CHECK(cls.kids[2].b == "int");
}

TEST_CASE("statement shapes: declaration, for-each, if, calls") {
    SynNode block = parseStatements(R"(
List<User> list = new ArrayList<User>();
list.add(user);
for (User u : list) {
    if (u.getName().equals("x")) {
        list.remove(u);
    }
}
)");
    REQUIRE(block.kids.size() == 3);

    const SynNode& decl = block.kids[0];
    CHECK(decl.kind == Syn::LocalDecl);
    CHECK(decl.b == "List");  // type arguments are erased
    REQUIRE(decl.kids.size() == 1);
    CHECK(decl.kids[0].a == "list");
    const SynNode& init = decl.kids[0].kids[0];
    CHECK(init.kind == Syn::New);
    CHECK(init.a == "ArrayList");

    const SynNode& add = only(block.kids[1]);
    CHECK(add.kind == Syn::Call);
    CHECK(add.a == "add");
    REQUIRE(add.kids.size() == 2);
    CHECK(add.kids[0].kind == Syn::Name);
    CHECK(add.kids[0].a == "list");

    const SynNode& loop = block.kids[2];
    REQUIRE(loop.kind == Syn::ForEach);
    CHECK(loop.a == "u");
    CHECK(loop.b == "User");
    CHECK(loop.kids[0].a == "list");
    const SynNode& ifs = only(loop.kids[1]);
    REQUIRE(ifs.kind == Syn::If);
    const SynNode& cond = ifs.kids[0];
    REQUIRE(cond.kind == Syn::Call);
    CHECK(cond.a == "equals");
    REQUIRE(cond.kids.size() == 2);
    CHECK(cond.kids[0].kind == Syn::Call);
    CHECK(cond.kids[0].a == "getName");
    CHECK(cond.kids[1].kind == Syn::Lit);
    CHECK(cond.kids[1].b == "String");
}

TEST_CASE("classic for, while, do-while headers") {
    SynNode block = parseStatements(R"(
for (int i = 0; i < n; i++) { sum += i; }
while (it.hasNext()) { it.next(); }
do { x--; } while (x > 0);
for (;;) { break; }
)");
    REQUIRE(block.kids.size() == 4);
    const SynNode& f = block.kids[0];
    REQUIRE(f.kind == Syn::For);
    REQUIRE(f.kids.size() == 4);
    CHECK(f.kids[0].kind == Syn::ForInit);
    CHECK(f.kids[0].kids[0].kind == Syn::LocalDecl);
    CHECK(f.kids[1].kind == Syn::Binary);
    CHECK(f.kids[1].a == "<");
    CHECK(f.kids[2].kind == Syn::ForUpdate);
    CHECK(block.kids[1].kind == Syn::While);
    CHECK(block.kids[2].kind == Syn::DoWhile);
    const SynNode& bare = block.kids[3];
    REQUIRE(bare.kind == Syn::For);
    CHECK(bare.kids[0].kids.empty());
    CHECK(bare.kids[1].kind == Syn::Empty);
}

TEST_CASE("lambda and method chain over multiple lines") {
    SynNode block = parseStatements(
        "Table table = delegate.getTable(databaseName, tableName)\n"
        "    .orElseThrow(() -> new TableNotFoundException(new SchemaTableName(databaseName, tableName)));\n");
    const SynNode& decl = block.kids[0];
    REQUIRE(decl.kind == Syn::LocalDecl);
    const SynNode& chain = decl.kids[0].kids[0];
    REQUIRE(chain.kind == Syn::Call);
    CHECK(chain.a == "orElseThrow");
    REQUIRE(chain.kids.size() == 2);
    CHECK(chain.kids[0].a == "getTable");
    const SynNode& lam = chain.kids[1];
    REQUIRE(lam.kind == Syn::Lambda);
    const SynNode& body = lam.kids[0];
    REQUIRE(body.kind == Syn::New);
    CHECK(body.a == "TableNotFoundException");
    REQUIRE(body.kids.size() == 1);
    CHECK(body.kids[0].kind == Syn::New);
    CHECK(body.kids[0].a == "SchemaTableName");
}

TEST_CASE("qualified types and nested generics erase cleanly") {
    SynNode block = parseStatements(
        "org.apache.hadoop.hive.metastore.api.Table t = null;\n"
        "Map<String, List<Integer>> m = new HashMap<>();\n"
        "int[] a = new int[10];\n");
    CHECK(block.kids[0].b == "org.apache.hadoop.hive.metastore.api.Table");
    CHECK(block.kids[1].b == "Map");
    const SynNode& arr = block.kids[2];
    CHECK(arr.b == "int[]");
    CHECK(arr.kids[0].kids[0].kind == Syn::NewArray);
}

TEST_CASE("shift operators survive single-angle lexing") {
    SynNode block = parseStatements(
        "int x = a >> 2;\n"
        "int y = b >>> 3;\n"
        "int z = c >> d >> e;\n"
        "x >>= 1;\n"
        "boolean g = p > q;\n");
    auto initOf = [](const SynNode& s) -> const SynNode& {
        return s.kids[0].kids[0];
    };
    CHECK(initOf(block.kids[0]).a == ">>");
    CHECK(initOf(block.kids[1]).a == ">>>");
    const SynNode& zz = initOf(block.kids[2]);
    CHECK(zz.a == ">>");
    CHECK(zz.kids[0].a == ">>");
    const SynNode& asn = only(block.kids[3]);
    REQUIRE(asn.kind == Syn::Assign);
    CHECK(asn.a == ">>=");
    CHECK(initOf(block.kids[4]).a == ">");
}

TEST_CASE("casts versus parenthesized expressions") {
    SynNode block = parseStatements(
        "Object o = (User) x;\n"
        "int k = (a) - b;\n");
    const SynNode& cast = block.kids[0].kids[0].kids[0];
    REQUIRE(cast.kind == Syn::Cast);
    CHECK(cast.a == "User");
    const SynNode& sub = block.kids[1].kids[0].kids[0];
    REQUIRE(sub.kind == Syn::Binary);
    CHECK(sub.a == "-");
}

TEST_CASE("switch, try/catch, synchronized, ternary, instanceof") {
    SynNode block = parseStatements(R"(
switch (k) {
    case 1: a(); break;
    case 2: b(); break;
    default: c();
}
try (FileReader r = new FileReader(f)) {
    use(r);
} catch (IOException | RuntimeException e) {
    log(e);
} finally {
    done();
}
synchronized (lock) { touch(); }
int v = flag ? 1 : 2;
boolean inst = o instanceof String;
)");
    REQUIRE(block.kids.size() == 5);
    const SynNode& sw = block.kids[0];
    REQUIRE(sw.kind == Syn::Switch);
    REQUIRE(sw.kids.size() == 4);  // selector + three arms
    CHECK(sw.kids[1].a == "case");
    CHECK(sw.kids[3].a == "default");

    const SynNode& tr = block.kids[1];
    REQUIRE(tr.kind == Syn::Try);
    REQUIRE(tr.kids.size() == 3);
    CHECK(tr.kids[0].kind == Syn::Block);
    CHECK(tr.kids[0].kids[0].kind == Syn::LocalDecl);  // resource prepended
    CHECK(tr.kids[1].kind == Syn::Catch);
    CHECK(tr.kids[1].b == "IOException");  // first type of a multi-catch wins
    CHECK(tr.kids[1].a == "e");
    CHECK(tr.kids[2].kind == Syn::Finally);

    CHECK(block.kids[2].kind == Syn::Sync);
    CHECK(block.kids[3].kids[0].kids[0].kind == Syn::Ternary);
    CHECK(block.kids[4].kids[0].kids[0].kind == Syn::InstanceOf);
}

TEST_CASE("line numbers are 1-based source lines") {
    SynNode block = parseStatements("a();\n\nb();\nfor (X x : xs) {\n  c();\n}\n");
    CHECK(block.kids[0].line == 1);
    CHECK(block.kids[1].line == 3);
    CHECK(block.kids[2].line == 4);
    CHECK(only(block.kids[2].kids[1]).line == 5);
}

TEST_CASE("member list without a class wrapper") {
    SynNode members = parseMembers(
        "private final List<User> users = new ArrayList<>();\n"
        "void add(User u) { users.add(u); }\n");
    REQUIRE(members.kids.size() == 2);
    CHECK(members.kids[0].kind == Syn::FieldDecl);
    CHECK(members.kids[1].kind == Syn::MethodDecl);
}

TEST_CASE("receiverless calls are flagged") {
    SynNode block = parseStatements("verify(this, a);\n");
    const SynNode& call = only(block.kids[0]);
    REQUIRE(call.kind == Syn::Call);
    REQUIRE(call.kids.size() == 3);
    CHECK(call.kids[0].kind == Syn::NoCaller);
    CHECK(call.kids[1].kind == Syn::This);
}

TEST_CASE("literals carry their type") {
    SynNode block = parseStatements(
        "long a = 1l;\n"
        "double b = 2.5;\n"
        "float c = 3f;\n"
        "char d = 'x';\n"
        "boolean e = true;\n"
        "String f = \"hi\";\n"
        "Object g = null;\n");
    auto litType = [&](int i) { return block.kids[i].kids[0].kids[0].b; };
    CHECK(litType(0) == "Long");
    CHECK(litType(1) == "Double");
    CHECK(litType(2) == "Float");
    CHECK(litType(3) == "Character");
    CHECK(litType(4) == "Boolean");
    CHECK(litType(5) == "String");
    CHECK(litType(6) == "null");
}

TEST_CASE("array access, field access, method references") {
    SynNode block = parseStatements(
        "int x = arr[i + 1];\n"
        "System.out.println(msg);\n"
        "list.forEach(System.out::println);\n");
    const SynNode& idx = block.kids[0].kids[0].kids[0];
    REQUIRE(idx.kind == Syn::ArrIndex);
    CHECK(idx.kids[1].kind == Syn::Binary);

    const SynNode& println = only(block.kids[1]);
    REQUIRE(println.kind == Syn::Call);
    CHECK(println.a == "println");
    const SynNode& recv = println.kids[0];
    REQUIRE(recv.kind == Syn::FieldAcc);
    CHECK(recv.a == "out");
    CHECK(recv.kids[0].a == "System");

    const SynNode& fe = only(block.kids[2]);
    CHECK(fe.kids[1].kind == Syn::MethodRef);
}

TEST_CASE("whole-file parse of a realistic service class") {
    const char* src = R"(
package com.example.store;

import java.util.Optional;

public class MetaService {
    private final Delegate delegate;

    public MetaService(Delegate delegate) {
        this.delegate = delegate;
    }

    public void dropColumn(String databaseName, String tableName, String columnName)
    {
        verifyCanDropColumn(this, databaseName, tableName, columnName);
        Table table = delegate.getTable(databaseName, tableName)
                .orElseThrow(() -> new TableNotFoundException(new SchemaTableName(databaseName, tableName)));
        for (FieldSchema fieldSchema : table.getSd().getCols()) {
            if (fieldSchema.getName().equals(columnName)) {
                table.getSd().getCols().remove(fieldSchema);
            }
        }
        alterTable(databaseName, tableName, table);
    }
}
)";
    SynNode unit = parseUnit(src);
    const SynNode& cls = only(unit);
    REQUIRE(cls.kids.size() == 3);
    const SynNode& drop = cls.kids[2];
    CHECK(drop.a == "dropColumn");
    const SynNode& body = drop.kids.back();
    REQUIRE(body.kids.size() == 4);
    CHECK(body.kids[0].kind == Syn::ExprStmt);
    CHECK(body.kids[1].kind == Syn::LocalDecl);
    CHECK(body.kids[2].kind == Syn::ForEach);
    CHECK(body.kids[3].kind == Syn::ExprStmt);
}

TEST_CASE("parse failures throw with a line") {
    CHECK_THROWS_AS(parseUnit("class X { void f( }"), ParseError);
    CHECK_THROWS_AS(parseStatements("if (a {"), ParseError);
    try {
        parseStatements("a();\nb(;\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("statements entry rejects member syntax") {
    CHECK_THROWS_AS(parseStatements("void f() { }"), ParseError);
}

TEST_CASE("unit entry rejects bare statements") {
    CHECK_THROWS_AS(parseUnit("int x = 1;"), ParseError);
}

TEST_CASE("whole input must be consumed") {
    CHECK_THROWS_AS(parseStatements("a(); }"), ParseError);
}

TEST_CASE("unit body of wrapped statements keeps line offsets stable") {
    SynNode unit = parseUnit("class __Snippet__ { void __snippet__() {\nint x = 1;\nx++;\n} }");
    const SynNode& body = methodBody(unit);
    REQUIRE(body.kids.size() == 2);
    CHECK(body.kids[0].line == 2);
    CHECK(body.kids[1].line == 3);
}
