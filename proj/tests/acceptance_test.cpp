// Acceptance gate: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "failscen/align.hpp"
#include "failscen/cli.hpp"
#include "failscen/corpus.hpp"
#include "failscen/java/parser.hpp"
#include "failscen/localize.hpp"
#include "failscen/match.hpp"
#include "failscen/pipeline.hpp"
#include "failscen/store.hpp"
#include "failscen/util.hpp"
#include "support/random_trees.hpp"
#include "support/snippets.hpp"
#include "support/ted_oracle.hpp"

using namespace failscen;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kCme = "ConcurrentModificationException";

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string tempPath(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

double secondsSince(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult runCli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"failscen"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::map<std::string, std::string>> kvRows(const std::string& text) {
    std::vector<std::map<std::string, std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::map<std::string, std::string> kv;
        std::istringstream fields(line);
        std::string tok;
        while (fields >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) return {};
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        rows.push_back(std::move(kv));
    }
    return rows;
}

std::string joinConstructs(const model::AbstractTree& t) {
    std::string out;
    for (const auto& n : t.nodes) {
        if (!out.empty()) out += ", ";
        out += model::constructOf(n);
    }
    return out;
}

// ---------------------------------------------------------------- criterion 1
// End-to-end worked example: two-post corpus, failing line 216, post
// 21973342 strictly first under default weights; raw-count scores exactly
// 16 and 2.5; all inside five seconds.
bool crit1(std::string& detail) {
    auto t0 = Clock::now();
    std::string storePath = tempPath("failscen_acc1.store");
    auto idx = runCli({"index", "--corpus", fixture("corpus_cme.jsonl"), "--out", storePath});
    if (idx.code != 0) {
        detail = "index failed: " + idx.err;
        return false;
    }
    auto q = runCli({"query", "--file", fixture("buggy_drop_column.java"), "--line", "216",
                     "--exception", kCme, "--store", storePath, "--top", "2"});
    auto rows = kvRows(q.out);
    if (q.code != 0 || rows.size() != 2) {
        detail = "query failed: " + q.err;
        return false;
    }
    if (rows[0].at("postId") != "21973342" || rows[1].at("postId") != "2054189") {
        detail = "wrong order: " + rows[0].at("postId") + " before " + rows[1].at("postId");
        return false;
    }
    if (!(std::stod(rows[0].at("score")) > std::stod(rows[1].at("score")))) {
        detail = "scores not strictly ordered: " + rows[0].at("score") + " vs " +
                 rows[1].at("score");
        return false;
    }
    auto raw = runCli({"query", "--file", fixture("buggy_drop_column.java"), "--line", "216",
                       "--exception", kCme, "--store", storePath, "--top", "2", "--raw-counts",
                       "--weights", "1,2,0.5,0"});
    auto rawRows = kvRows(raw.out);
    if (raw.code != 0 || rawRows.size() != 2) {
        detail = "raw query failed: " + raw.err;
        return false;
    }
    if (rawRows[0].at("score") != "16" || rawRows[1].at("score") != "2.5") {
        detail = "raw scores " + rawRows[0].at("score") + " and " + rawRows[1].at("score") +
                 ", expected 16 and 2.5";
        return false;
    }
    std::filesystem::remove(storePath);
    double secs = secondsSince(t0);
    if (secs >= 5.0) {
        detail = "took " + std::to_string(secs) + "s, budget 5s";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 2
// The localized pattern of the worked example keeps exactly the loop /
// if-condition / remove skeleton and drops every construction statement.
bool crit2(std::string& detail) {
    auto question = pipeline::buildTree(snippets::kQuestionMain);
    auto answer = pipeline::buildTree(snippets::kIteratorAnswer);
    auto pats = local::localize({question}, {answer}, {"21973342", kCme, 30});
    if (pats.size() != 1) {
        detail = "expected one pattern, got " + std::to_string(pats.size());
        return false;
    }
    const auto& t = pats[0].tree;

    const std::vector<std::string> expectConstructs = {"root",           "loop",
                                                       "if",             "method:equals",
                                                       "method:getName", "method:remove"};
    const std::vector<int> expectLines = {-1, 11, 13, 13, 13, 14};
    const std::vector<std::vector<int>> expectKids = {{1}, {2}, {3, 5}, {4}, {}, {}};

    if (t.nodes.size() != expectConstructs.size()) {
        detail = "pattern has " + std::to_string(t.nodes.size()) + " nodes: " + joinConstructs(t);
        return false;
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (model::constructOf(t.nodes[i]) != expectConstructs[i]) {
            detail = "node " + std::to_string(i) + " is " + model::constructOf(t.nodes[i]) +
                     ", expected " + expectConstructs[i];
            return false;
        }
        if (t.nodes[i].line != expectLines[i]) {
            detail = "node " + std::to_string(i) + " line " + std::to_string(t.nodes[i].line) +
                     ", expected " + std::to_string(expectLines[i]);
            return false;
        }
        if (t.nodes[i].kids != expectKids[i]) {
            detail = "node " + std::to_string(i) + " has unexpected children";
            return false;
        }
    }
    // Every user-construction statement of the question must be pruned.
    for (const auto& n : t.nodes) {
        std::string c = model::constructOf(n);
        if (c == "declare:appClass" || c == "declare:Collection" || c == "method:add" ||
            c == "method:println") {
            detail = "construction statement survived: " + c;
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3
// Alignment cost equals the exhaustive oracle on 1,000 random pairs.
bool crit3(std::string& detail) {
    auto t0 = Clock::now();
    std::mt19937 rng(987654321);
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
        auto t1 = testsupport::randomTree(rng, 6);
        auto t2 = testsupport::randomTree(rng, 6);
        double got = align::alignTrees(t1, t2).cost;
        double want = testsupport::TedOracle(t1, t2).distance();
        if (got != want) {
            detail = "trial " + std::to_string(i) + ": cost " + std::to_string(got) +
                     ", oracle " + std::to_string(want);
            return false;
        }
    }
    double secs = secondsSince(t0);
    if (secs >= 60.0) {
        detail = "took " + std::to_string(secs) + "s, budget 60s";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 4
// Canonicalization: loop and branch syntaxes collapse, primitives map to
// wrappers, collection classes to Collection, unknowns to appClass, and a
// repeated two-call chain is hoisted into a temporary.
bool crit4(std::string& detail) {
    using model::NodeKind;
    using model::SyntaxForm;

    auto findKind = [](const model::AbstractTree& t, NodeKind k) -> const model::AtNode* {
        for (const auto& n : t.nodes)
            if (n.kind == k) return &n;
        return nullptr;
    };

    const std::pair<const char*, SyntaxForm> loops[] = {
        {"for (int i = 0; i < 10; i = i + 1) { use(i); }", SyntaxForm::ForClassic},
        {"for (String s : names) { use(s); }", SyntaxForm::ForEachLoop},
        {"while (flag) { step(); }", SyntaxForm::WhileLoop},
        {"do { step(); } while (flag);", SyntaxForm::DoWhileLoop},
    };
    for (const auto& [snippet, form] : loops) {
        auto t = pipeline::buildTree(snippet);
        const auto* n = findKind(t, NodeKind::Loop);
        if (!n || n->form != form) {
            detail = std::string("loop not canonical for: ") + snippet;
            return false;
        }
    }

    const std::pair<const char*, SyntaxForm> branches[] = {
        {"if (flag) { a(); }", SyntaxForm::PlainIf},
        {"int y = flag ? 1 : 2;", SyntaxForm::TernaryIf},
        {"switch (k) { case 1: a(); break; }", SyntaxForm::SwitchIf},
    };
    for (const auto& [snippet, form] : branches) {
        auto t = pipeline::buildTree(snippet);
        const auto* n = findKind(t, NodeKind::If);
        if (!n || n->form != form) {
            detail = std::string("branch not canonical for: ") + snippet;
            return false;
        }
    }

    const std::pair<const char*, const char*> wrappers[] = {
        {"int a = 1;", "declare:Integer"},          {"long a = 1l;", "declare:Long"},
        {"double a = 1.0;", "declare:Double"},      {"float a = 1.0f;", "declare:Float"},
        {"boolean a = true;", "declare:Boolean"},   {"char a = 'c';", "declare:Character"},
        {"byte a = 1;", "declare:Byte"},            {"short a = 1;", "declare:Short"},
    };
    for (const auto& [snippet, construct] : wrappers) {
        auto t = pipeline::buildTree(snippet);
        const auto* n = findKind(t, NodeKind::Declare);
        if (!n || model::constructOf(*n) != construct) {
            detail = std::string("wrapper mapping failed for: ") + snippet + " (got " +
                     (n ? model::constructOf(*n) : "no declare node") + ")";
            return false;
        }
    }

    const char* collections[] = {
        "ArrayList<String> xs = new ArrayList<String>();",
        "HashMap<String, Integer> m = new HashMap<String, Integer>();",
        "List<String> ys;",
    };
    for (const char* snippet : collections) {
        auto t = pipeline::buildTree(snippet);
        const auto* n = findKind(t, NodeKind::Declare);
        if (!n || model::constructOf(*n) != "declare:Collection") {
            detail = std::string("collection mapping failed for: ") + snippet;
            return false;
        }
    }
    {
        auto t = pipeline::buildTree("FooBar f = new FooBar();");
        const auto* n = findKind(t, NodeKind::Declare);
        if (!n || model::constructOf(*n) != "declare:appClass") {
            detail = "unresolvable class did not map to appClass";
            return false;
        }
    }
    {
        auto t = pipeline::buildTree("obj.first().second().run();\nobj.first().second().stop();");
        int refs = 0;
        for (const auto& n : t.nodes)
            for (const auto& v : model::varsOf(n))
                if (v.name == "$t1") ++refs;
        if (refs < 2) {
            detail = "repeated two-call chain was not hoisted into $t1 on both statements";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5
// Heuristic properties over 10,000 random trials.
bool crit5(std::string& detail) {
    std::mt19937 rng(24681357);
    std::uniform_real_distribution<double> weight(0.05, 3.0);
    std::uniform_int_distribution<int> sizePick(1, 40);
    const double scales[] = {0.5, 2.0, 4.0};
    const int trials = 10000;

    for (int i = 0; i < trials; ++i) {
        auto buggy = testsupport::randomTree(rng, 8);
        auto pat1 = testsupport::randomTree(rng, 8);
        auto pat2 = testsupport::randomTree(rng, 8);

        auto al = align::alignTrees(buggy, pat1);
        double c = match::constructSim(al);
        double t = match::typeSim(al);
        double v = match::varUseSim(al, pat1, buggy);
        double s = match::sizeSim(static_cast<int>(pat1.nodes.size()),
                                  static_cast<int>(buggy.nodes.size()));
        for (double x : {c, t, v, s}) {
            if (!(x >= 0.0 && x <= 1.0 + 1e-9)) {
                detail = "trial " + std::to_string(i) + ": heuristic out of range: " +
                         std::to_string(x);
                return false;
            }
        }
        bool hasMatch = false;
        for (const auto& m : al.matches)
            if (!(m.a == 0 && m.b == 0)) hasMatch = true;
        if (hasMatch && std::fabs(c + t - 1.0) > 1e-9) {
            detail = "trial " + std::to_string(i) + ": C+T = " + std::to_string(c + t);
            return false;
        }

        int a = sizePick(rng), b = sizePick(rng);
        if (match::sizeSim(a, b) != match::sizeSim(b, a) || match::sizeSim(a, a) != 1.0) {
            detail = "sizeSim symmetry/identity violated at " + std::to_string(a) + "," +
                     std::to_string(b);
            return false;
        }

        match::Weights w{weight(rng), weight(rng), weight(rng), weight(rng)};
        double k = scales[i % 3];
        match::Weights wk{w.construct * k, w.type * k, w.varUse * k, w.size * k};
        int ideal = std::max<int>(1, static_cast<int>(buggy.nodes.size()));
        double s1 = match::scoreAgainst(buggy, {}, pat1, ideal, w).score;
        double s2 = match::scoreAgainst(buggy, {}, pat2, ideal, w).score;
        double s1k = match::scoreAgainst(buggy, {}, pat1, ideal, wk).score;
        double s2k = match::scoreAgainst(buggy, {}, pat2, ideal, wk).score;
        auto cmp = [](double x, double y) { return x < y ? -1 : x > y ? 1 : 0; };
        if (cmp(s1, s2) != cmp(s1k, s2k)) {
            detail = "trial " + std::to_string(i) + ": scaling by " + std::to_string(k) +
                     " reordered " + std::to_string(s1) + "/" + std::to_string(s2);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 6
// Index determinism over a 20-post synthetic corpus: byte-identical
// rebuilds, save/load equality, medians consistent with the patterns.
bool crit6(std::string& detail) {
    const char* types[] = {"ConcurrentModificationException", "NullPointerException",
                           "IndexOutOfBoundsException", "IllegalStateException",
                           "ClassCastException"};
    std::vector<corpus::PostRecord> posts;
    for (int i = 0; i < 20; ++i) {
        corpus::PostRecord p;
        p.postId = std::to_string(5000 + i);
        p.title = std::string(types[i % 5]) + " while processing batch " + std::to_string(i);
        p.tags = {i % 7 == 0 ? "android" : "java"};
        p.votes = (i * 13) % 37;
        std::string n = std::to_string(i);
        p.questionSnippets = {"List<String> xs" + n + " = new ArrayList<String>();\n" +
                              "for (String s : xs" + n + ") {\n" +
                              "    if (s.length() > " + n + ") {\n" +
                              "        xs" + n + ".remove(s);\n    }\n}\n"};
        corpus::AnswerRecord a;
        a.snippets = {"Iterator<String> it = xs" + n + ".iterator();\n" +
                      "while (it.hasNext()) {\n" +
                      "    if (it.next().length() > " + n + ") {\n" +
                      "        it.remove();\n    }\n}\n"};
        a.votes = (i * 7) % 23;
        p.answers = {a};
        if (i % 4 == 0) {
            corpus::AnswerRecord b;
            b.snippets = {"xs" + n + ".clear();\n"};
            b.votes = 2;
            p.answers.push_back(b);
        }
        posts.push_back(std::move(p));
    }

    auto known = corpus::defaultExceptionTypes();
    store::IndexStats st1, st2;
    auto s1 = store::buildIndex(posts, known, &st1, 20260822);
    auto s2 = store::buildIndex(posts, known, &st2, 20260822);
    if (st1.accepted != 20) {
        detail = "expected all 20 posts accepted, got " + std::to_string(st1.accepted);
        return false;
    }
    std::string b1 = store::encodeStore(s1);
    std::string b2 = store::encodeStore(s2);
    if (b1 != b2) {
        detail = "two builds differ (" + std::to_string(b1.size()) + " vs " +
                 std::to_string(b2.size()) + " bytes)";
        return false;
    }
    std::string path = tempPath("failscen_acc6.store");
    store::saveStore(s1, path);
    auto loaded = store::loadStore(path);
    std::filesystem::remove(path);
    if (!(loaded == s1)) {
        detail = "save/load round-trip changed the store";
        return false;
    }
    for (const auto& [type, pats] : s1.patternsByType) {
        std::vector<int> sizes;
        for (const auto& p : pats) sizes.push_back(p.size());
        if (store::lowerMedian(sizes) != s1.medianSizeByType.at(type)) {
            detail = "median mismatch for " + type;
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 7
// Metric arithmetic on the 78-entry rating sheet.
bool crit7(std::string& detail) {
    auto r = runCli({"score-ratings", "--sheet", fixture("ratings_overall.tsv")});
    if (r.code != 0) {
        detail = "score-ratings failed: " + r.err;
        return false;
    }
    const std::pair<const char*, double> expected[] = {
        {"I-score=", 0.40}, {"IH-score=", 0.71}, {"M-score=", 0.26}};
    for (const auto& [key, want] : expected) {
        auto pos = r.out.find(key);
        if (pos == std::string::npos) {
            detail = std::string("missing ") + key + " line";
            return false;
        }
        double got = std::stod(r.out.substr(pos + std::string(key).size()));
        if (std::fabs(got - want) > 0.005) {
            detail = std::string(key) + std::to_string(got) + ", expected " +
                     std::to_string(want) + " ±0.005";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8
// Median query latency over a 1,000-pattern store stays within 3 seconds.
bool crit8(std::string& detail) {
    std::mt19937 rng(1357924680);
    store::PatternStore s;
    auto& bucket = s.patternsByType[kCme];
    std::vector<int> sizes;
    for (int i = 0; i < 1000; ++i) {
        int size = 3 + i % 18;  // 3..20
        local::Pattern p;
        p.tree = testsupport::sizedRandomTree(rng, size);
        p.fullTree = p.tree;
        p.postId = std::to_string(100000 + i);
        p.exceptionType = kCme;
        p.votes = (i * 11) % 53;
        bucket.push_back(std::move(p));
        sizes.push_back(size);
    }
    s.medianSizeByType[kCme] = store::lowerMedian(sizes);

    std::string src = util::readFile(fixture("buggy_drop_column.java"));
    match::QueryOptions opts;
    opts.topK = 5;
    std::vector<double> times;
    for (int run = 0; run < 5; ++run) {
        auto t0 = Clock::now();
        auto rows = match::rankPosts(src, 216, kCme, s, opts);
        times.push_back(secondsSince(t0));
        if (rows.size() != 5) {
            detail = "expected 5 results, got " + std::to_string(rows.size());
            return false;
        }
    }
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    if (median > 3.0) {
        detail = "median query took " + std::to_string(median) + "s, budget 3s";
        return false;
    }
    detail.clear();
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {"end-to-end worked-example fixture (ranking + raw scores 16 / 2.5)", crit1},
        {"localized pattern keeps the loop/if/remove skeleton node-by-node", crit2},
        {"alignment cost equals the exhaustive oracle on 1,000 random pairs", crit3},
        {"canonicalization: loops, branches, wrappers, collections, appClass, $t1", crit4},
        {"heuristic range/partition/symmetry/scaling properties, 10,000 trials", crit5},
        {"index determinism, round-trip equality, median consistency (20 posts)", crit6},
        {"rating-sheet metrics reproduce 0.40 / 0.71 / 0.26 within 0.005", crit7},
        {"median query latency over a 1,000-pattern store within 3 s", crit8},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        auto t0 = Clock::now();
        try {
            ok = criteria[i].fn(detail);
        } catch (const java::ParseError& e) {
            detail = "parse error at line " + std::to_string(e.line) + ": " + e.message;
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secondsSince(t0));
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].name << " ("
                  << timing << ")";
        if (!ok && !detail.empty()) std::cout << " — " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }
    if (failures) std::cout << failures << " of " << criteria.size() << " criteria failed\n";
    return failures == 0 ? 0 : 1;
}
