#include "failscen/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "failscen/corpus.hpp"
#include "failscen/errors.hpp"
#include "failscen/java/parser.hpp"
#include "failscen/match.hpp"
#include "failscen/ratings.hpp"
#include "failscen/store.hpp"
#include "failscen/util.hpp"

namespace failscen::cli {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string num2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

match::Weights parseWeights(const std::string& spec) {
    std::istringstream in(spec);
    double w[4];
    char sep = ',';
    for (int i = 0; i < 4; ++i) {
        if (i > 0 && !(in >> sep && sep == ',')) sep = '\0';
        if (sep == '\0' || !(in >> w[i]))
            throw std::invalid_argument("--weights expects w1,w2,w3,w4 (got '" + spec + "')");
    }
    std::string rest;
    if (in >> rest)
        throw std::invalid_argument("--weights expects exactly four values (got '" + spec + "')");
    return {w[0], w[1], w[2], w[3]};
}

match::Variant parseVariant(const std::string& name) {
    if (name == "noloc") return match::Variant::NoLoc;
    if (name == "simplematch") return match::Variant::SimpleMatch;
    return match::Variant::Full;
}

int cmdIndex(const std::string& corpusPath, const std::string& outPath,
             const std::string& exceptionsPath, std::ostream& out) {
    auto types = exceptionsPath.empty() ? corpus::defaultExceptionTypes()
                                        : corpus::loadExceptionTypes(exceptionsPath);
    std::string bytes = util::readFile(corpusPath);
    std::istringstream in(bytes);
    corpus::CorpusReadStats readStats;
    auto posts = corpus::readCorpus(in, &readStats);
    store::IndexStats stats;
    auto s = store::buildIndex(posts, types, &stats, util::fnv1a64(bytes));
    store::saveStore(s, outPath);

    out << "posts: " << readStats.records << "\n";
    if (readStats.malformed) out << "malformed: " << readStats.malformed << "\n";
    out << "accepted: " << stats.accepted << "\n";
    for (const auto& [reason, n] : stats.rejectedByReason)
        out << "rejected[" << reason << "]: " << n << "\n";
    out << "patterns: " << stats.patterns << "\n";
    for (const auto& [type, n] : stats.patternsByType)
        out << "patterns[" << type << "]: " << n << "\n";
    out << "store: " << outPath << "\n";
    return kExitOk;
}

void printRows(const std::vector<match::RankedResult>& rows, bool table, std::ostream& out) {
    if (!table) {
        for (const auto& r : rows) {
            out << "rank=" << r.rank << " postId=" << r.postId
                << " score=" << num(r.breakdown.score) << " C=" << num(r.breakdown.constructScore)
                << " T=" << num(r.breakdown.typeScore) << " V=" << num(r.breakdown.varUseScore)
                << " S=" << num(r.breakdown.sizeScore) << " votes=" << r.votes << "\n";
        }
        return;
    }
    out << std::left << std::setw(6) << "rank" << std::setw(14) << "postId" << std::setw(10)
        << "score" << std::setw(8) << "C" << std::setw(8) << "T" << std::setw(8) << "V"
        << std::setw(8) << "S" << "votes\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(6) << r.rank << std::setw(14) << r.postId << std::setw(10)
            << num(r.breakdown.score) << std::setw(8) << num(r.breakdown.constructScore)
            << std::setw(8) << num(r.breakdown.typeScore) << std::setw(8)
            << num(r.breakdown.varUseScore) << std::setw(8) << num(r.breakdown.sizeScore)
            << r.votes << "\n";
    }
}

int cmdQuery(const std::string& filePath, int failingLine, const std::string& exceptionType,
             const std::string& storePath, int topK, const std::string& weightsSpec,
             const std::string& variantName, bool rawCounts, bool table, std::ostream& out,
             std::ostream& err) {
    match::QueryOptions opts;
    opts.topK = topK;
    opts.variant = parseVariant(variantName);
    opts.rawCounts = rawCounts;
    if (!weightsSpec.empty()) opts.weights = parseWeights(weightsSpec);
    else if (rawCounts) opts.weights = match::kRawCountWeights;

    auto s = store::loadStore(storePath);
    std::string src = util::readFile(filePath);
    bool wholeFile = false;
    auto rows = match::rankPosts(src, failingLine, exceptionType, s, opts, &wholeFile);
    if (wholeFile)
        err << "warning: no method encloses line " << failingLine
            << "; matching against the whole file\n";
    printRows(rows, table, out);
    return kExitOk;
}

int cmdScoreRatings(const std::string& sheetPath, std::ostream& out) {
    auto sheet = ratings::readSheetFile(sheetPath);
    auto scores = ratings::scoreSheet(sheet);
    out << "instances=" << scores.total << "\n";
    out << "I=" << sheet.count(ratings::Rating::Instrumental)
        << " H=" << sheet.count(ratings::Rating::Helpful)
        << " U=" << sheet.count(ratings::Rating::Unhelpful)
        << " M=" << sheet.count(ratings::Rating::Misleading) << "\n";
    out << "I-score=" << num2(scores.iScore) << "\n";
    out << "IH-score=" << num2(scores.ihScore) << "\n";
    out << "M-score=" << num2(scores.mScore) << "\n";
    return kExitOk;
}

int cmdConvertDump(const std::string& xmlPath, const std::string& outPath, std::ostream& out) {
    std::ifstream in(xmlPath, std::ios::binary);
    if (!in) throw IoError("cannot open dump file: " + xmlPath);
    std::ofstream jsonl(outPath, std::ios::binary);
    if (!jsonl) throw IoError("cannot open output file: " + outPath);
    int n = corpus::convertDump(in, jsonl);
    if (!jsonl.flush()) throw IoError("cannot write output file: " + outPath);
    out << "posts: " << n << "\n";
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "Matches a buggy Java snippet that raised a runtime exception against "
        "indexed Q&A posts by comparing failure scenarios."};
    app.name("failscen");
    app.require_subcommand(1);

    std::string corpusPath, outPath, exceptionsPath;
    auto* index = app.add_subcommand("index", "Build a pattern store from a JSONL corpus");
    index->add_option("--corpus", corpusPath, "Corpus file, one JSON post per line")->required();
    index->add_option("--out", outPath, "Pattern store output path")->required();
    index->add_option("--exceptions", exceptionsPath,
                      "Exception type list, one per line (default: built-in runtime types)");

    std::string filePath, exceptionType, storePath, weightsSpec, variantName = "full";
    int failingLine = 0, topK = 1;
    bool rawCounts = false, table = false;
    auto* query = app.add_subcommand("query", "Rank indexed posts against a buggy source file");
    query->add_option("--file", filePath, "Buggy Java source file")->required();
    query->add_option("--line", failingLine, "Failing line number (1-based)")
        ->required()
        ->check(CLI::PositiveNumber);
    query->add_option("--exception", exceptionType, "Exception simple name")->required();
    query->add_option("--store", storePath, "Pattern store built by 'index'")->required();
    query->add_option("--top", topK, "Posts to print (0 = all)")->capture_default_str();
    query->add_option("--weights", weightsSpec, "Heuristic weights w1,w2,w3,w4");
    query->add_option("--variant", variantName, "Scoring variant")
        ->capture_default_str()
        ->check(CLI::IsMember({"full", "noloc", "simplematch"}));
    query->add_flag("--raw-counts", rawCounts,
                    "Debug scoring over raw match counts (default weights 1,2,0.5)");
    query->add_flag("--table", table, "Human-readable table instead of key=value lines");

    std::string sheetPath;
    auto* score =
        app.add_subcommand("score-ratings", "Compute I/IH/M scores from a rating sheet");
    score->add_option("--sheet", sheetPath, "Sheet: '<instance> <I|H|U|M>' per line")->required();

    std::string xmlPath, jsonlOut;
    auto* convert =
        app.add_subcommand("convert-dump", "Convert a posts XML dump to the JSONL corpus format");
    convert->add_option("--xml", xmlPath, "Posts XML dump")->required();
    convert->add_option("--out", jsonlOut, "JSONL output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitBadArgs;
    }

    try {
        if (*index) return cmdIndex(corpusPath, outPath, exceptionsPath, out);
        if (*query)
            return cmdQuery(filePath, failingLine, exceptionType, storePath, topK, weightsSpec,
                            variantName, rawCounts, table, out, err);
        if (*score) return cmdScoreRatings(sheetPath, out);
        if (*convert) return cmdConvertDump(xmlPath, jsonlOut, out);
    } catch (const UnparseableError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnparseable;
    } catch (const NoPatternsError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNoPatterns;
    } catch (const FormatVersionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadFormat;
    } catch (const EmptySheetError& e) {
        err << "error: " << e.what() << "\n";
        return kExitEmptySheet;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const java::ParseError& e) {
        err << "error: parse failure at line " << e.line << ": " << e.message << "\n";
        return kExitUnparseable;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }
    return kExitBadArgs;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace failscen::cli
