#include "failscen/store.hpp"

#include <algorithm>
#include <cstring>

#include "failscen/errors.hpp"
#include "failscen/pipeline.hpp"
#include "failscen/util.hpp"

namespace failscen::store {

namespace {

constexpr char kMagic[4] = {'F', 'S', 'P', 'S'};
constexpr std::uint32_t kVersion = 1;

class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf_.append(s);
    }
    std::string take() { return std::move(buf_); }

private:
    std::string buf_;
};

class ByteReader {
public:
    explicit ByteReader(const std::string& bytes) : data_(bytes) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(raw(1)[0]); }
    std::uint32_t u32() {
        const char* p = raw(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        const char* p = raw(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::string str() {
        std::uint32_t n = u32();
        return std::string(raw(n), n);
    }
    bool atEnd() const { return pos_ == data_.size(); }

private:
    const char* raw(std::size_t n) {
        if (data_.size() - pos_ < n) throw FormatVersionError("truncated pattern store");
        const char* p = data_.data() + pos_;
        pos_ += n;
        return p;
    }
    const std::string& data_;
    std::size_t pos_ = 0;
};

void writeTerm(ByteWriter& w, const model::Term& t) {
    w.u8(static_cast<std::uint8_t>(t.kind));
    w.str(t.text);
    w.str(t.type);
    w.u32(static_cast<std::uint32_t>(t.kids.size()));
    for (const auto& k : t.kids) writeTerm(w, k);
}

model::Term readTerm(ByteReader& r) {
    model::Term t;
    t.kind = static_cast<model::TermKind>(r.u8());
    t.text = r.str();
    t.type = r.str();
    std::uint32_t n = r.u32();
    t.kids.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) t.kids.push_back(readTerm(r));
    return t;
}

void writeTree(ByteWriter& w, const model::AbstractTree& t) {
    w.u32(static_cast<std::uint32_t>(t.nodes.size()));
    for (const auto& n : t.nodes) {
        w.u8(static_cast<std::uint8_t>(n.kind));
        w.u8(static_cast<std::uint8_t>(n.form));
        w.str(n.tag);
        w.i32(n.line);
        w.i32(n.parent);
        w.u32(static_cast<std::uint32_t>(n.kids.size()));
        for (int k : n.kids) w.i32(k);
        w.u32(static_cast<std::uint32_t>(n.payload.size()));
        for (const auto& term : n.payload) writeTerm(w, term);
    }
    w.u32(static_cast<std::uint32_t>(t.dataEdges.size()));
    for (const auto& e : t.dataEdges) {
        w.i32(e.from);
        w.i32(e.to);
        w.u32(static_cast<std::uint32_t>(e.vars.size()));
        for (const auto& v : e.vars) {
            w.str(v.name);
            w.str(v.type);
        }
    }
    w.i32(t.tempCounter);
}

model::AbstractTree readTree(ByteReader& r) {
    model::AbstractTree t;
    std::uint32_t nodeCount = r.u32();
    t.nodes.reserve(nodeCount);
    for (std::uint32_t i = 0; i < nodeCount; ++i) {
        model::AtNode n;
        n.kind = static_cast<model::NodeKind>(r.u8());
        n.form = static_cast<model::SyntaxForm>(r.u8());
        n.tag = r.str();
        n.line = r.i32();
        n.parent = r.i32();
        std::uint32_t kidCount = r.u32();
        n.kids.reserve(kidCount);
        for (std::uint32_t k = 0; k < kidCount; ++k) n.kids.push_back(r.i32());
        std::uint32_t payloadCount = r.u32();
        n.payload.reserve(payloadCount);
        for (std::uint32_t k = 0; k < payloadCount; ++k) n.payload.push_back(readTerm(r));
        t.nodes.push_back(std::move(n));
    }
    std::uint32_t edgeCount = r.u32();
    t.dataEdges.reserve(edgeCount);
    for (std::uint32_t i = 0; i < edgeCount; ++i) {
        model::DataEdge e;
        e.from = r.i32();
        e.to = r.i32();
        std::uint32_t varCount = r.u32();
        e.vars.reserve(varCount);
        for (std::uint32_t k = 0; k < varCount; ++k) {
            model::VarUse v;
            v.name = r.str();
            v.type = r.str();
            e.vars.push_back(std::move(v));
        }
        t.dataEdges.push_back(std::move(e));
    }
    t.tempCounter = r.i32();
    return t;
}

// Trees an accepted post's snippets produce; snippets that fail any pipeline
// stage are dropped individually rather than sinking the post.
std::vector<model::AbstractTree> treesOf(const std::vector<std::string>& snippets) {
    std::vector<model::AbstractTree> out;
    for (const auto& s : snippets) {
        try {
            out.push_back(pipeline::buildTree(s));
        } catch (const UnparseableError&) {
        } catch (const java::ParseError&) {
        }
    }
    return out;
}

}  // namespace

int lowerMedian(std::vector<int> sizes) {
    if (sizes.empty()) return 0;
    std::sort(sizes.begin(), sizes.end());
    return sizes[(sizes.size() - 1) / 2];
}

PatternStore buildIndex(const std::vector<corpus::PostRecord>& posts,
                        const std::vector<std::string>& knownExceptionTypes,
                        IndexStats* stats, std::uint64_t corpusDigest) {
    struct PostOutcome {
        bool accepted = false;
        std::string reason;
        std::string exceptionType;
        std::vector<local::Pattern> patterns;
    };
    std::vector<PostOutcome> outcomes(posts.size());

    util::parallelFor(posts.size(), [&](std::size_t i) {
        const auto& post = posts[i];
        auto& out = outcomes[i];
        corpus::FilterResult fr = corpus::filterPost(post, knownExceptionTypes);
        if (!fr.accepted) {
            out.reason = fr.reason;
            return;
        }
        out.accepted = true;
        out.exceptionType = fr.exceptionType;
        std::vector<model::AbstractTree> questions = treesOf(post.questionSnippets);
        std::vector<model::AbstractTree> answers;
        for (const auto& a : post.answers) {
            auto trees = treesOf(a.snippets);
            answers.insert(answers.end(), std::make_move_iterator(trees.begin()),
                           std::make_move_iterator(trees.end()));
        }
        local::PostMeta meta{post.postId, fr.exceptionType, post.votes};
        out.patterns = local::localize(questions, answers, meta);
    });

    PatternStore s;
    s.corpusDigest = corpusDigest;
    IndexStats tally;
    for (auto& out : outcomes) {
        if (!out.accepted) {
            ++tally.rejectedByReason[out.reason];
            continue;
        }
        ++tally.accepted;
        tally.patterns += static_cast<int>(out.patterns.size());
        tally.patternsByType[out.exceptionType] += static_cast<int>(out.patterns.size());
        auto& bucket = s.patternsByType[out.exceptionType];
        bucket.insert(bucket.end(), std::make_move_iterator(out.patterns.begin()),
                      std::make_move_iterator(out.patterns.end()));
    }
    for (auto it = s.patternsByType.begin(); it != s.patternsByType.end();) {
        if (it->second.empty()) {
            it = s.patternsByType.erase(it);
            continue;
        }
        std::vector<int> sizes;
        sizes.reserve(it->second.size());
        for (const auto& p : it->second) sizes.push_back(p.size());
        s.medianSizeByType[it->first] = lowerMedian(std::move(sizes));
        ++it;
    }
    if (stats) *stats = std::move(tally);
    return s;
}

std::string encodeStore(const PatternStore& s) {
    ByteWriter w;
    for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
    w.u32(kVersion);
    w.u64(s.corpusDigest);
    w.u64(s.formatTimestamp);
    w.u32(static_cast<std::uint32_t>(s.patternsByType.size()));
    for (const auto& [type, patterns] : s.patternsByType) {
        w.str(type);
        auto it = s.medianSizeByType.find(type);
        w.i32(it == s.medianSizeByType.end() ? 0 : it->second);
        w.u32(static_cast<std::uint32_t>(patterns.size()));
        for (const auto& p : patterns) {
            w.str(p.postId);
            w.str(p.exceptionType);
            w.i32(p.votes);
            writeTree(w, p.tree);
            writeTree(w, p.fullTree);
        }
    }
    return w.take();
}

PatternStore decodeStore(const std::string& bytes) {
    ByteReader r(bytes);
    char magic[4];
    for (char& c : magic) c = static_cast<char>(r.u8());
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FormatVersionError("not a pattern store (bad magic)");
    std::uint32_t version = r.u32();
    if (version != kVersion)
        throw FormatVersionError("unsupported pattern store version " + std::to_string(version));
    PatternStore s;
    s.corpusDigest = r.u64();
    s.formatTimestamp = r.u64();
    std::uint32_t typeCount = r.u32();
    for (std::uint32_t i = 0; i < typeCount; ++i) {
        std::string type = r.str();
        int median = r.i32();
        std::uint32_t patternCount = r.u32();
        auto& bucket = s.patternsByType[type];
        bucket.reserve(patternCount);
        for (std::uint32_t k = 0; k < patternCount; ++k) {
            local::Pattern p;
            p.postId = r.str();
            p.exceptionType = r.str();
            p.votes = r.i32();
            p.tree = readTree(r);
            p.fullTree = readTree(r);
            bucket.push_back(std::move(p));
        }
        s.medianSizeByType[type] = median;
    }
    if (!r.atEnd()) throw FormatVersionError("trailing bytes after pattern store");
    return s;
}

void saveStore(const PatternStore& s, const std::string& path) {
    util::writeFile(path, encodeStore(s));
}

PatternStore loadStore(const std::string& path) {
    return decodeStore(util::readFile(path));
}

}  // namespace failscen::store
