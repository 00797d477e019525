#include "failscen/corpus.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include <json.hpp>

#include "failscen/errors.hpp"
#include "failscen/pipeline.hpp"
#include "failscen/util.hpp"

namespace failscen::corpus {

using nlohmann::json;

std::vector<std::string> defaultExceptionTypes() {
    return {
        "ArithmeticException",
        "ArrayStoreException",
        "BufferOverflowException",
        "BufferUnderflowException",
        "CMMException",
        "ClassCastException",
        "ConcurrentModificationException",
        "EmptyStackException",
        "IllegalArgumentException",
        "IllegalMonitorStateException",
        "IllegalStateException",
        "IndexOutOfBoundsException",
        "MissingResourceException",
        "NegativeArraySizeException",
        "NoSuchElementException",
        "NullPointerException",
        "RejectedExecutionException",
        "SecurityException",
        "UnsupportedOperationException",
    };
}

std::vector<std::string> loadExceptionTypes(const std::string& path) {
    std::vector<std::string> out;
    for (const std::string& line : util::splitLines(util::readFile(path))) {
        std::string t = util::trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

void appendUtf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

std::string decodeEntities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        std::size_t semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out += s[i++];
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") {
            out += '&';
        } else if (ent == "lt") {
            out += '<';
        } else if (ent == "gt") {
            out += '>';
        } else if (ent == "quot") {
            out += '"';
        } else if (ent == "apos") {
            out += '\'';
        } else if (!ent.empty() && ent[0] == '#') {
            bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
            unsigned long cp = 0;
            bool ok = ent.size() > (hex ? 2u : 1u);
            for (std::size_t k = hex ? 2 : 1; ok && k < ent.size(); ++k) {
                char c = ent[k];
                int digit;
                if (c >= '0' && c <= '9') digit = c - '0';
                else if (hex && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
                else if (hex && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
                else { ok = false; break; }
                cp = cp * (hex ? 16 : 10) + digit;
            }
            if (!ok || cp > 0x10FFFF) {
                out += s[i++];
                continue;
            }
            appendUtf8(out, cp);
        } else {
            out += s[i++];
            continue;
        }
        i = semi + 1;
    }
    return out;
}

bool tagBoundary(char c) {
    return c == '>' || c == '/' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

}  // namespace

std::vector<std::string> extractSnippets(const std::string& bodyHtml) {
    std::vector<std::string> out;
    const std::string low = util::toLower(bodyHtml);
    std::size_t pos = 0;
    while (true) {
        std::size_t pre = low.find("<pre", pos);
        if (pre == std::string::npos) break;
        if (pre + 4 >= low.size() || !tagBoundary(low[pre + 4])) {
            pos = pre + 4;
            continue;
        }
        std::size_t preEnd = low.find('>', pre);
        if (preEnd == std::string::npos) break;
        std::size_t cur = preEnd + 1;
        while (cur < low.size() && std::isspace(static_cast<unsigned char>(low[cur]))) ++cur;
        if (low.compare(cur, 5, "<code") != 0 ||
            (cur + 5 < low.size() && !tagBoundary(low[cur + 5]))) {
            pos = preEnd + 1;
            continue;
        }
        std::size_t codeEnd = low.find('>', cur);
        if (codeEnd == std::string::npos) break;
        std::size_t close = low.find("</code>", codeEnd);
        if (close == std::string::npos) break;
        out.push_back(decodeEntities(
            std::string_view(bodyHtml).substr(codeEnd + 1, close - codeEnd - 1)));
        pos = close + 7;
    }
    return out;
}

namespace {

std::string simpleName(const std::string& qualified) {
    std::size_t dot = qualified.rfind('.');
    return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

}  // namespace

FilterResult filterPost(const PostRecord& post,
                        const std::vector<std::string>& knownExceptionTypes) {
    if (post.answers.empty()) return {false, "", kRejectNoAnswer};

    bool tagged = false;
    for (const std::string& t : post.tags) {
        std::string low = util::toLower(util::trim(t));
        if (low == "java" || low == "android") {
            tagged = true;
            break;
        }
    }
    if (!tagged) return {false, "", kRejectNoJavaTag};

    const std::string titleLow = util::toLower(post.title);
    std::size_t bestPos = std::string::npos;
    std::string bestType;
    for (const std::string& t : knownExceptionTypes) {
        std::size_t p = titleLow.find(util::toLower(simpleName(t)));
        if (p != std::string::npos && p < bestPos) {
            bestPos = p;
            bestType = t;
        }
    }
    if (bestType.empty()) return {false, "", kRejectNoExceptionInTitle};

    bool parseable = false;
    for (const std::string& s : post.questionSnippets) {
        try {
            pipeline::preprocess(s);
            parseable = true;
            break;
        } catch (const UnparseableError&) {
        }
    }
    if (!parseable) return {false, "", kRejectNoParseableSnippet};

    return {true, bestType, ""};
}

namespace {

std::vector<std::string> snippetsOf(const json& j, const char* snippetsKey,
                                    const char* htmlKey) {
    std::vector<std::string> out;
    if (j.contains(snippetsKey)) {
        for (const auto& s : j.at(snippetsKey)) out.push_back(s.get<std::string>());
    } else if (j.contains(htmlKey)) {
        out = extractSnippets(j.at(htmlKey).get<std::string>());
    }
    return out;
}

}  // namespace

std::vector<PostRecord> readCorpus(std::istream& in, CorpusReadStats* stats) {
    std::vector<PostRecord> out;
    CorpusReadStats tally;
    std::string line;
    while (std::getline(in, line)) {
        std::string body = util::trim(line);
        if (body.empty()) continue;
        try {
            json j = json::parse(body);
            PostRecord r;
            const json& id = j.at("postId");
            r.postId = id.is_string() ? id.get<std::string>()
                                      : std::to_string(id.get<long long>());
            r.title = j.value("title", std::string{});
            if (j.contains("tags"))
                for (const auto& t : j.at("tags")) r.tags.push_back(t.get<std::string>());
            r.votes = j.value("votes", 0);
            r.questionSnippets = snippetsOf(j, "questionSnippets", "questionHtml");
            if (j.contains("answers")) {
                for (const auto& a : j.at("answers")) {
                    AnswerRecord ar;
                    ar.votes = a.value("votes", 0);
                    ar.snippets = snippetsOf(a, "snippets", "bodyHtml");
                    r.answers.push_back(std::move(ar));
                }
            }
            out.push_back(std::move(r));
            ++tally.records;
        } catch (const std::exception&) {
            ++tally.malformed;
        }
    }
    if (stats) *stats = tally;
    return out;
}

std::vector<PostRecord> readCorpusFile(const std::string& path, CorpusReadStats* stats) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open corpus file: " + path);
    return readCorpus(f, stats);
}

namespace {

std::map<std::string, std::string> parseRowAttrs(std::string_view row) {
    std::map<std::string, std::string> attrs;
    std::size_t i = 0;
    while (i < row.size()) {
        while (i < row.size() && std::isspace(static_cast<unsigned char>(row[i]))) ++i;
        std::size_t nameStart = i;
        while (i < row.size() && row[i] != '=' &&
               !std::isspace(static_cast<unsigned char>(row[i])))
            ++i;
        if (i >= row.size() || row[i] != '=') break;
        std::string name(row.substr(nameStart, i - nameStart));
        ++i;
        if (i >= row.size() || row[i] != '"') break;
        ++i;
        std::size_t valStart = i;
        std::size_t valEnd = row.find('"', valStart);
        if (valEnd == std::string_view::npos) break;
        attrs[name] = decodeEntities(row.substr(valStart, valEnd - valStart));
        i = valEnd + 1;
    }
    return attrs;
}

std::vector<std::string> splitTagList(const std::string& decoded) {
    std::vector<std::string> tags;
    std::string cur;
    if (decoded.find('<') != std::string::npos) {
        for (char c : decoded) {
            if (c == '<') {
                cur.clear();
            } else if (c == '>') {
                if (!cur.empty()) tags.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
    } else {
        for (char c : decoded) {
            if (c == '|') {
                if (!cur.empty()) tags.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) tags.push_back(cur);
    }
    return tags;
}

}  // namespace

int convertDump(std::istream& xml, std::ostream& jsonl) {
    std::string all((std::istreambuf_iterator<char>(xml)),
                    std::istreambuf_iterator<char>());

    std::vector<std::string> order;
    std::map<std::string, PostRecord> questions;
    std::map<std::string, std::vector<AnswerRecord>> answersByParent;

    std::size_t pos = 0;
    while ((pos = all.find("<row", pos)) != std::string::npos) {
        std::size_t end = all.find("/>", pos);
        if (end == std::string::npos) break;
        auto attrs = parseRowAttrs(std::string_view(all).substr(pos + 4, end - pos - 4));
        pos = end + 2;

        auto field = [&attrs](const char* k) -> std::string {
            auto it = attrs.find(k);
            return it == attrs.end() ? std::string{} : it->second;
        };
        const std::string type = field("PostTypeId");
        if (type == "1") {
            PostRecord r;
            r.postId = field("Id");
            if (r.postId.empty() || questions.count(r.postId)) continue;
            r.title = field("Title");
            r.votes = std::atoi(field("Score").c_str());
            r.tags = splitTagList(field("Tags"));
            r.questionSnippets = extractSnippets(field("Body"));
            order.push_back(r.postId);
            questions.emplace(r.postId, std::move(r));
        } else if (type == "2") {
            AnswerRecord a;
            a.votes = std::atoi(field("Score").c_str());
            a.snippets = extractSnippets(field("Body"));
            answersByParent[field("ParentId")].push_back(std::move(a));
        }
    }

    int written = 0;
    for (const std::string& id : order) {
        PostRecord& r = questions[id];
        auto found = answersByParent.find(id);
        if (found != answersByParent.end()) r.answers = std::move(found->second);

        json answers = json::array();
        for (const AnswerRecord& a : r.answers)
            answers.push_back({{"snippets", a.snippets}, {"votes", a.votes}});
        json j{{"postId", r.postId},
               {"title", r.title},
               {"tags", r.tags},
               {"votes", r.votes},
               {"questionSnippets", r.questionSnippets},
               {"answers", answers}};
        jsonl << j.dump() << "\n";
        ++written;
    }
    return written;
}

}  // namespace failscen::corpus
