#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace failscen::corpus {

struct AnswerRecord {
    std::vector<std::string> snippets;
    int votes = 0;

    bool operator==(const AnswerRecord&) const = default;
};

struct PostRecord {
    std::string postId;
    std::string title;
    std::vector<std::string> tags;
    int votes = 0;
    std::vector<std::string> questionSnippets;
    std::vector<AnswerRecord> answers;

    bool operator==(const PostRecord&) const = default;
};

struct FilterResult {
    bool accepted = false;
    std::string exceptionType;  // set when accepted
    std::string reason;         // first failed criterion when rejected
};

// rejection reasons, in the order the criteria are checked
inline constexpr const char* kRejectNoAnswer = "no-answer";
inline constexpr const char* kRejectNoJavaTag = "no-java-tag";
inline constexpr const char* kRejectNoExceptionInTitle = "no-exception-in-title";
inline constexpr const char* kRejectNoParseableSnippet = "no-parseable-snippet";

// the stock list of runtime-exception type names the index knows about
std::vector<std::string> defaultExceptionTypes();

// one name per line, '#' comments and blank lines ignored; IoError if unreadable
std::vector<std::string> loadExceptionTypes(const std::string& path);

// text of each <pre><code> block in document order, HTML entities decoded
std::vector<std::string> extractSnippets(const std::string& bodyHtml);

// Applies the four acceptance criteria in order: at least one answer, a
// java/android tag, a known exception name in the title (case-insensitive;
// the earliest title occurrence wins), and at least one parseable question
// snippet.
FilterResult filterPost(const PostRecord& post,
                        const std::vector<std::string>& knownExceptionTypes);

struct CorpusReadStats {
    int records = 0;   // well-formed records returned
    int malformed = 0; // lines skipped
};

// Newline-delimited JSON corpus: one post object per line. Malformed lines
// are skipped and counted, never fatal. Question/answer bodies may be given
// as html (snippets get extracted) or as ready snippet lists.
std::vector<PostRecord> readCorpus(std::istream& in, CorpusReadStats* stats = nullptr);
std::vector<PostRecord> readCorpusFile(const std::string& path,
                                       CorpusReadStats* stats = nullptr);

// Converts a Q&A data-dump XML stream (self-closing <row .../> elements with
// PostTypeId 1/2) into the newline-delimited corpus format. Returns the
// number of question posts written.
int convertDump(std::istream& xml, std::ostream& jsonl);

}  // namespace failscen::corpus
