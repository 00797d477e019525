#include "failscen/java/lexer.hpp"

#include <cctype>
#include <unordered_set>

#include "failscen/errors.hpp"

namespace failscen::java {

namespace {

const std::unordered_set<std::string> kKeywords = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new",
    "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while", "true", "false", "null",
    "var", "record",
};

// Longest-first so maximal munch falls out of the scan order. '>' compounds
// are intentionally absent; see the header note.
// '>' is always lexed alone so nested generics close cleanly; the parser
// reassembles >>, >>>, >= and shift-assignments from adjacent tokens.
const char* kPuncts[] = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<",
    "+", "-", "*", "/", "%", "!", "~", "&", "|", "^", "<", ">", "=", "?",
    ":", ";", ",", ".", "(", ")", "{", "}", "[", "]", "@",
};

bool isIdentStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool isIdentPart(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

}  // namespace

bool isKeyword(const std::string& ident) { return kKeywords.count(ident) > 0; }

std::vector<Token> lex(const std::string& source) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    const std::size_t n = source.size();

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count && i < n; ++k) {
            if (source[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };

    while (i < n) {
        char c = source[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && source[i + 1] == '/') {
            while (i < n && source[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && source[i + 1] == '*') {
            advance(2);
            while (i + 1 < n && !(source[i] == '*' && source[i + 1] == '/')) advance(1);
            if (i + 1 >= n) throw UnparseableError("unterminated block comment at line " + std::to_string(line));
            advance(2);
            continue;
        }
        if (isIdentStart(c)) {
            Token t{Tok::Ident, "", line, col};
            std::size_t start = i;
            while (i < n && isIdentPart(source[i])) advance(1);
            t.text = source.substr(start, i - start);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(source[i + 1])))) {
            Token t{Tok::Number, "", line, col};
            std::size_t start = i;
            bool hex = false;
            if (c == '0' && i + 1 < n && (source[i + 1] == 'x' || source[i + 1] == 'X')) {
                hex = true;
                advance(2);
                while (i < n && (std::isxdigit(static_cast<unsigned char>(source[i])) || source[i] == '_')) advance(1);
            } else if (c == '0' && i + 1 < n && (source[i + 1] == 'b' || source[i + 1] == 'B')) {
                advance(2);
                while (i < n && (source[i] == '0' || source[i] == '1' || source[i] == '_')) advance(1);
            } else {
                while (i < n && (std::isdigit(static_cast<unsigned char>(source[i])) || source[i] == '_')) advance(1);
                if (i < n && source[i] == '.') {
                    advance(1);
                    while (i < n && (std::isdigit(static_cast<unsigned char>(source[i])) || source[i] == '_')) advance(1);
                }
                if (i < n && (source[i] == 'e' || source[i] == 'E')) {
                    advance(1);
                    if (i < n && (source[i] == '+' || source[i] == '-')) advance(1);
                    while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) advance(1);
                }
            }
            if (i < n) {
                char s = source[i];
                if (s == 'l' || s == 'L' || (!hex && (s == 'f' || s == 'F' || s == 'd' || s == 'D'))) advance(1);
            }
            t.text = source.substr(start, i - start);
            out.push_back(std::move(t));
            continue;
        }
        if (c == '"' || c == '\'') {
            char quote = c;
            Token t{quote == '"' ? Tok::StringLit : Tok::CharLit, "", line, col};
            int startLine = line;
            advance(1);
            std::string value;
            while (i < n && source[i] != quote) {
                if (source[i] == '\n') throw UnparseableError("unterminated literal at line " + std::to_string(startLine));
                if (source[i] == '\\' && i + 1 < n) {
                    char e = source[i + 1];
                    switch (e) {
                        case 'n': value.push_back('\n'); break;
                        case 't': value.push_back('\t'); break;
                        case 'r': value.push_back('\r'); break;
                        case 'b': value.push_back('\b'); break;
                        case 'f': value.push_back('\f'); break;
                        case '0': value.push_back('\0'); break;
                        case '\\': value.push_back('\\'); break;
                        case '\'': value.push_back('\''); break;
                        case '"': value.push_back('"'); break;
                        case 'u': {
                            // keep unicode escapes verbatim; content equality is all we need
                            value += "\\u";
                            advance(2);
                            continue;
                        }
                        default: value.push_back(e); break;
                    }
                    advance(2);
                    continue;
                }
                value.push_back(source[i]);
                advance(1);
            }
            if (i >= n) throw UnparseableError("unterminated literal at line " + std::to_string(startLine));
            advance(1);
            t.text = std::move(value);
            out.push_back(std::move(t));
            continue;
        }
        bool matched = false;
        for (const char* p : kPuncts) {
            std::size_t len = std::char_traits<char>::length(p);
            if (source.compare(i, len, p) == 0) {
                out.push_back(Token{Tok::Punct, p, line, col});
                advance(len);
                matched = true;
                break;
            }
        }
        if (!matched) throw UnparseableError(std::string("unexpected character '") + c + "' at line " + std::to_string(line));
    }
    out.push_back(Token{Tok::End, "", line, col});
    return out;
}

}  // namespace failscen::java
