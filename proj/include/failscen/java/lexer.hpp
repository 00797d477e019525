#pragma once

#include <string>
#include <vector>

namespace failscen::java {

enum class Tok {
    Ident,    // identifiers and keywords
    Number,   // numeric literal, suffix retained in text
    CharLit,
    StringLit,
    Punct,    // operator or separator, text holds the spelling
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 0;
    int col = 0;
};

struct LexError {
    std::string message;
    int line = 0;
};

// Tokenizes a snippet. Comments and whitespace are skipped; '>' is always
// emitted as a single token so nested generics close cleanly (the parser
// reassembles adjacent '>' into shifts). Throws UnparseableError on a
// malformed literal.
std::vector<Token> lex(const std::string& source);

bool isKeyword(const std::string& ident);

}  // namespace failscen::java
