#pragma once

#include <string>

#include "failscen/java/syntax.hpp"

namespace failscen::java {

struct ParseError {
    std::string message;
    int line = 0;
};

// Three entry grammars, each consuming the whole input:
//   parseUnit       - type declarations only (whole files)
//   parseMembers    - a class body's member list (methods, fields, nested types)
//   parseStatements - a statement sequence (loop bodies, pasted fragments)
// Each throws ParseError on the first construct it cannot consume.
SynNode parseUnit(const std::string& source);
SynNode parseMembers(const std::string& source);
SynNode parseStatements(const std::string& source);

}  // namespace failscen::java
