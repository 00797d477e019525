#pragma once

#include <string>

namespace failscen::model {

// Maps a declared/observed Java type name onto the abstract type vocabulary:
//   - primitives become their wrapper classes (int -> Integer, ...)
//   - collection interfaces and their stock implementations become Collection
//   - well-known platform classes keep their simple name
//   - everything else becomes appClass
//   - the empty string (unresolved) stays empty
// Array suffixes are preserved: the element type is abstracted and the
// brackets re-appended. Qualified names from outside the platform packages
// abstract to appClass even when the simple name would be recognizable.
std::string abstractType(const std::string& raw);

// True when `name` (a simple name) belongs to the platform or collection
// vocabulary — used to tell static receivers (System, Integer) from
// variables when no declaration is in scope.
bool isKnownClassName(const std::string& name);

}  // namespace failscen::model
