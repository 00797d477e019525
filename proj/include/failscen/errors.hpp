#pragma once

#include <stdexcept>
#include <string>

namespace failscen {

// Raised when a snippet survives none of the preprocess wrappings.
struct UnparseableError : std::runtime_error {
    explicit UnparseableError(const std::string& what) : std::runtime_error(what) {}
};

// File-level I/O failure (missing file, short read, unwritable path).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Pattern store carries an unknown format version or a corrupt header.
struct FormatVersionError : std::runtime_error {
    explicit FormatVersionError(const std::string& what) : std::runtime_error(what) {}
};

// Query named an exception type the store has no patterns for.
struct NoPatternsError : std::runtime_error {
    explicit NoPatternsError(const std::string& what) : std::runtime_error(what) {}
};

// Rating sheet is empty or malformed beyond use.
struct EmptySheetError : std::runtime_error {
    explicit EmptySheetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace failscen
