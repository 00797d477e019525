#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace failscen::util {

// FNV-1a 64-bit digest; used for corpus provenance, not security.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& s);

std::string readFile(const std::string& path);      // throws IoError
void writeFile(const std::string& path, const std::string& bytes);

std::string toLower(std::string s);
std::string trim(const std::string& s);
std::vector<std::string> splitLines(const std::string& text);

// Effective worker count: FAILSCEN_THREADS caps it, 0/unset means hardware default.
unsigned threadBudget();

// Runs fn(i) for i in [0, n) across the thread budget. Work is indexed so
// callers gather results deterministically regardless of scheduling.
void parallelFor(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace failscen::util
