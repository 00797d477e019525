#include "failscen/ratings.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "failscen/errors.hpp"
#include "failscen/util.hpp"

namespace failscen::ratings {

namespace {

Rating ratingFromLetter(const std::string& s, int lineNo) {
    std::string t = util::toLower(util::trim(s));
    if (t == "i") return Rating::Instrumental;
    if (t == "h") return Rating::Helpful;
    if (t == "u") return Rating::Unhelpful;
    if (t == "m") return Rating::Misleading;
    throw std::invalid_argument("rating sheet line " + std::to_string(lineNo) +
                                ": unknown rating '" + s + "' (expected I, H, U, or M)");
}

}  // namespace

char ratingLetter(Rating r) {
    switch (r) {
        case Rating::Instrumental: return 'I';
        case Rating::Helpful: return 'H';
        case Rating::Unhelpful: return 'U';
        case Rating::Misleading: return 'M';
    }
    return '?';
}

int RatingSheet::count(Rating r) const {
    return static_cast<int>(
        std::count_if(entries.begin(), entries.end(),
                      [&](const SheetEntry& e) { return e.rating == r; }));
}

RatingSheet readSheet(std::istream& in) {
    RatingSheet sheet;
    std::set<std::string> seen;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string t = util::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::replace(t.begin(), t.end(), ',', ' ');
        std::istringstream fields(t);
        std::string instance, letter, extra;
        fields >> instance >> letter;
        if (letter.empty())
            throw std::invalid_argument("rating sheet line " + std::to_string(lineNo) +
                                        ": expected '<instance> <rating>'");
        if (fields >> extra)
            throw std::invalid_argument("rating sheet line " + std::to_string(lineNo) +
                                        ": trailing field '" + extra + "'");
        if (!seen.insert(instance).second)
            throw std::invalid_argument("rating sheet line " + std::to_string(lineNo) +
                                        ": instance '" + instance + "' rated twice");
        sheet.entries.push_back({instance, ratingFromLetter(letter, lineNo)});
    }
    return sheet;
}

RatingSheet readSheetFile(const std::string& path) {
    std::istringstream in(util::readFile(path));
    return readSheet(in);
}

RatingScores scoreSheet(const RatingSheet& sheet) {
    if (sheet.entries.empty()) throw EmptySheetError("rating sheet has no entries");
    RatingScores s;
    s.total = static_cast<int>(sheet.entries.size());
    double n = s.total;
    int i = sheet.count(Rating::Instrumental);
    int h = sheet.count(Rating::Helpful);
    int m = sheet.count(Rating::Misleading);
    s.iScore = i / n;
    s.ihScore = (i + h) / n;
    s.mScore = m / n;
    return s;
}

}  // namespace failscen::ratings
