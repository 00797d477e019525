#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace failscen::ratings {

// Reviewer verdict for one recommended post.
enum class Rating { Instrumental, Helpful, Unhelpful, Misleading };

char ratingLetter(Rating r);

struct SheetEntry {
    std::string instance;
    Rating rating = Rating::Unhelpful;

    bool operator==(const SheetEntry&) const = default;
};

struct RatingSheet {
    std::vector<SheetEntry> entries;

    int count(Rating r) const;
};

struct RatingScores {
    double iScore = 0.0;   // I / total
    double ihScore = 0.0;  // (I + H) / total
    double mScore = 0.0;   // M / total
    int total = 0;
};

// One entry per line: "<instance> <I|H|U|M>", comma or whitespace separated,
// case-insensitive ratings, '#' comments and blank lines skipped. Throws
// std::invalid_argument on an unknown rating, a missing field, or an
// instance rated twice.
RatingSheet readSheet(std::istream& in);
RatingSheet readSheetFile(const std::string& path);  // adds IoError

// The three ratios; throws EmptySheetError on an empty sheet.
RatingScores scoreSheet(const RatingSheet& sheet);

}  // namespace failscen::ratings
