#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hdq {

/// A calendar date at year, month or day precision. Unset month/day are 0.
struct ParsedDate {
    int year = 0;
    int month = 0;
    int day = 0;
    bool compliant = false;  // matched the iso8601 grammar
    std::string grammar;     // id of the grammar that matched

    friend bool operator==(const ParsedDate&, const ParsedDate&) = default;
};

/// Compares two dates at the coarsest precision both sides provide.
/// Returns <0, 0, >0. Dates that only share a year compare by year.
int compare_dates_common_precision(const ParsedDate& a, const ParsedDate& b);

/// Lexical conventions applied when ingesting raw values: which date
/// grammars are active, which trailing tokens are units, and which in-band
/// markers signal uncertainty. Shared by ingestion and the detectors so
/// both sides see the same value analysis.
struct ValueConventions {
    /// Active date grammar ids, in match-attempt order. Known grammars:
    /// "iso8601" (YYYY, YYYY-MM, YYYY-MM-DD; the only compliant one),
    /// "dd.mm.yyyy", "yyyy/mm/dd", "mm/dd/yyyy".
    std::vector<std::string> date_grammars = {"iso8601", "dd.mm.yyyy"};

    /// Trailing tokens split off into DataValue::unit.
    std::vector<std::string> units = {"cm", "mm", "m"};

    /// In-band uncertainty markers recognized at value prefixes/suffixes.
    std::vector<std::string> uncertainty_markers = {"ca.",        "circa",
                                                    "um",         "?",
                                                    "vermutlich", "around"};

    /// Accept "17,5" as a number when true.
    bool comma_decimal = false;

    friend bool operator==(const ValueConventions&,
                           const ValueConventions&) = default;
};

/// All grammar ids the library knows about.
const std::vector<std::string>& known_date_grammars();

/// Parses `text` under the listed grammars; first match wins.
std::optional<ParsedDate> parse_date(std::string_view text,
                                     const std::vector<std::string>& grammars);

/// Removes recognized uncertainty markers from the value's prefix and
/// suffix. Returns the stripped remainder; matched markers are appended to
/// `found` when non-null. The input itself is never modified in place;
/// stored lexicals keep their in-band markers.
std::string strip_uncertainty_markers(std::string_view text,
                                      const ValueConventions& conv,
                                      std::vector<std::string>* found = nullptr);

bool is_number(std::string_view text, bool comma_decimal = false);
bool is_absolute_uri(std::string_view text);

bool is_blank(std::string_view text);
std::string trim(std::string_view text);

}  // namespace hdq
