#include "hdq/conventions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace hdq {
namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

int to_int(std::string_view s) {
    int value = 0;
    std::from_chars(s.data(), s.data() + s.size(), value);
    return value;
}

bool valid_month(int m) { return m >= 1 && m <= 12; }
bool valid_day(int d) { return d >= 1 && d <= 31; }

// YYYY | YYYY-MM | YYYY-MM-DD
std::optional<ParsedDate> parse_iso8601(std::string_view s) {
    ParsedDate d;
    d.compliant = true;
    d.grammar = "iso8601";
    if (s.size() == 4 && all_digits(s)) {
        d.year = to_int(s);
        return d;
    }
    if (s.size() == 7 && s[4] == '-' && all_digits(s.substr(0, 4)) &&
        all_digits(s.substr(5, 2))) {
        d.year = to_int(s.substr(0, 4));
        d.month = to_int(s.substr(5, 2));
        if (valid_month(d.month)) return d;
        return std::nullopt;
    }
    if (s.size() == 10 && s[4] == '-' && s[7] == '-' &&
        all_digits(s.substr(0, 4)) && all_digits(s.substr(5, 2)) &&
        all_digits(s.substr(8, 2))) {
        d.year = to_int(s.substr(0, 4));
        d.month = to_int(s.substr(5, 2));
        d.day = to_int(s.substr(8, 2));
        if (valid_month(d.month) && valid_day(d.day)) return d;
        return std::nullopt;
    }
    return std::nullopt;
}

// D.M.YYYY | DD.MM.YYYY
std::optional<ParsedDate> parse_dmy_dots(std::string_view s) {
    auto first = s.find('.');
    auto second = s.find('.', first + 1);
    if (first == std::string_view::npos || second == std::string_view::npos)
        return std::nullopt;
    auto day = s.substr(0, first);
    auto month = s.substr(first + 1, second - first - 1);
    auto year = s.substr(second + 1);
    if (day.size() < 1 || day.size() > 2 || month.size() < 1 ||
        month.size() > 2 || year.size() != 4)
        return std::nullopt;
    if (!all_digits(day) || !all_digits(month) || !all_digits(year))
        return std::nullopt;
    ParsedDate d;
    d.grammar = "dd.mm.yyyy";
    d.year = to_int(year);
    d.month = to_int(month);
    d.day = to_int(day);
    if (!valid_month(d.month) || !valid_day(d.day)) return std::nullopt;
    return d;
}

// YYYY/MM | YYYY/MM/DD
std::optional<ParsedDate> parse_ymd_slashes(std::string_view s) {
    auto first = s.find('/');
    if (first != 4 || !all_digits(s.substr(0, 4))) return std::nullopt;
    auto second = s.find('/', first + 1);
    ParsedDate d;
    d.grammar = "yyyy/mm/dd";
    d.year = to_int(s.substr(0, 4));
    auto month = second == std::string_view::npos
                     ? s.substr(first + 1)
                     : s.substr(first + 1, second - first - 1);
    if (month.empty() || month.size() > 2 || !all_digits(month))
        return std::nullopt;
    d.month = to_int(month);
    if (!valid_month(d.month)) return std::nullopt;
    if (second != std::string_view::npos) {
        auto day = s.substr(second + 1);
        if (day.empty() || day.size() > 2 || !all_digits(day))
            return std::nullopt;
        d.day = to_int(day);
        if (!valid_day(d.day)) return std::nullopt;
    }
    return d;
}

// M/D/YYYY | MM/DD/YYYY
std::optional<ParsedDate> parse_mdy_slashes(std::string_view s) {
    auto first = s.find('/');
    auto second = s.find('/', first + 1);
    if (first == std::string_view::npos || second == std::string_view::npos)
        return std::nullopt;
    auto month = s.substr(0, first);
    auto day = s.substr(first + 1, second - first - 1);
    auto year = s.substr(second + 1);
    if (month.empty() || month.size() > 2 || day.empty() || day.size() > 2 ||
        year.size() != 4)
        return std::nullopt;
    if (!all_digits(month) || !all_digits(day) || !all_digits(year))
        return std::nullopt;
    ParsedDate d;
    d.grammar = "mm/dd/yyyy";
    d.year = to_int(year);
    d.month = to_int(month);
    d.day = to_int(day);
    if (!valid_month(d.month) || !valid_day(d.day)) return std::nullopt;
    return d;
}

}  // namespace

const std::vector<std::string>& known_date_grammars() {
    static const std::vector<std::string> ids = {"iso8601", "dd.mm.yyyy",
                                                 "yyyy/mm/dd", "mm/dd/yyyy"};
    return ids;
}

std::optional<ParsedDate> parse_date(
    std::string_view text, const std::vector<std::string>& grammars) {
    for (const auto& g : grammars) {
        std::optional<ParsedDate> d;
        if (g == "iso8601")
            d = parse_iso8601(text);
        else if (g == "dd.mm.yyyy")
            d = parse_dmy_dots(text);
        else if (g == "yyyy/mm/dd")
            d = parse_ymd_slashes(text);
        else if (g == "mm/dd/yyyy")
            d = parse_mdy_slashes(text);
        if (d) return d;
    }
    return std::nullopt;
}

int compare_dates_common_precision(const ParsedDate& a, const ParsedDate& b) {
    if (a.year != b.year) return a.year < b.year ? -1 : 1;
    if (a.month == 0 || b.month == 0) return 0;
    if (a.month != b.month) return a.month < b.month ? -1 : 1;
    if (a.day == 0 || b.day == 0) return 0;
    if (a.day != b.day) return a.day < b.day ? -1 : 1;
    return 0;
}

bool is_blank(std::string_view text) {
    return std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isspace(c) != 0;
    });
}

std::string trim(std::string_view text) {
    size_t begin = 0;
    size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
        --end;
    return std::string(text.substr(begin, end - begin));
}

std::string strip_uncertainty_markers(std::string_view text,
                                      const ValueConventions& conv,
                                      std::vector<std::string>* found) {
    std::string rest = trim(text);
    bool changed = true;
    auto boundary_ok = [](const std::string& s, size_t len) {
        // A marker must end the token it starts: either it consumes the
        // whole string, ends in punctuation, or is followed by whitespace.
        if (len >= s.size()) return true;
        char last = s[len - 1];
        if (!std::isalnum(static_cast<unsigned char>(last))) return true;
        return std::isspace(static_cast<unsigned char>(s[len])) != 0;
    };
    while (changed && !rest.empty()) {
        changed = false;
        for (const auto& m : conv.uncertainty_markers) {
            if (m.empty() || m.size() > rest.size()) continue;
            if (rest.compare(0, m.size(), m) == 0 && boundary_ok(rest, m.size())) {
                if (found) found->push_back(m);
                rest = trim(std::string_view(rest).substr(m.size()));
                changed = true;
                break;
            }
            if (rest.size() >= m.size() &&
                rest.compare(rest.size() - m.size(), m.size(), m) == 0) {
                char before = rest.size() > m.size()
                                  ? rest[rest.size() - m.size() - 1]
                                  : ' ';
                bool marker_is_word =
                    std::isalnum(static_cast<unsigned char>(m.front())) != 0;
                if (!marker_is_word ||
                    std::isspace(static_cast<unsigned char>(before))) {
                    if (found) found->push_back(m);
                    rest = trim(
                        std::string_view(rest).substr(0, rest.size() - m.size()));
                    changed = true;
                    break;
                }
            }
        }
    }
    return rest;
}

bool is_number(std::string_view text, bool comma_decimal) {
    if (text.empty()) return false;
    size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    bool digits_before = false;
    bool digits_after = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_point ? digits_after : digits_before) = true;
        } else if ((c == '.' || (comma_decimal && c == ',')) && !seen_point) {
            seen_point = true;
        } else {
            return false;
        }
    }
    if (!digits_before) return false;
    if (seen_point && !digits_after) return false;
    return true;
}

bool is_absolute_uri(std::string_view text) {
    // scheme ":" hier-part, no whitespace anywhere
    size_t colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
    for (size_t i = 1; i < colon; ++i) {
        char c = text[i];
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' &&
            c != '-' && c != '.')
            return false;
    }
    if (colon + 1 >= text.size()) return false;
    return std::none_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isspace(c) != 0;
    });
}

}  // namespace hdq
