#include "hydra/tle.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "hydra/errors.hpp"

namespace hydra {

namespace {

std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

// 1-indexed inclusive column span, as the format is conventionally documented.
std::string field(const std::string& line, int first, int last) {
    return line.substr(static_cast<size_t>(first - 1), static_cast<size_t>(last - first + 1));
}

double parse_double_field(const std::string& raw, const char* what) {
    size_t start = raw.find_first_not_of(' ');
    if (start == std::string::npos) {
        throw InputError(std::string("empty ") + what + " field");
    }
    const std::string trimmed = raw.substr(start);
    char* end = nullptr;
    const double v = std::strtod(trimmed.c_str(), &end);
    if (end == trimmed.c_str() || end != trimmed.c_str() + trimmed.size()) {
        throw InputError(std::string("unparsable ") + what + " field '" + raw + "'");
    }
    return v;
}

long parse_int_field(const std::string& raw, const char* what) {
    size_t start = raw.find_first_not_of(' ');
    if (start == std::string::npos) {
        throw InputError(std::string("empty ") + what + " field");
    }
    const std::string trimmed = raw.substr(start);
    char* end = nullptr;
    const long v = std::strtol(trimmed.c_str(), &end, 10);
    if (end == trimmed.c_str()) {
        throw InputError(std::string("unparsable ") + what + " field '" + raw + "'");
    }
    return v;
}

// "+11606-4" -> 0.11606e-4. All-blank or all-zero fields decode to 0.
double parse_bstar(const std::string& raw) {
    if (raw.find_first_not_of(" 0+-") == std::string::npos) return 0.0;
    double sign = 1.0;
    size_t i = 0;
    while (i < raw.size() && raw[i] == ' ') ++i;
    if (i < raw.size() && (raw[i] == '+' || raw[i] == '-')) {
        if (raw[i] == '-') sign = -1.0;
        ++i;
    }
    std::string mantissa, exponent;
    for (; i < raw.size(); ++i) {
        if (raw[i] == '+' || raw[i] == '-') break;
        if (std::isdigit(static_cast<unsigned char>(raw[i]))) mantissa += raw[i];
    }
    exponent = raw.substr(i);
    const double m = mantissa.empty() ? 0.0 : std::strtod(("0." + mantissa).c_str(), nullptr);
    const int e = exponent.empty() ? 0 : static_cast<int>(std::strtol(exponent.c_str(), nullptr, 10));
    return sign * m * std::pow(10.0, e);
}

EpochTime parse_tle_epoch(const std::string& raw) {
    const int yy = static_cast<int>(parse_int_field(raw.substr(0, 2), "epoch year"));
    const double doy = parse_double_field(raw.substr(2), "epoch day");
    const int year = yy < 57 ? 2000 + yy : 1900 + yy;
    if (doy < 1.0 || doy >= 367.0) {
        throw InputError("epoch day-of-year out of range");
    }
    const std::int64_t jan1 = days_from_civil(year, 1, 1);
    const double ms = (static_cast<double>(jan1) + (doy - 1.0)) * 86400000.0;
    return EpochTime::from_unix_ms(static_cast<std::int64_t>(std::llround(ms)));
}

void check_line(const std::string& line, char expected_number, int line_no) {
    if (line.size() != 69) {
        throw InputError("line " + std::to_string(line_no) + ": length " +
                         std::to_string(line.size()) + ", expected 69");
    }
    if (line[0] != expected_number) {
        throw InputError("line " + std::to_string(line_no) + ": expected line number '" +
                         std::string(1, expected_number) + "'");
    }
    const int want = line[68] - '0';
    const int got = tle_checksum(line.substr(0, 68));
    if (want != got) {
        throw InputError("line " + std::to_string(line_no) + ": checksum " +
                         std::to_string(got) + " does not match trailing digit " +
                         std::to_string(want));
    }
}

TleRecord decode_record(const std::string& name, const std::string& l1,
                        const std::string& l2, int line_no_1) {
    check_line(l1, '1', line_no_1);
    check_line(l2, '2', line_no_1 + 1);

    TleRecord rec;
    rec.name = name;
    rec.line1 = l1;
    rec.line2 = l2;
    rec.catalog_number = static_cast<int>(parse_int_field(field(l1, 3, 7), "catalog number"));

    MeanElements el;
    el.epoch = parse_tle_epoch(field(l1, 19, 32));
    el.bstar = parse_bstar(field(l1, 54, 61));
    el.inclination_deg = parse_double_field(field(l2, 9, 16), "inclination");
    el.raan_deg = parse_double_field(field(l2, 18, 25), "RAAN");
    el.eccentricity = parse_int_field(field(l2, 27, 33), "eccentricity") / 1e7;
    el.arg_perigee_deg = parse_double_field(field(l2, 35, 42), "argument of perigee");
    el.mean_anomaly_deg = parse_double_field(field(l2, 44, 51), "mean anomaly");
    el.mean_motion_rev_day = parse_double_field(field(l2, 53, 63), "mean motion");
    if (el.mean_motion_rev_day <= 0.0) {
        throw InputError("mean motion must be positive");
    }
    el.semi_major_axis_km = semi_major_axis_from_mean_motion(el.mean_motion_rev_day);
    rec.parsed = el;
    return rec;
}

}  // namespace

int tle_checksum(const std::string& line68) {
    int sum = 0;
    for (char c : line68) {
        if (c >= '0' && c <= '9') sum += c - '0';
        else if (c == '-') sum += 1;
    }
    return sum % 10;
}

std::vector<TleRecord> parse_tle(const std::string& text, TleMode mode,
                                 std::vector<TleParseIssue>* issues) {
    if (text.empty()) {
        throw InputError("parse_tle: empty input");
    }
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) lines.push_back(strip_cr(line));
    }

    std::vector<TleRecord> out;
    std::string pending_name;
    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) {
            pending_name.clear();
            continue;
        }
        if (line.size() >= 2 && line[0] == '1' && line[1] == ' ') {
            const int line_no = static_cast<int>(i) + 1;
            try {
                if (i + 1 >= lines.size()) {
                    throw InputError("line " + std::to_string(line_no) +
                                     ": element line 1 without line 2");
                }
                out.push_back(decode_record(pending_name, line, lines[i + 1], line_no));
            } catch (const InputError& e) {
                if (mode == TleMode::Strict) throw;
                if (issues) issues->push_back({line_no, e.what()});
            }
            ++i;  // line 2 consumed (or skipped with its line 1)
            pending_name.clear();
        } else {
            pending_name = line;
            while (!pending_name.empty() && pending_name.back() == ' ') pending_name.pop_back();
        }
    }
    return out;
}

TleRecord render_tle(const std::string& name, const MeanElements& el,
                     int catalog_number) {
    // Epoch back to YYDDD.DDDDDDDD.
    const std::int64_t ms = el.epoch.unix_ms();
    std::int64_t days = ms / 86400000LL;
    std::int64_t rem = ms % 86400000LL;
    if (rem < 0) {
        rem += 86400000LL;
        days -= 1;
    }
    int year, month, day;
    civil_from_days(days, year, month, day);
    const double doy = static_cast<double>(days - days_from_civil(year, 1, 1)) + 1.0 +
                       static_cast<double>(rem) / 86400000.0;
    const int yy = year % 100;

    char l1[80];
    std::snprintf(l1, sizeof(l1),
                  "1 %05dU 00000A   %02d%012.8f  .00000000  00000-0  00000-0 0  999",
                  catalog_number, yy, doy);
    std::string line1(l1);
    line1 += static_cast<char>('0' + tle_checksum(line1));

    char l2[80];
    std::snprintf(l2, sizeof(l2),
                  "2 %05d %8.4f %8.4f %07d %8.4f %8.4f %11.8f    0",
                  catalog_number, el.inclination_deg, el.raan_deg,
                  static_cast<int>(std::llround(el.eccentricity * 1e7)),
                  el.arg_perigee_deg, el.mean_anomaly_deg, el.mean_motion_rev_day);
    std::string line2(l2);
    line2 += static_cast<char>('0' + tle_checksum(line2));

    TleRecord rec;
    rec.name = name;
    rec.line1 = line1;
    rec.line2 = line2;
    rec.catalog_number = catalog_number;
    rec.parsed = el;
    rec.parsed.semi_major_axis_km = semi_major_axis_from_mean_motion(el.mean_motion_rev_day);
    return rec;
}

}  // namespace hydra
