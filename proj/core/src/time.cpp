#include "hydra/time.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "hydra/errors.hpp"

namespace hydra {

// Howard Hinnant's algorithm; exact over the full proleptic Gregorian range.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = static_cast<int>(y + (month <= 2));
}

EpochTime EpochTime::from_unix_seconds(double s) {
    return EpochTime(static_cast<std::int64_t>(std::llround(s * 1000.0)));
}

EpochTime EpochTime::from_utc(int year, int month, int day,
                              int hour, int minute, double second) {
    const std::int64_t days = days_from_civil(year, month, day);
    const std::int64_t ms = days * 86400000LL + hour * 3600000LL + minute * 60000LL +
                            static_cast<std::int64_t>(std::llround(second * 1000.0));
    return EpochTime(ms);
}

std::optional<EpochTime> EpochTime::parse_iso8601(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    char tz = '\0';
    int n = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%lf%c", &y, &mo, &d, &h, &mi, &sec, &tz);
    if (n == 3) {
        return from_utc(y, mo, d);
    }
    if (n >= 6) {
        if (n == 7 && tz != 'Z') return std::nullopt;
        if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec < 0 || sec >= 61)
            return std::nullopt;
        return from_utc(y, mo, d, h, mi, sec);
    }
    return std::nullopt;
}

double EpochTime::utc_hour_of_day() const {
    std::int64_t ms_of_day = ms_ % 86400000LL;
    if (ms_of_day < 0) ms_of_day += 86400000LL;
    return static_cast<double>(ms_of_day) / 3600000.0;
}

int EpochTime::utc_year() const {
    std::int64_t days = ms_ / 86400000LL;
    if (ms_ % 86400000LL < 0) days -= 1;
    int y, m, d;
    civil_from_days(days, y, m, d);
    return y;
}

EpochTime EpochTime::plus_seconds(double s) const {
    return EpochTime(ms_ + static_cast<std::int64_t>(std::llround(s * 1000.0)));
}

std::string EpochTime::to_iso8601() const {
    std::int64_t days = ms_ / 86400000LL;
    std::int64_t rem = ms_ % 86400000LL;
    if (rem < 0) {
        rem += 86400000LL;
        days -= 1;
    }
    int y, mo, d;
    civil_from_days(days, y, mo, d);
    const int h = static_cast<int>(rem / 3600000LL);
    const int mi = static_cast<int>((rem / 60000LL) % 60);
    const int s = static_cast<int>((rem / 1000LL) % 60);
    const int ms = static_cast<int>(rem % 1000LL);
    char buf[40];
    if (ms == 0) {
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, mo, d, h, mi, s);
    } else {
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", y, mo, d, h, mi, s, ms);
    }
    return std::string(buf);
}

}  // namespace hydra
