#ifndef HYDRA_TIME_HPP_
#define HYDRA_TIME_HPP_

#include <cstdint>
#include <optional>
#include <string>

namespace hydra {

/// UTC instant with millisecond resolution, stored as milliseconds since
/// 1970-01-01T00:00:00Z. Ordering is the natural integer ordering.
class EpochTime {
public:
    EpochTime() : ms_(0) {}

    static EpochTime from_unix_ms(std::int64_t ms) { return EpochTime(ms); }
    static EpochTime from_unix_seconds(double s);
    static EpochTime from_utc(int year, int month, int day,
                              int hour = 0, int minute = 0, double second = 0.0);
    /// Accepts "YYYY-MM-DDTHH:MM:SSZ" with optional fractional seconds.
    static std::optional<EpochTime> parse_iso8601(const std::string& text);

    std::int64_t unix_ms() const { return ms_; }
    double unix_seconds() const { return static_cast<double>(ms_) / 1000.0; }

    /// Julian Date (UTC). Exact to the millisecond by construction.
    double julian_date() const {
        return 2440587.5 + static_cast<double>(ms_) / 86400000.0;
    }
    /// Days elapsed since J2000.0 (2000-01-01T12:00:00Z).
    double days_since_j2000() const { return julian_date() - 2451545.0; }

    /// Fractional hour of the UTC day in [0, 24).
    double utc_hour_of_day() const;

    int utc_year() const;

    double seconds_since(const EpochTime& other) const {
        return static_cast<double>(ms_ - other.ms_) / 1000.0;
    }
    EpochTime plus_seconds(double s) const;
    EpochTime plus_minutes(double m) const { return plus_seconds(m * 60.0); }

    std::string to_iso8601() const;

    friend bool operator==(const EpochTime& a, const EpochTime& b) { return a.ms_ == b.ms_; }
    friend bool operator!=(const EpochTime& a, const EpochTime& b) { return a.ms_ != b.ms_; }
    friend bool operator<(const EpochTime& a, const EpochTime& b) { return a.ms_ < b.ms_; }
    friend bool operator<=(const EpochTime& a, const EpochTime& b) { return a.ms_ <= b.ms_; }
    friend bool operator>(const EpochTime& a, const EpochTime& b) { return a.ms_ > b.ms_; }
    friend bool operator>=(const EpochTime& a, const EpochTime& b) { return a.ms_ >= b.ms_; }

private:
    explicit EpochTime(std::int64_t ms) : ms_(ms) {}
    std::int64_t ms_;
};

/// Days from 1970-01-01 to the given civil date (proleptic Gregorian).
std::int64_t days_from_civil(int year, int month, int day);

/// Inverse of days_from_civil.
void civil_from_days(std::int64_t days, int& year, int& month, int& day);

}  // namespace hydra

#endif  // HYDRA_TIME_HPP_
