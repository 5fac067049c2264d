#ifndef HYDRA_TLE_HPP_
#define HYDRA_TLE_HPP_

#include <string>
#include <vector>

#include "hydra/orbit.hpp"

namespace hydra {

/// One two-line element set, raw lines plus decoded elements.
struct TleRecord {
    std::string name;
    std::string line1;
    std::string line2;
    MeanElements parsed;
    int catalog_number = 0;
};

struct TleParseIssue {
    int line_number = 0;  // 1-based line in the input text
    std::string message;
};

enum class TleMode { Strict, Lenient };

/// Parse TLE text (name line optional per record). Strict mode throws
/// InputError on the first malformed record; lenient mode skips bad records
/// and reports them through `issues` when provided.
std::vector<TleRecord> parse_tle(const std::string& text,
                                 TleMode mode = TleMode::Strict,
                                 std::vector<TleParseIssue>* issues = nullptr);

/// Render elements back into name + two checksummed 69-column lines.
TleRecord render_tle(const std::string& name, const MeanElements& el,
                     int catalog_number);

/// NORAD line checksum: digits count their value, '-' counts 1, all else 0.
int tle_checksum(const std::string& line68);

}  // namespace hydra

#endif  // HYDRA_TLE_HPP_
