#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "hydra/errors.hpp"
#include "hydra/rng.hpp"
#include "hydra/tle.hpp"

using namespace hydra;

namespace {

// Independent fixed-column assembly (1-indexed spans), so the parser is
// checked against the documented layout rather than against render_tle.
void place(std::string& line, int col, const std::string& text) {
    line.replace(static_cast<size_t>(col - 1), text.size(), text);
}

std::string finish(std::string line68) {
    REQUIRE(line68.size() == 68);
    return line68 + static_cast<char>('0' + tle_checksum(line68));
}

std::string make_line1(const std::string& catalog, const std::string& epoch,
                       const std::string& bstar) {
    std::string l(68, ' ');
    l[0] = '1';
    place(l, 3, catalog);
    l[7] = 'U';
    place(l, 10, "98067A");
    place(l, 19, epoch);
    place(l, 34, " .00000000");
    place(l, 45, "00000-0");
    place(l, 54, bstar);
    place(l, 63, "0");
    place(l, 66, "999");
    return finish(l);
}

std::string make_line2(const std::string& catalog, const std::string& inc,
                       const std::string& raan, const std::string& ecc,
                       const std::string& argp, const std::string& ma,
                       const std::string& mm) {
    std::string l(68, ' ');
    l[0] = '2';
    place(l, 3, catalog);
    place(l, 9, inc);
    place(l, 18, raan);
    place(l, 27, ecc);
    place(l, 35, argp);
    place(l, 44, ma);
    place(l, 53, mm);
    place(l, 65, "4321");
    return finish(l);
}

}  // namespace

TEST_CASE("fixed-column fields decode per the layout") {
    const std::string l1 = make_line1("25544", "24001.50000000", "11606-4");
    const std::string l2 = make_line2("25544", "053.0000", "120.5000", "0001000",
                                      "230.0000", "010.0000", "15.05440000");
    const auto records = parse_tle("ISS (ZARYA)\n" + l1 + "\n" + l2 + "\n");
    REQUIRE(records.size() == 1);
    const TleRecord& rec = records[0];
    CHECK(rec.name == "ISS (ZARYA)");
    CHECK(rec.catalog_number == 25544);
    CHECK(rec.parsed.inclination_deg == doctest::Approx(53.0));
    CHECK(rec.parsed.raan_deg == doctest::Approx(120.5));
    CHECK(rec.parsed.eccentricity == doctest::Approx(0.0001));  // implied decimal
    CHECK(rec.parsed.arg_perigee_deg == doctest::Approx(230.0));
    CHECK(rec.parsed.mean_anomaly_deg == doctest::Approx(10.0));
    CHECK(rec.parsed.mean_motion_rev_day == doctest::Approx(15.0544));
    CHECK(rec.parsed.bstar == doctest::Approx(0.11606e-4).epsilon(1e-9));
    // Epoch 24001.5 = 2024-01-01T12:00:00Z.
    CHECK(rec.parsed.epoch == EpochTime::from_utc(2024, 1, 1, 12, 0, 0.0));
    // Semi-major axis from mean motion through mu.
    CHECK(rec.parsed.semi_major_axis_km ==
          doctest::Approx(semi_major_axis_from_mean_motion(15.0544)).epsilon(1e-12));
}

TEST_CASE("corrupted checksum fails strict parse and is skipped leniently") {
    const std::string l1 = make_line1("00005", "25010.00000000", "00000-0");
    std::string l2 = make_line2("00005", "053.0000", "000.0000", "0000000",
                                "000.0000", "000.0000", "15.05440000");
    l2[68] = l2[68] == '9' ? '0' : l2[68] + 1;  // break the trailing digit
    const std::string text = "BAD\n" + l1 + "\n" + l2 + "\n";
    CHECK_THROWS_AS(parse_tle(text), InputError);

    std::vector<TleParseIssue> issues;
    const auto records = parse_tle(text, TleMode::Lenient, &issues);
    CHECK(records.empty());
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].line_number == 2);
    CHECK(std::string(issues[0].message).find("checksum") != std::string::npos);
}

TEST_CASE("wrong line length is a parse error with the line number") {
    const std::string text = "1 25544U\n2 25544\n";
    CHECK_THROWS_WITH_AS(parse_tle(text), doctest::Contains("length"), InputError);
}

TEST_CASE("empty input is rejected") {
    CHECK_THROWS_AS(parse_tle(""), InputError);
}

TEST_CASE("checksum counts digits and minus signs") {
    // '-' counts 1, digits their value, everything else 0.
    CHECK(tle_checksum(std::string(68, ' ')) == 0);
    std::string line(68, ' ');
    line[0] = '7';
    line[1] = '-';
    CHECK(tle_checksum(line) == 8);
}

TEST_CASE("parse after render is the identity on parsed fields") {
    Rng rng(99);
    const EpochTime base = EpochTime::from_utc(2025, 2, 3, 4, 5, 6.0);
    for (int i = 0; i < 50; ++i) {
        MeanElements el;
        // Quantized to the TLE column precision so equality is exact.
        el.inclination_deg = static_cast<int>(uniform01(rng) * 1800000) / 10000.0;
        el.raan_deg = static_cast<int>(uniform01(rng) * 3600000) / 10000.0;
        el.eccentricity = static_cast<int>(uniform01(rng) * 2000000) / 1e7;
        el.arg_perigee_deg = static_cast<int>(uniform01(rng) * 3600000) / 10000.0;
        el.mean_anomaly_deg = static_cast<int>(uniform01(rng) * 3600000) / 10000.0;
        el.mean_motion_rev_day = 10.0 + static_cast<int>(uniform01(rng) * 6e8) / 1e8;
        el.epoch = base.plus_seconds(uniform01(rng) * 86400.0);
        el.semi_major_axis_km = semi_major_axis_from_mean_motion(el.mean_motion_rev_day);

        const TleRecord rendered = render_tle("SYN-" + std::to_string(i), el, 10000 + i);
        const auto parsed = parse_tle(rendered.name + "\n" + rendered.line1 + "\n" +
                                      rendered.line2 + "\n");
        REQUIRE(parsed.size() == 1);
        const MeanElements& back = parsed[0].parsed;
        CHECK(back.inclination_deg == doctest::Approx(el.inclination_deg).epsilon(1e-12));
        CHECK(back.raan_deg == doctest::Approx(el.raan_deg).epsilon(1e-12));
        CHECK(back.eccentricity == doctest::Approx(el.eccentricity).epsilon(1e-12));
        CHECK(back.arg_perigee_deg == doctest::Approx(el.arg_perigee_deg).epsilon(1e-12));
        CHECK(back.mean_anomaly_deg == doctest::Approx(el.mean_anomaly_deg).epsilon(1e-12));
        CHECK(back.mean_motion_rev_day == doctest::Approx(el.mean_motion_rev_day).epsilon(1e-12));
        CHECK(std::llabs(back.epoch.unix_ms() - el.epoch.unix_ms()) <= 1);
        CHECK(parsed[0].catalog_number == 10000 + i);
    }
}
