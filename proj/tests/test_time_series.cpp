#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "tsbreak/time_series.hpp"

using namespace tsbreak;

namespace {

std::filesystem::path write_temp_csv(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << body;
    out.close();
    return path;
}

} // namespace

TEST_CASE("date parsing accepts the supported calendar forms") {
    CHECK(format_date(parse_date("2022-07-15")) == "2022-07-15");
    CHECK(format_date(parse_date("2022/07/15")) == "2022-07-15");
    CHECK(format_date(parse_date("2022-07")) == "2022-07-01");
    CHECK(format_date(parse_date("2022")) == "2022-01-01");
    CHECK_FALSE(try_parse_date("2022-13-01").has_value());
    CHECK_FALSE(try_parse_date("2021-02-29").has_value());
    CHECK_FALSE(try_parse_date("not a date").has_value());
    CHECK_FALSE(try_parse_date("").has_value());
    CHECK(try_parse_date("2024-02-29").has_value()); // leap day
}

TEST_CASE("days_between is a signed day count") {
    Date a = parse_date("2022-01-01");
    Date b = parse_date("2022-01-31");
    CHECK(days_between(a, b) == 30);
    CHECK(days_between(b, a) == -30);
    CHECK(days_between(a, a) == 0);
}

TEST_CASE("csv loader handles quoting, CRLF and column lookup") {
    auto path = write_temp_csv("tsb_quoted.csv",
                               "date,\"the, value\",note\r\n"
                               "2021-01-01,1.5,\"a \"\"quoted\"\" cell\"\r\n"
                               "2021-01-02,2.5,\"line\nbreak\"\r\n"
                               "2021-01-03,3.5,plain\r\n");
    TimeSeries ts = load_csv(path.string(), "the, value", "date");
    REQUIRE(ts.size() == 3);
    CHECK(ts.values[0] == 1.5);
    CHECK(ts.values[2] == 3.5);
    CHECK(ts.has_dates());
    CHECK(ts.label(1) == "2021-01-02");
    std::filesystem::remove(path);
}

TEST_CASE("csv loader sorts rows by timestamp") {
    auto path = write_temp_csv("tsb_unsorted.csv",
                               "t,v\n3,30\n1,10\n2,20\n");
    TimeSeries ts = load_csv(path.string(), "v", "t");
    REQUIRE(ts.size() == 3);
    CHECK(ts.values == std::vector<double>{10, 20, 30});
    CHECK(ts.ticks == std::vector<long long>{1, 2, 3});
    std::filesystem::remove(path);
}

TEST_CASE("missing value policies") {
    const std::string body = "t,v\n1,1\n2,\n3,3\n4,NaN\n5,5\n";

    SECTION("drop removes the rows") {
        auto path = write_temp_csv("tsb_drop.csv", body);
        TimeSeries ts = load_csv(path.string(), "v", "t", MissingPolicy::Drop);
        CHECK(ts.values == std::vector<double>{1, 3, 5});
        CHECK(ts.ticks == std::vector<long long>{1, 3, 5});
        std::filesystem::remove(path);
    }
    SECTION("forward fill repeats the last seen value") {
        auto path = write_temp_csv("tsb_ffill.csv", body);
        TimeSeries ts = load_csv(path.string(), "v", "t", MissingPolicy::ForwardFill);
        CHECK(ts.values == std::vector<double>{1, 1, 3, 3, 5});
        std::filesystem::remove(path);
    }
    SECTION("error raises") {
        auto path = write_temp_csv("tsb_err.csv", body);
        CHECK_THROWS_AS(load_csv(path.string(), "v", "t", MissingPolicy::Error), Error);
        std::filesystem::remove(path);
    }
    SECTION("leading gap cannot be forward filled") {
        auto path = write_temp_csv("tsb_lead.csv", "t,v\n1,\n2,2\n");
        CHECK_THROWS_AS(load_csv(path.string(), "v", "t", MissingPolicy::ForwardFill), Error);
        std::filesystem::remove(path);
    }
}

TEST_CASE("csv loader rejects malformed input") {
    SECTION("unknown column") {
        auto path = write_temp_csv("tsb_nocol.csv", "a,b\n1,2\n");
        CHECK_THROWS_AS(load_csv(path.string(), "value", ""), Error);
        std::filesystem::remove(path);
    }
    SECTION("non-numeric value") {
        auto path = write_temp_csv("tsb_text.csv", "t,v\n1,abc\n");
        CHECK_THROWS_AS(load_csv(path.string(), "v", "t"), Error);
        std::filesystem::remove(path);
    }
    SECTION("duplicate timestamps") {
        auto path = write_temp_csv("tsb_dup.csv", "t,v\n1,1\n1,2\n");
        CHECK_THROWS_AS(load_csv(path.string(), "v", "t"), Error);
        std::filesystem::remove(path);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_csv("/nonexistent/nowhere.csv", "v", "t"), Error);
    }
    SECTION("empty file") {
        auto path = write_temp_csv("tsb_empty.csv", "");
        CHECK_THROWS_AS(load_csv(path.string(), "v", "t"), Error);
        std::filesystem::remove(path);
    }
}

TEST_CASE("series without a date column uses 1-based ticks") {
    auto path = write_temp_csv("tsb_nodate.csv", "v\n4\n5\n6\n");
    TimeSeries ts = load_csv(path.string(), "v", "");
    CHECK_FALSE(ts.has_dates());
    CHECK(ts.ticks == std::vector<long long>{1, 2, 3});
    CHECK(ts.label(0) == "1");
    std::filesystem::remove(path);
}

TEST_CASE("make_series builds a validated series") {
    TimeSeries ts = make_series({1.0, 2.0, 3.0});
    REQUIRE_NOTHROW(ts.validate());
    CHECK(ts.size() == 3);
    CHECK(ts.ticks == std::vector<long long>{1, 2, 3});
}

TEST_CASE("validate rejects non-finite values") {
    TimeSeries ts = make_series({1.0, 2.0});
    ts.values[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ts.validate(), Error);
    ts.values[1] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ts.validate(), Error);
}

TEST_CASE("segmentation invariants") {
    Segmentation seg{10, {3, 7}};
    REQUIRE_NOTHROW(seg.validate());
    auto parts = seg.segments();
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == std::pair<std::size_t, std::size_t>{0, 3});
    CHECK(parts[1] == std::pair<std::size_t, std::size_t>{3, 7});
    CHECK(parts[2] == std::pair<std::size_t, std::size_t>{7, 10});

    SECTION("segments partition the index range") {
        std::size_t covered = 0;
        for (auto [lo, hi] : parts) {
            CHECK(lo < hi);
            covered += hi - lo;
        }
        CHECK(covered == seg.n);
    }
    SECTION("break at 0 or n is rejected") {
        CHECK_THROWS_AS((Segmentation{10, {0}}).validate(), Error);
        CHECK_THROWS_AS((Segmentation{10, {10}}).validate(), Error);
    }
    SECTION("unsorted or duplicate breaks are rejected") {
        CHECK_THROWS_AS((Segmentation{10, {7, 3}}).validate(), Error);
        CHECK_THROWS_AS((Segmentation{10, {3, 3}}).validate(), Error);
    }
}
