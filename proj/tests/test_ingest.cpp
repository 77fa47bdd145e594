#include <doctest.h>

#include <sstream>

#include "importcast/error.hpp"
#include "importcast/ingest.hpp"
#include "importcast/rng.hpp"

using namespace importcast;

namespace {

ColumnSchema identity_schema() { return ColumnSchema{"year", "month", "product", "weight"}; }

ParseResult parse(const std::string& text, ParsePolicy policy = ParsePolicy::fail_fast) {
    std::istringstream in(text);
    return parse_records(in, identity_schema(), ',', policy);
}

}  // namespace

TEST_CASE("month stamps order and advance") {
    CHECK(MonthStamp{2021, 5} < MonthStamp{2021, 6});
    CHECK(MonthStamp{2021, 12} < MonthStamp{2022, 1});
    CHECK(advance(MonthStamp{2021, 12}, 1) == MonthStamp{2022, 1});
    CHECK(advance(MonthStamp{2022, 1}, -1) == MonthStamp{2021, 12});
    CHECK(advance(MonthStamp{2021, 5}, 13) == MonthStamp{2022, 6});
    CHECK(months_between(MonthStamp{2021, 5}, MonthStamp{2022, 6}) == 13);
    CHECK(to_string(MonthStamp{2021, 5}) == "2021-05");
    CHECK(parse_month("2021-05") == MonthStamp{2021, 5});
    CHECK_THROWS_AS(parse_month("2021/05"), UsageError);
    CHECK_THROWS_AS(parse_month("2021-13"), UsageError);
}

TEST_CASE("parse_records maps fields through the schema") {
    auto result = parse("year,month,product,weight\n2021,5,3P,1000.5\n");
    REQUIRE(result.records.size() == 1);
    const auto& r = result.records[0];
    CHECK(r.year == 2021);
    CHECK(r.month == 5);
    CHECK(r.product_id == "3P");
    CHECK(r.weight_kg == doctest::Approx(1000.5));
}

TEST_CASE("parse_records header-only file gives an empty list") {
    auto result = parse("year,month,product,weight\n");
    CHECK(result.records.empty());
    CHECK(result.skipped.empty());
}

TEST_CASE("parse_records rejects bad rows with the line number") {
    CHECK_THROWS_WITH_AS(parse("year,month,product,weight\n2021,13,3P,10\n"),
                         "line 2: month 13 outside 1..12", RowError);
    CHECK_THROWS_AS(parse("year,month,product,weight\n2021,5,3P,-4\n"), RowError);
    CHECK_THROWS_AS(parse("year,month,product,weight\n2021,5,3P,abc\n"), RowError);
    CHECK_THROWS_AS(parse("year,month,product,weight\n2021,5,,10\n"), RowError);

    try {
        parse("year,month,product,weight\n2021,1,A,1\n2021,13,A,1\n");
        FAIL("expected RowError");
    } catch (const RowError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("parse_records skip policy counts bad rows instead of throwing") {
    auto result = parse("year,month,product,weight\n2021,5,A,1\nbad,5,A,1\n2021,6,A,2\n",
                        ParsePolicy::skip_and_count);
    CHECK(result.records.size() == 2);
    REQUIRE(result.skipped.size() == 1);
    CHECK(result.skipped[0].line == 3);
}

TEST_CASE("parse_records requires the named columns") {
    std::istringstream in("year,month,product\n2021,5,A\n");
    CHECK_THROWS_AS(parse_records(in, identity_schema()), SchemaError);
}

TEST_CASE("parse_records ignores extra columns and quoted fields") {
    auto result = parse(
        "id,year,month,product,extra,weight\n"
        "7,2021,5,\"SOJA, CAKE\",x,12.5\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].product_id == "SOJA, CAKE");
}

TEST_CASE("parse_records supports other delimiters") {
    std::istringstream in("year;month;product;weight\n2021;5;A;3\n");
    auto result = parse_records(in, identity_schema(), ';');
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].weight_kg == doctest::Approx(3.0));
}

TEST_CASE("build_timeline sums same-month records") {
    std::vector<SeriesRecord> records{{2021, 5, "A", 10.0}, {2021, 5, "A", 5.0}};
    auto t = build_timeline(records);
    CHECK(t.series.size() == 1);
    CHECK(t.series.values[0] == doctest::Approx(15.0));
    CHECK(t.gaps.empty());
}

TEST_CASE("build_timeline zero-fills gaps and reports them") {
    std::vector<SeriesRecord> records{{2021, 5, "A", 3.0}, {2021, 7, "A", 4.0}};
    auto t = build_timeline(records);
    REQUIRE(t.series.size() == 3);
    CHECK(t.series.values[1] == 0.0);
    REQUIRE(t.gaps.size() == 1);
    CHECK(t.gaps[0] == MonthStamp{2021, 6});
}

TEST_CASE("build_timeline spans a 14-month grid across a year boundary") {
    std::vector<SeriesRecord> records{{2021, 5, "A", 1.0}, {2022, 6, "B", 2.0}};
    auto t = build_timeline(records);
    CHECK(t.series.size() == 14);
    CHECK(t.series.start == MonthStamp{2021, 5});
    CHECK(t.series.last_stamp() == MonthStamp{2022, 6});
}

TEST_CASE("build_timeline filters by product and errors when empty") {
    std::vector<SeriesRecord> records{{2021, 5, "A", 1.0}, {2021, 6, "B", 2.0}};
    auto t = build_timeline(records, std::string("B"));
    CHECK(t.series.size() == 1);
    CHECK(t.series.start == MonthStamp{2021, 6});
    CHECK_THROWS_WITH_AS(build_timeline(records, std::string("C")),
                         "no records for product 'C'", UsageError);
}

TEST_CASE("timeline length and mass conservation on random record sets") {
    Rng rng(2024);
    for (int round = 0; round < 20; ++round) {
        std::vector<SeriesRecord> records;
        double total = 0.0;
        const int n = 1 + static_cast<int>(rng.next_u64() % 40);
        for (int i = 0; i < n; ++i) {
            SeriesRecord r;
            r.year = 2020 + static_cast<int>(rng.next_u64() % 3);
            r.month = 1 + static_cast<int>(rng.next_u64() % 12);
            r.product_id = rng.next_double() < 0.5 ? "A" : "B";
            r.weight_kg = rng.uniform(0.0, 100.0);
            total += r.weight_kg;
            records.push_back(r);
        }
        auto t = build_timeline(records);

        MonthStamp lo = records[0].stamp(), hi = records[0].stamp();
        for (const auto& r : records) {
            lo = std::min(lo, r.stamp());
            hi = std::max(hi, r.stamp());
        }
        CHECK(static_cast<int>(t.series.size()) == months_between(lo, hi) + 1);

        double grid_total = 0.0;
        for (double v : t.series.values) grid_total += v;
        CHECK(grid_total == doctest::Approx(total).epsilon(1e-6));
    }
}

TEST_CASE("compute_shares single product") {
    std::vector<SeriesRecord> records{{2021, 5, "A", 7.0}};
    auto shares = compute_shares(records);
    REQUIRE(shares.size() == 1);
    CHECK(shares[0].share == doctest::Approx(1.0));
}

TEST_CASE("compute_shares 3:1 split") {
    std::vector<SeriesRecord> records{{2021, 5, "A", 30.0}, {2021, 6, "B", 10.0}};
    auto shares = compute_shares(records);
    REQUIRE(shares.size() == 2);
    CHECK(shares[0].product_id == "A");
    CHECK(shares[0].share == doctest::Approx(0.75));
    CHECK(shares[1].share == doctest::Approx(0.25));
}

TEST_CASE("compute_shares sorts descending with id tiebreak and sums to one") {
    std::vector<SeriesRecord> records{
        {2021, 5, "Z", 10.0}, {2021, 5, "B", 10.0}, {2021, 5, "M", 20.0}};
    auto shares = compute_shares(records);
    REQUIRE(shares.size() == 3);
    CHECK(shares[0].product_id == "M");
    CHECK(shares[1].product_id == "B");  // tie with Z, id ascending
    CHECK(shares[2].product_id == "Z");
    double sum = 0.0;
    for (const auto& s : shares) sum += s.share;
    CHECK(std::abs(sum - 1.0) < 1e-9);
}

TEST_CASE("compute_shares is invariant to record order") {
    std::vector<SeriesRecord> records{
        {2021, 5, "A", 5.0}, {2021, 6, "B", 2.0}, {2021, 7, "A", 3.0}, {2021, 8, "C", 1.0}};
    auto before = compute_shares(records);
    std::reverse(records.begin(), records.end());
    auto after = compute_shares(records);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(before[i].product_id == after[i].product_id);
        CHECK(before[i].share == doctest::Approx(after[i].share));
    }
}

TEST_CASE("compute_shares rejects an all-zero corpus") {
    std::vector<SeriesRecord> records{{2021, 5, "A", 0.0}, {2021, 6, "B", 0.0}};
    CHECK_THROWS_AS(compute_shares(records), UsageError);
    CHECK_THROWS_AS(compute_shares({}), UsageError);
}
