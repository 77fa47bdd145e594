#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "importcast/month.hpp"
#include "importcast/timeseries.hpp"

namespace importcast {

// One raw monthly import row: a shipment of `weight_kg` of product
// `product_id` recorded in (year, month). Several rows per month and product
// are normal; they are summed when the timeline is built.
struct SeriesRecord {
    int year = 0;
    int month = 0;  // 1..12
    std::string product_id;
    double weight_kg = 0.0;

    MonthStamp stamp() const { return MonthStamp{year, month}; }
};

// Maps the four required logical columns to header names. Defaults follow the
// conventional Spanish dataset headers; any of them can be overridden at run
// time, so accented or renamed headers are a configuration matter.
struct ColumnSchema {
    std::string year = "ANIO";
    std::string month = "MES";
    std::string product = "PRODUCTO";
    std::string weight = "PESO";
};

enum class ParsePolicy {
    fail_fast,       // throw RowError at the first bad data row
    skip_and_count,  // drop bad rows, report them in ParseResult::skipped
};

struct SkippedRow {
    std::size_t line = 0;  // 1-based, counting the header
    std::string reason;
};

struct ParseResult {
    std::vector<SeriesRecord> records;
    std::vector<SkippedRow> skipped;
};

// Parses delimiter-separated text with a header row. Columns not named in the
// schema are ignored. Fields may be double-quoted ("" escapes a quote).
// Throws SchemaError when a required column is missing from the header.
ParseResult parse_records(std::istream& text, const ColumnSchema& schema = {},
                          char delimiter = ',', ParsePolicy policy = ParsePolicy::fail_fast);

struct TimelineResult {
    TimeSeries series;
    std::vector<MonthStamp> gaps;  // months on the grid with no source records
};

// Builds the monthly grid from earliest to latest record, summing weights per
// month. When `product` is set, only matching records contribute. Months with
// no records are zero-filled and listed in `gaps`.
TimelineResult build_timeline(const std::vector<SeriesRecord>& records,
                              const std::optional<std::string>& product = std::nullopt);

struct ProductShare {
    std::string product_id;
    double total_kg = 0.0;
    double share = 0.0;  // total_kg / grand total, in [0,1]
};

// Per-product totals and their share of the grand total, sorted by share
// descending; ties break by product_id ascending.
std::vector<ProductShare> compute_shares(const std::vector<SeriesRecord>& records);

}  // namespace importcast
