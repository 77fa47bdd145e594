#include "importcast/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>

#include "importcast/error.hpp"

namespace importcast {
namespace {

// Splits one line into fields. Double quotes wrap fields that contain the
// delimiter; "" inside a quoted field is a literal quote.
std::vector<std::string> split_fields(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_bom(std::string s) {
    if (s.size() >= 3 && s[0] == '\xEF' && s[1] == '\xBB' && s[2] == '\xBF') return s.substr(3);
    return s;
}

bool parse_int(const std::string& s, int& out) {
    auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

bool parse_real(const std::string& s, double& out) {
    auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw SchemaError("required column '" + name + "' not found in header");
}

}  // namespace

ParseResult parse_records(std::istream& text, const ColumnSchema& schema, char delimiter,
                          ParsePolicy policy) {
    std::string line;
    if (!std::getline(text, line)) throw SchemaError("input is empty, expected a header row");

    auto header = split_fields(strip_bom(line), delimiter);
    for (auto& h : header) h = trim(h);

    const std::size_t col_year = find_column(header, schema.year);
    const std::size_t col_month = find_column(header, schema.month);
    const std::size_t col_product = find_column(header, schema.product);
    const std::size_t col_weight = find_column(header, schema.weight);
    const std::size_t need = std::max({col_year, col_month, col_product, col_weight}) + 1;

    ParseResult result;
    std::size_t line_no = 1;
    while (std::getline(text, line)) {
        ++line_no;
        if (trim(line).empty()) continue;

        auto fields = split_fields(line, delimiter);
        std::string reason;
        SeriesRecord rec;
        if (fields.size() < need) {
            reason = "expected at least " + std::to_string(need) + " fields, got " +
                     std::to_string(fields.size());
        } else {
            std::string year_s = trim(fields[col_year]);
            std::string month_s = trim(fields[col_month]);
            std::string weight_s = trim(fields[col_weight]);
            rec.product_id = trim(fields[col_product]);
            if (!parse_int(year_s, rec.year)) {
                reason = "non-integer year '" + year_s + "'";
            } else if (!parse_int(month_s, rec.month)) {
                reason = "non-integer month '" + month_s + "'";
            } else if (rec.month < 1 || rec.month > 12) {
                reason = "month " + month_s + " outside 1..12";
            } else if (rec.product_id.empty()) {
                reason = "empty product id";
            } else if (!parse_real(weight_s, rec.weight_kg)) {
                reason = "non-numeric weight '" + weight_s + "'";
            } else if (!std::isfinite(rec.weight_kg) || rec.weight_kg < 0.0) {
                reason = "weight must be finite and non-negative, got '" + weight_s + "'";
            }
        }

        if (reason.empty()) {
            result.records.push_back(std::move(rec));
        } else if (policy == ParsePolicy::fail_fast) {
            throw RowError(line_no, reason);
        } else {
            result.skipped.push_back(SkippedRow{line_no, std::move(reason)});
        }
    }
    return result;
}

TimelineResult build_timeline(const std::vector<SeriesRecord>& records,
                              const std::optional<std::string>& product) {
    MonthStamp lo{};
    MonthStamp hi{};
    bool any = false;
    for (const auto& rec : records) {
        if (product && rec.product_id != *product) continue;
        MonthStamp s = rec.stamp();
        if (!any) {
            lo = hi = s;
            any = true;
        } else {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
    }
    if (!any) {
        if (product) throw UsageError("no records for product '" + *product + "'");
        throw UsageError("no records to build a timeline from");
    }

    const int n = months_between(lo, hi) + 1;
    TimelineResult out;
    out.series.start = lo;
    out.series.unit = Unit::raw_kg;
    out.series.values.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& rec : records) {
        if (product && rec.product_id != *product) continue;
        auto i = static_cast<std::size_t>(months_between(lo, rec.stamp()));
        out.series.values[i] += rec.weight_kg;
        seen[i] = true;
    }
    for (int i = 0; i < n; ++i)
        if (!seen[static_cast<std::size_t>(i)]) out.gaps.push_back(advance(lo, i));
    return out;
}

std::vector<ProductShare> compute_shares(const std::vector<SeriesRecord>& records) {
    if (records.empty()) throw UsageError("no records to compute shares from");

    std::map<std::string, double> totals;
    double grand = 0.0;
    for (const auto& rec : records) {
        totals[rec.product_id] += rec.weight_kg;
        grand += rec.weight_kg;
    }
    if (grand <= 0.0) throw UsageError("total weight is zero, shares are undefined");

    std::vector<ProductShare> shares;
    shares.reserve(totals.size());
    for (const auto& [id, total] : totals)
        shares.push_back(ProductShare{id, total, total / grand});

    std::stable_sort(shares.begin(), shares.end(), [](const ProductShare& a, const ProductShare& b) {
        if (a.share != b.share) return a.share > b.share;
        return a.product_id < b.product_id;
    });
    return shares;
}

}  // namespace importcast
