#pragma once

#include <compare>
#include <string>

namespace importcast {

// A point on the monthly grid. Ordered by (year, month); the successor of
// (y, 12) is (y+1, 1).
struct MonthStamp {
    int year = 0;
    int month = 1;  // 1..12

    auto operator<=>(const MonthStamp&) const = default;
};

bool is_valid(const MonthStamp& m);

// Stamp advanced by `n` months (n may be negative).
MonthStamp advance(const MonthStamp& m, int n);

// Signed month count from `a` to `b`: 12*(b.year-a.year) + (b.month-a.month).
int months_between(const MonthStamp& a, const MonthStamp& b);

// "YYYY-MM"
std::string to_string(const MonthStamp& m);

// Parses "YYYY-MM"; throws UsageError on malformed input.
MonthStamp parse_month(const std::string& text);

}  // namespace importcast
