#include "importcast/month.hpp"

#include <charconv>
#include <cstdio>

#include "importcast/error.hpp"

namespace importcast {

bool is_valid(const MonthStamp& m) { return m.month >= 1 && m.month <= 12; }

MonthStamp advance(const MonthStamp& m, int n) {
    int total = m.year * 12 + (m.month - 1) + n;
    int year = total / 12;
    int month = total % 12;
    if (month < 0) {  // keep month in [0,11] for negative totals
        month += 12;
        year -= 1;
    }
    return MonthStamp{year, month + 1};
}

int months_between(const MonthStamp& a, const MonthStamp& b) {
    return 12 * (b.year - a.year) + (b.month - a.month);
}

std::string to_string(const MonthStamp& m) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", m.year, m.month);
    return buf;
}

MonthStamp parse_month(const std::string& text) {
    MonthStamp out;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto r1 = std::from_chars(begin, end, out.year);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != '-')
        throw UsageError("expected YYYY-MM, got '" + text + "'");
    auto r2 = std::from_chars(r1.ptr + 1, end, out.month);
    if (r2.ec != std::errc{} || r2.ptr != end || !is_valid(out))
        throw UsageError("expected YYYY-MM, got '" + text + "'");
    return out;
}

}  // namespace importcast
