#pragma once

#include <cstddef>
#include <vector>

#include "importcast/month.hpp"

namespace importcast {

enum class Unit { raw_kg, scaled };

// A regular monthly grid: values[i] belongs to the month `start + i`.
struct TimeSeries {
    MonthStamp start;
    std::vector<double> values;
    Unit unit = Unit::raw_kg;

    std::size_t size() const { return values.size(); }
    MonthStamp stamp_at(std::size_t i) const { return advance(start, static_cast<int>(i)); }
    MonthStamp last_stamp() const { return advance(start, static_cast<int>(values.size()) - 1); }
};

// First `count` months of the series.
TimeSeries prefix(const TimeSeries& series, std::size_t count);

}  // namespace importcast
