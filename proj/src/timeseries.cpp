#include "importcast/timeseries.hpp"

#include "importcast/error.hpp"

namespace importcast {

TimeSeries prefix(const TimeSeries& series, std::size_t count) {
    if (count == 0 || count > series.size())
        throw UsageError("prefix length " + std::to_string(count) + " out of range for series of " +
                         std::to_string(series.size()) + " months");
    TimeSeries out;
    out.start = series.start;
    out.unit = series.unit;
    out.values.assign(series.values.begin(), series.values.begin() + static_cast<long>(count));
    return out;
}

}  // namespace importcast
