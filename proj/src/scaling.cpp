#include "importcast/scaling.hpp"

#include <algorithm>

#include "importcast/error.hpp"

namespace importcast {

Scaler fit_scaler(const TimeSeries& series, double target_lo, double target_hi) {
    if (series.values.empty()) throw UsageError("cannot fit a scaler on an empty series");
    if (!(target_hi > target_lo)) throw UsageError("scaler target range must have target_hi > target_lo");
    auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
    return Scaler{*lo, *hi, target_lo, target_hi};
}

double scale_value(const Scaler& s, double x) {
    if (s.max == s.min) return s.target_lo;
    return s.target_lo + (x - s.min) * (s.target_hi - s.target_lo) / (s.max - s.min);
}

double unscale_value(const Scaler& s, double y) {
    if (s.max == s.min) return s.min;
    return s.min + (y - s.target_lo) * (s.max - s.min) / (s.target_hi - s.target_lo);
}

TimeSeries scale(const Scaler& scaler, const TimeSeries& series) {
    if (series.unit != Unit::raw_kg)
        throw UsageError("scale expects a raw_kg series; it is already scaled");
    TimeSeries out;
    out.start = series.start;
    out.unit = Unit::scaled;
    out.values.reserve(series.size());
    for (double x : series.values) out.values.push_back(scale_value(scaler, x));
    return out;
}

TimeSeries unscale(const Scaler& scaler, const TimeSeries& series) {
    if (series.unit != Unit::scaled)
        throw UsageError("unscale expects a scaled series; it is already in raw units");
    TimeSeries out;
    out.start = series.start;
    out.unit = Unit::raw_kg;
    out.values.reserve(series.size());
    for (double y : series.values) out.values.push_back(unscale_value(scaler, y));
    return out;
}

}  // namespace importcast
