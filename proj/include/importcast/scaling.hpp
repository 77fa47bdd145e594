#pragma once

#include "importcast/timeseries.hpp"

namespace importcast {

// Affine min-max map from [min, max] onto [target_lo, target_hi].
// A constant series (max == min) maps every value to target_lo and unscales
// back to the constant.
struct Scaler {
    double min = 0.0;
    double max = 0.0;
    double target_lo = 0.0;
    double target_hi = 1.0;
};

// Extrema of `series` as the source range; target defaults to [0,1].
Scaler fit_scaler(const TimeSeries& series, double target_lo = 0.0, double target_hi = 1.0);

// raw_kg -> scaled. Throws UsageError when the unit tag does not match.
TimeSeries scale(const Scaler& scaler, const TimeSeries& series);

// scaled -> raw_kg.
TimeSeries unscale(const Scaler& scaler, const TimeSeries& series);

double scale_value(const Scaler& scaler, double x);
double unscale_value(const Scaler& scaler, double y);

}  // namespace importcast
