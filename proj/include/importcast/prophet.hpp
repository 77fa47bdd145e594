#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "importcast/month.hpp"
#include "importcast/timeseries.hpp"

namespace importcast::prophet {

enum class Growth { linear, logistic };

struct Config {
    Growth growth = Growth::linear;
    int n_changepoints = 0;          // S
    double changepoint_range = 0.8;  // fraction of history eligible for changepoints
    double period = 12.0;            // P, seasonal period in months
    int fourier_order = 3;           // N harmonic pairs
    double ridge_lambda_trend = 0.1;     // L2 penalty on the rate adjustments
    double ridge_lambda_seasonal = 1.0;  // L2 penalty on the Fourier coefficients
    double capacity = 0.0;               // C, logistic growth ceiling
};

// Fitted additive model. The trend is piecewise: base rate k and offset m,
// adjusted by delta[j] from changepoint[j] on; gamma[j] is the offset
// correction that keeps the trend continuous there (derived, never fitted).
// beta holds the Fourier coefficients as a_1, b_1, ..., a_N, b_N.
struct Params {
    double k = 0.0;
    double m = 0.0;
    std::vector<double> changepoints;  // time indices, strictly ascending
    std::vector<double> delta;
    std::vector<double> gamma;
    std::vector<double> beta;

    Growth growth = Growth::linear;
    double period = 12.0;
    int fourier_order = 0;
    double capacity = 0.0;

    MonthStamp origin;  // month at time index 0, so forecasts carry timestamps
};

struct Forecast {
    std::vector<MonthStamp> timestamps;
    std::vector<double> yhat;
    std::vector<double> trend_component;
    std::vector<double> seasonal_component;
};

// S candidate indices spaced uniformly over the first
// floor(range_fraction * n_points) indices, excluding index 0.
std::vector<double> place_changepoints(int n_points, int n_changepoints, double range_fraction);

// a(t): a_j = 1 when t has passed changepoint j.
std::vector<double> indicator_vector(double t, const std::vector<double>& changepoints);

// Piecewise-linear trend: (k + a(t)'delta) * t + (m + a(t)'gamma) with
// gamma_j = -s_j * delta_j.
double trend_linear(double t, double k, double m, const std::vector<double>& changepoints,
                    const std::vector<double>& delta);

// Saturating trend: capacity / (1 + exp(-(k + a(t)'delta) * (t - (m + a(t)'gamma)))).
// gamma_j follows the continuity recurrence; throws FitError when an effective
// rate hits zero.
double trend_logistic(double t, double capacity, double k, double m,
                      const std::vector<double>& changepoints, const std::vector<double>& delta);

// Offset corrections for the logistic trend, one per changepoint.
std::vector<double> logistic_gamma(double k, double m, const std::vector<double>& changepoints,
                                   const std::vector<double>& delta);

// [cos(2*pi*1*t/P), sin(2*pi*1*t/P), ..., cos(2*pi*N*t/P), sin(2*pi*N*t/P)]
std::vector<double> fourier_features(double t, double period, int order);

// Fits trend + seasonality on a raw series at time indices 0..n-1.
// Linear growth is a single ridge least-squares solve; logistic growth
// alternates a seasonal solve with gradient descent on the trend parameters.
// Deterministic for fixed inputs.
Params fit(const TimeSeries& series, const Config& config);

// Trend value under the fitted parameters at an arbitrary time index.
double trend_value(const Params& params, double t);
// Seasonal value (beta' fourier_features).
double seasonal_value(const Params& params, double t);

// h steps at indices last_training_index+1 .. last_training_index+h.
// yhat is trend + seasonal elementwise.
Forecast predict(const Params& params, int horizon, int last_training_index);

}  // namespace importcast::prophet
