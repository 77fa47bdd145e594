#pragma once

#include <memory>
#include <string>
#include <vector>

#include "importcast/lstm.hpp"
#include "importcast/metrics.hpp"
#include "importcast/prophet.hpp"
#include "importcast/timeseries.hpp"

namespace importcast {

// A model fitted on one history prefix; forecasts are in raw units.
class FittedModel {
public:
    virtual ~FittedModel() = default;
    virtual std::vector<double> forecast(int horizon) const = 0;
};

// Stateless model factory. fit only ever sees the history prefix, so a
// backtested model cannot read past its cutoff.
class Forecaster {
public:
    virtual ~Forecaster() = default;
    virtual std::string name() const = 0;
    virtual std::unique_ptr<FittedModel> fit(const TimeSeries& history) const = 0;
};

// Repeats the last observed value; the comparison floor.
class NaiveForecaster : public Forecaster {
public:
    std::string name() const override { return "naive"; }
    std::unique_ptr<FittedModel> fit(const TimeSeries& history) const override;
};

class ProphetForecaster : public Forecaster {
public:
    // auto_changepoints picks S = min(25, n/4) from each prefix length.
    explicit ProphetForecaster(prophet::Config config, bool auto_changepoints = true)
        : config_(config), auto_changepoints_(auto_changepoints) {}

    std::string name() const override { return "prophet"; }
    std::unique_ptr<FittedModel> fit(const TimeSeries& history) const override;

private:
    prophet::Config config_;
    bool auto_changepoints_;
};

// Scales each prefix to the target range with a scaler fitted on that prefix
// alone, trains, then unscales the forecasts.
class LstmForecaster : public Forecaster {
public:
    LstmForecaster(lstm::Config config, double target_lo = 0.0, double target_hi = 1.0)
        : config_(config), target_lo_(target_lo), target_hi_(target_hi) {}

    std::string name() const override { return "lstm"; }
    std::unique_ptr<FittedModel> fit(const TimeSeries& history) const override;

private:
    lstm::Config config_;
    double target_lo_;
    double target_hi_;
};

struct CutoffResult {
    int cutoff = 0;  // the model saw series[0..cutoff)
    std::vector<double> forecasts;
    std::vector<double> actuals;
    MetricPair metrics;
};

struct BacktestReport {
    std::string model_name;
    int horizon = 0;
    int n_points = 0;
    std::vector<int> cutoffs;
    std::vector<CutoffResult> per_cutoff;
    MetricPair aggregate;  // pooled over all cutoff*horizon pairs
};

// K cutoff indices, evenly spaced, the last as late as the horizon allows,
// none earlier than min_train. Throws UsageError with the maximum feasible K
// when the request cannot be met.
std::vector<int> plan_cutoffs(int n_points, int k, int horizon, int min_train);

// Rolling-origin evaluation: at each cutoff c the model is fitted on
// series[0..c) and judged on the next `horizon` actuals, in raw units.
// Cutoffs run concurrently; the report is assembled in cutoff order.
BacktestReport run_backtest(const TimeSeries& series, const Forecaster& model, int k, int horizon,
                            int min_train);

struct ComparisonRow {
    std::string model;
    double mse = 0.0;
    double rmse = 0.0;
    bool winner = false;
};

struct ComparisonSummary {
    std::vector<ComparisonRow> rows;  // input order; exactly one winner
    std::string winner;
};

// Requires at least two reports over identical cutoffs and horizon. The
// winner has the lowest RMSE; ties break by lower MSE, then by name.
ComparisonSummary compare(const std::vector<BacktestReport>& reports);

}  // namespace importcast
