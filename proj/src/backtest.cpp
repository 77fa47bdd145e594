#include "importcast/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "importcast/error.hpp"
#include "importcast/scaling.hpp"
#include "importcast/windows.hpp"

namespace importcast {
namespace {

class NaiveFit : public FittedModel {
public:
    explicit NaiveFit(double last) : last_(last) {}
    std::vector<double> forecast(int horizon) const override {
        return std::vector<double>(static_cast<std::size_t>(horizon), last_);
    }

private:
    double last_;
};

class ProphetFit : public FittedModel {
public:
    ProphetFit(prophet::Params params, int last_index)
        : params_(std::move(params)), last_index_(last_index) {}
    std::vector<double> forecast(int horizon) const override {
        return prophet::predict(params_, horizon, last_index_).yhat;
    }

private:
    prophet::Params params_;
    int last_index_;
};

class LstmFit : public FittedModel {
public:
    LstmFit(lstm::Params params, Scaler scaler, std::vector<double> seed_window)
        : params_(std::move(params)), scaler_(scaler), seed_window_(std::move(seed_window)) {}
    std::vector<double> forecast(int horizon) const override {
        auto scaled = lstm::forecast_recursive(params_, seed_window_, horizon);
        for (double& v : scaled) v = unscale_value(scaler_, v);
        return scaled;
    }

private:
    lstm::Params params_;
    Scaler scaler_;
    std::vector<double> seed_window_;
};

}  // namespace

std::unique_ptr<FittedModel> NaiveForecaster::fit(const TimeSeries& history) const {
    if (history.values.empty()) throw UsageError("cannot fit on an empty history");
    return std::make_unique<NaiveFit>(history.values.back());
}

std::unique_ptr<FittedModel> ProphetForecaster::fit(const TimeSeries& history) const {
    prophet::Config config = config_;
    if (auto_changepoints_) {
        const int n = static_cast<int>(history.size());
        config.n_changepoints = std::min(25, n / 4);
    }
    prophet::Params params = prophet::fit(history, config);
    return std::make_unique<ProphetFit>(std::move(params), static_cast<int>(history.size()) - 1);
}

std::unique_ptr<FittedModel> LstmForecaster::fit(const TimeSeries& history) const {
    Scaler scaler = fit_scaler(history, target_lo_, target_hi_);
    TimeSeries scaled = scale(scaler, history);
    WindowedDataset dataset = make_windows(scaled, static_cast<std::size_t>(config_.window_len));
    lstm::TrainResult trained = lstm::train(dataset, config_);
    std::vector<double> seed(scaled.values.end() - config_.window_len, scaled.values.end());
    return std::make_unique<LstmFit>(std::move(trained.params), scaler, std::move(seed));
}

std::vector<int> plan_cutoffs(int n_points, int k, int horizon, int min_train) {
    if (k < 1) throw UsageError("cutoff count must be at least 1");
    if (horizon < 1) throw UsageError("horizon must be at least 1");
    if (min_train < 1) throw UsageError("min_train must be at least 1");
    if (min_train + horizon > n_points)
        throw UsageError("series of " + std::to_string(n_points) +
                         " points cannot hold min_train + horizon = " +
                         std::to_string(min_train + horizon) + "; maximum feasible cutoffs: 0");

    const int last = n_points - horizon;
    const int span = last - min_train;
    const int max_k = span + 1;
    if (k > max_k)
        throw UsageError("cannot place " + std::to_string(k) + " cutoffs; at most " +
                         std::to_string(max_k) + " fit between min_train and the horizon");

    std::vector<int> cutoffs(static_cast<std::size_t>(k));
    if (k == 1) {
        cutoffs[0] = last;
        return cutoffs;
    }
    for (int i = 0; i < k; ++i) {
        const double pos = static_cast<double>(i) * span / (k - 1);
        cutoffs[static_cast<std::size_t>(i)] = min_train + static_cast<int>(std::ceil(pos));
    }
    return cutoffs;
}

BacktestReport run_backtest(const TimeSeries& series, const Forecaster& model, int k, int horizon,
                            int min_train) {
    const int n = static_cast<int>(series.size());
    std::vector<int> cutoffs = plan_cutoffs(n, k, horizon, min_train);

    auto evaluate = [&series, &model, horizon](int cutoff) {
        CutoffResult result;
        result.cutoff = cutoff;
        try {
            auto fitted = model.fit(prefix(series, static_cast<std::size_t>(cutoff)));
            result.forecasts = fitted->forecast(horizon);
        } catch (const std::exception& e) {
            throw FitError("model '" + model.name() + "' failed at cutoff " +
                           std::to_string(cutoff) + ": " + e.what());
        }
        result.actuals.assign(series.values.begin() + cutoff,
                              series.values.begin() + cutoff + horizon);
        result.metrics = make_metrics(result.forecasts, result.actuals);
        return result;
    };

    // Cutoffs are independent; run them in parallel and collect in order.
    std::vector<std::future<CutoffResult>> futures;
    futures.reserve(cutoffs.size());
    for (int cutoff : cutoffs)
        futures.push_back(std::async(std::launch::async, evaluate, cutoff));

    BacktestReport report;
    report.model_name = model.name();
    report.horizon = horizon;
    report.n_points = n;
    report.cutoffs = cutoffs;
    std::vector<double> pooled_forecasts;
    std::vector<double> pooled_actuals;
    for (auto& fut : futures) {
        CutoffResult result = fut.get();
        pooled_forecasts.insert(pooled_forecasts.end(), result.forecasts.begin(),
                                result.forecasts.end());
        pooled_actuals.insert(pooled_actuals.end(), result.actuals.begin(), result.actuals.end());
        report.per_cutoff.push_back(std::move(result));
    }
    report.aggregate = make_metrics(pooled_forecasts, pooled_actuals);
    return report;
}

ComparisonSummary compare(const std::vector<BacktestReport>& reports) {
    if (reports.size() < 2) throw UsageError("compare needs at least two reports");
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (reports[i].cutoffs != reports[0].cutoffs || reports[i].horizon != reports[0].horizon)
            throw UsageError("reports '" + reports[0].model_name + "' and '" +
                             reports[i].model_name +
                             "' cover different cutoffs or horizons and cannot be compared");
    }

    ComparisonSummary summary;
    std::size_t best = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        summary.rows.push_back(ComparisonRow{reports[i].model_name, reports[i].aggregate.mse,
                                             reports[i].aggregate.rmse, false});
        const ComparisonRow& row = summary.rows[i];
        const ComparisonRow& leader = summary.rows[best];
        if (row.rmse < leader.rmse ||
            (row.rmse == leader.rmse &&
             (row.mse < leader.mse || (row.mse == leader.mse && row.model < leader.model))))
            best = i;
    }
    summary.rows[best].winner = true;
    summary.winner = summary.rows[best].model;
    return summary;
}

}  // namespace importcast
