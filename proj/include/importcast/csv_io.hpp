#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "importcast/backtest.hpp"
#include "importcast/ingest.hpp"
#include "importcast/prophet.hpp"
#include "importcast/timeseries.hpp"

namespace importcast {

// Shortest decimal form that round-trips the exact double; stable across runs.
std::string format_double(double value);

// timestamp,value
void write_series_csv(std::ostream& out, const TimeSeries& series);

// product_id,total_kg,share
void write_shares_csv(std::ostream& out, const std::vector<ProductShare>& shares);

// timestamp,yhat,trend,seasonal
void write_forecast_csv(std::ostream& out, const prophet::Forecast& forecast);

// timestamp,yhat
void write_forecast_csv(std::ostream& out, const std::vector<MonthStamp>& stamps,
                        const std::vector<double>& yhat);

// epoch,loss
void write_loss_csv(std::ostream& out, const std::vector<double>& loss_history);

// cutoff,step,forecast,actual,sq_error — one row per forecasted month.
void write_report_detail_csv(std::ostream& out, const BacktestReport& report);

// model,mse,rmse,winner_flag
void write_comparison_csv(std::ostream& out, const ComparisonSummary& summary);

}  // namespace importcast
