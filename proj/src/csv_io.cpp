#include "importcast/csv_io.hpp"

#include <charconv>
#include <ostream>

namespace importcast {

std::string format_double(double value) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, r.ptr);
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
    out << "timestamp,value\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << to_string(series.stamp_at(i)) << ',' << format_double(series.values[i]) << '\n';
}

void write_shares_csv(std::ostream& out, const std::vector<ProductShare>& shares) {
    out << "product_id,total_kg,share\n";
    for (const auto& s : shares)
        out << s.product_id << ',' << format_double(s.total_kg) << ',' << format_double(s.share)
            << '\n';
}

void write_forecast_csv(std::ostream& out, const prophet::Forecast& forecast) {
    out << "timestamp,yhat,trend,seasonal\n";
    for (std::size_t i = 0; i < forecast.yhat.size(); ++i)
        out << to_string(forecast.timestamps[i]) << ',' << format_double(forecast.yhat[i]) << ','
            << format_double(forecast.trend_component[i]) << ','
            << format_double(forecast.seasonal_component[i]) << '\n';
}

void write_forecast_csv(std::ostream& out, const std::vector<MonthStamp>& stamps,
                        const std::vector<double>& yhat) {
    out << "timestamp,yhat\n";
    for (std::size_t i = 0; i < yhat.size(); ++i)
        out << to_string(stamps[i]) << ',' << format_double(yhat[i]) << '\n';
}

void write_loss_csv(std::ostream& out, const std::vector<double>& loss_history) {
    out << "epoch,loss\n";
    for (std::size_t i = 0; i < loss_history.size(); ++i)
        out << i + 1 << ',' << format_double(loss_history[i]) << '\n';
}

void write_report_detail_csv(std::ostream& out, const BacktestReport& report) {
    out << "cutoff,step,forecast,actual,sq_error\n";
    for (const auto& c : report.per_cutoff) {
        for (std::size_t step = 0; step < c.forecasts.size(); ++step) {
            const double e = c.forecasts[step] - c.actuals[step];
            out << c.cutoff << ',' << step + 1 << ',' << format_double(c.forecasts[step]) << ','
                << format_double(c.actuals[step]) << ',' << format_double(e * e) << '\n';
        }
    }
}

void write_comparison_csv(std::ostream& out, const ComparisonSummary& summary) {
    out << "model,mse,rmse,winner_flag\n";
    for (const auto& row : summary.rows)
        out << row.model << ',' << format_double(row.mse) << ',' << format_double(row.rmse) << ','
            << (row.winner ? 1 : 0) << '\n';
}

}  // namespace importcast
