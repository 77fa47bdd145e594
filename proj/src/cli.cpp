#include "importcast/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "importcast/backtest.hpp"
#include "importcast/csv_io.hpp"
#include "importcast/error.hpp"
#include "importcast/scaling.hpp"
#include "importcast/serialize.hpp"
#include "importcast/svg.hpp"
#include "importcast/windows.hpp"

namespace importcast {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// All randomness descends from the single top-level seed; each consumer gets
// a fixed offset so streams never collide.
constexpr std::uint64_t kLstmSeedOffset = 0x4C53;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) throw UsageError("unknown key '" + item.key() + "' in " + where);
    }
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    reject_unknown_keys(j,
                        {"input", "delimiter", "parse_policy", "schema", "product", "scale_range",
                         "window_len", "train_fraction", "prophet", "lstm", "backtest", "out",
                         "seed"},
                        "config");
    if (j.contains("input")) cfg.input_path = j.at("input").get<std::string>();
    if (j.contains("delimiter")) {
        const auto d = j.at("delimiter").get<std::string>();
        if (d.size() != 1) throw UsageError("delimiter must be a single character");
        cfg.delimiter = d[0];
    }
    if (j.contains("parse_policy")) {
        const auto p = j.at("parse_policy").get<std::string>();
        if (p == "fail_fast") {
            cfg.parse_policy = ParsePolicy::fail_fast;
        } else if (p == "skip") {
            cfg.parse_policy = ParsePolicy::skip_and_count;
        } else {
            throw UsageError("parse_policy must be 'fail_fast' or 'skip'");
        }
    }
    if (j.contains("schema")) {
        const json& s = j.at("schema");
        reject_unknown_keys(s, {"year", "month", "product", "weight"}, "config.schema");
        if (s.contains("year")) cfg.schema.year = s.at("year").get<std::string>();
        if (s.contains("month")) cfg.schema.month = s.at("month").get<std::string>();
        if (s.contains("product")) cfg.schema.product = s.at("product").get<std::string>();
        if (s.contains("weight")) cfg.schema.weight = s.at("weight").get<std::string>();
    }
    if (j.contains("product")) cfg.product = j.at("product").get<std::string>();
    if (j.contains("scale_range")) {
        const auto r = j.at("scale_range").get<std::vector<double>>();
        if (r.size() != 2) throw UsageError("scale_range must be [lo, hi]");
        cfg.scale_lo = r[0];
        cfg.scale_hi = r[1];
    }
    if (j.contains("window_len")) cfg.window_len = j.at("window_len").get<int>();
    if (j.contains("train_fraction")) cfg.train_fraction = j.at("train_fraction").get<double>();
    if (j.contains("prophet")) {
        const json& p = j.at("prophet");
        reject_unknown_keys(p,
                            {"growth", "n_changepoints", "changepoint_range", "period",
                             "fourier_order", "ridge_lambda_trend", "ridge_lambda_seasonal",
                             "capacity"},
                            "config.prophet");
        auto& s = cfg.prophet;
        if (p.contains("growth")) s.growth = p.at("growth").get<std::string>();
        if (p.contains("n_changepoints")) s.n_changepoints = p.at("n_changepoints").get<int>();
        if (p.contains("changepoint_range"))
            s.changepoint_range = p.at("changepoint_range").get<double>();
        if (p.contains("period")) s.period = p.at("period").get<double>();
        if (p.contains("fourier_order")) s.fourier_order = p.at("fourier_order").get<int>();
        if (p.contains("ridge_lambda_trend"))
            s.ridge_lambda_trend = p.at("ridge_lambda_trend").get<double>();
        if (p.contains("ridge_lambda_seasonal"))
            s.ridge_lambda_seasonal = p.at("ridge_lambda_seasonal").get<double>();
        if (p.contains("capacity")) s.capacity = p.at("capacity").get<double>();
    }
    if (j.contains("lstm")) {
        const json& p = j.at("lstm");
        reject_unknown_keys(p, {"hidden_dim", "epochs", "learning_rate", "grad_clip"},
                            "config.lstm");
        auto& s = cfg.lstm;
        if (p.contains("hidden_dim")) s.hidden_dim = p.at("hidden_dim").get<int>();
        if (p.contains("epochs")) s.epochs = p.at("epochs").get<int>();
        if (p.contains("learning_rate")) s.learning_rate = p.at("learning_rate").get<double>();
        if (p.contains("grad_clip")) s.grad_clip = p.at("grad_clip").get<double>();
    }
    if (j.contains("backtest")) {
        const json& p = j.at("backtest");
        reject_unknown_keys(p, {"cutoffs", "horizon", "min_train"}, "config.backtest");
        auto& s = cfg.backtest;
        if (p.contains("cutoffs")) s.cutoffs = p.at("cutoffs").get<int>();
        if (p.contains("horizon")) s.horizon = p.at("horizon").get<int>();
        if (p.contains("min_train")) s.min_train = p.at("min_train").get<int>();
    }
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

prophet::Growth parse_growth(const std::string& growth) {
    if (growth == "linear") return prophet::Growth::linear;
    if (growth == "logistic") return prophet::Growth::logistic;
    throw UsageError("prophet growth must be 'linear' or 'logistic', got '" + growth + "'");
}

prophet::Config make_prophet_config(const ProphetSettings& s, int n_points) {
    prophet::Config c;
    c.growth = parse_growth(s.growth);
    c.n_changepoints = s.n_changepoints >= 0 ? s.n_changepoints : std::min(25, n_points / 4);
    c.changepoint_range = s.changepoint_range;
    c.period = s.period;
    c.fourier_order = s.fourier_order;
    c.ridge_lambda_trend = s.ridge_lambda_trend;
    c.ridge_lambda_seasonal = s.ridge_lambda_seasonal;
    c.capacity = s.capacity;
    return c;
}

lstm::Config make_lstm_config(const RunConfig& cfg) {
    lstm::Config c;
    c.input_dim = 1;
    c.hidden_dim = cfg.lstm.hidden_dim;
    c.window_len = cfg.window_len;
    c.epochs = cfg.lstm.epochs;
    c.learning_rate = cfg.lstm.learning_rate;
    c.grad_clip = cfg.lstm.grad_clip;
    c.seed = cfg.seed + kLstmSeedOffset;
    return c;
}

ParseResult read_records(const RunConfig& cfg) {
    if (cfg.input_path.empty())
        throw UsageError("no input file given; pass --input or set it in the config");
    std::ifstream in(cfg.input_path);
    if (!in) throw UsageError("cannot open input file '" + cfg.input_path + "'");
    return parse_records(in, cfg.schema, cfg.delimiter, cfg.parse_policy);
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path out(cfg.out_dir);
    fs::create_directories(out);
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

void print_metrics(const std::string& label, const MetricPair& metrics) {
    std::cout << label << ": mse " << format_double(metrics.mse) << ", rmse "
              << format_double(metrics.rmse) << "\n";
}

void print_comparison(const ComparisonSummary& summary) {
    std::cout << std::left << std::setw(10) << "model" << std::setw(24) << "mse" << std::setw(24)
              << "rmse" << "winner\n";
    for (const auto& row : summary.rows) {
        std::cout << std::left << std::setw(10) << row.model << std::setw(24)
                  << format_double(row.mse) << std::setw(24) << format_double(row.rmse)
                  << (row.winner ? "*" : "") << "\n";
    }
    std::cout << "winner: " << summary.winner << "\n";
}

int resolve_min_train(const BacktestSettings& s) {
    return s.min_train > 0 ? s.min_train : std::max(2 * s.horizon, 12);
}

// Out-of-sample diagnostic used by both fit commands: fit on the first
// train_fraction of the series, forecast the rest, score in raw units.
MetricPair prophet_validation(const TimeSeries& series, const RunConfig& cfg) {
    auto parts = split_chronological(series, cfg.train_fraction);
    auto config = make_prophet_config(cfg.prophet, static_cast<int>(parts.train.size()));
    auto params = prophet::fit(parts.train, config);
    auto fc = prophet::predict(params, static_cast<int>(parts.validation.size()),
                               static_cast<int>(parts.train.size()) - 1);
    return make_metrics(fc.yhat, parts.validation.values);
}

MetricPair lstm_validation(const TimeSeries& series, const RunConfig& cfg) {
    auto parts = split_chronological(series, cfg.train_fraction);
    Scaler scaler = fit_scaler(parts.train, cfg.scale_lo, cfg.scale_hi);
    TimeSeries scaled_train = scale(scaler, parts.train);
    auto dataset = make_windows(scaled_train, static_cast<std::size_t>(cfg.window_len));
    auto trained = lstm::train(dataset, make_lstm_config(cfg));
    std::vector<double> seed(scaled_train.values.end() - cfg.window_len,
                             scaled_train.values.end());
    auto forecast = lstm::forecast_recursive(trained.params, seed,
                                             static_cast<int>(parts.validation.size()));
    for (double& v : forecast) v = unscale_value(scaler, v);
    return make_metrics(forecast, parts.validation.values);
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    return config_from_json(load_json_file(path));
}

void validate(const RunConfig& cfg) {
    if (!(cfg.scale_hi > cfg.scale_lo)) throw UsageError("scale_range must have hi > lo");
    if (cfg.window_len < 1) throw UsageError("window_len must be positive");
    if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
        throw UsageError("train_fraction must lie in (0,1)");

    const auto& p = cfg.prophet;
    parse_growth(p.growth);
    if (!(p.changepoint_range > 0.0 && p.changepoint_range <= 1.0))
        throw UsageError("prophet.changepoint_range must lie in (0,1]");
    if (!(p.period > 0.0)) throw UsageError("prophet.period must be positive");
    if (p.fourier_order < 1) throw UsageError("prophet.fourier_order must be at least 1");
    if (p.ridge_lambda_trend < 0.0 || p.ridge_lambda_seasonal < 0.0)
        throw UsageError("prophet ridge penalties must be non-negative");
    if (p.growth == "logistic" && !(p.capacity > 0.0))
        throw UsageError("logistic growth requires prophet.capacity > 0");

    const auto& l = cfg.lstm;
    if (l.hidden_dim < 1 || l.epochs < 1)
        throw UsageError("lstm.hidden_dim and lstm.epochs must be positive");
    if (!(l.learning_rate > 0.0) || !(l.grad_clip > 0.0))
        throw UsageError("lstm.learning_rate and lstm.grad_clip must be positive");

    const auto& b = cfg.backtest;
    if (b.cutoffs < 1) throw UsageError("backtest.cutoffs must be at least 1");
    if (b.horizon < 1) throw UsageError("backtest.horizon must be at least 1");
    if (b.min_train < 0) throw UsageError("backtest.min_train must not be negative");
}

void cmd_ingest(const RunConfig& cfg) {
    ParseResult parsed = read_records(cfg);
    TimelineResult timeline = build_timeline(parsed.records, cfg.product);
    auto shares = compute_shares(parsed.records);

    const fs::path out = prepare_out_dir(cfg);
    {
        std::ostringstream s;
        write_series_csv(s, timeline.series);
        write_file(out / "series.csv", s.str());
    }
    {
        std::ostringstream s;
        s << "# months with no records: " << timeline.gaps.size() << "\n";
        for (const auto& g : timeline.gaps) s << to_string(g) << "\n";
        write_file(out / "gaps.txt", s.str());
    }
    {
        std::ostringstream s;
        write_shares_csv(s, shares);
        write_file(out / "shares.csv", s.str());
    }

    std::cout << "rows: " << parsed.records.size() << " parsed";
    if (!parsed.skipped.empty()) std::cout << ", " << parsed.skipped.size() << " skipped";
    std::cout << "\nproducts: " << shares.size() << "\n";
    std::cout << "timeline: " << to_string(timeline.series.start) << ".."
              << to_string(timeline.series.last_stamp()) << ", " << timeline.series.size()
              << " months, " << timeline.gaps.size() << " gap months\n";
    std::cout << "wrote " << (out / "series.csv").string() << ", " << (out / "gaps.txt").string()
              << ", " << (out / "shares.csv").string() << "\n";
}

void cmd_shares(const RunConfig& cfg) {
    ParseResult parsed = read_records(cfg);
    auto shares = compute_shares(parsed.records);
    const fs::path out = prepare_out_dir(cfg);
    std::ostringstream s;
    write_shares_csv(s, shares);
    write_file(out / "shares.csv", s.str());
    std::cout << "products: " << shares.size() << "\nwrote " << (out / "shares.csv").string()
              << "\n";
}

void cmd_fit_prophet(const RunConfig& cfg) {
    ParseResult parsed = read_records(cfg);
    TimelineResult timeline = build_timeline(parsed.records, cfg.product);
    const TimeSeries& series = timeline.series;

    MetricPair validation = prophet_validation(series, cfg);

    auto config = make_prophet_config(cfg.prophet, static_cast<int>(series.size()));
    auto params = prophet::fit(series, config);

    const fs::path out = prepare_out_dir(cfg);
    json doc{{"model", "prophet"},
             {"params", to_json(params)},
             {"last_index", static_cast<int>(series.size()) - 1}};
    write_file(out / "prophet_model.json", dump_json(doc));

    print_metrics("validation (fit on first " + format_double(cfg.train_fraction) + ")",
                  validation);
    std::cout << "saved model fitted on all " << series.size() << " months to "
              << (out / "prophet_model.json").string() << "\n";
}

void cmd_fit_lstm(const RunConfig& cfg) {
    ParseResult parsed = read_records(cfg);
    TimelineResult timeline = build_timeline(parsed.records, cfg.product);
    const TimeSeries& series = timeline.series;

    MetricPair validation = lstm_validation(series, cfg);

    Scaler scaler = fit_scaler(series, cfg.scale_lo, cfg.scale_hi);
    TimeSeries scaled = scale(scaler, series);
    auto dataset = make_windows(scaled, static_cast<std::size_t>(cfg.window_len));
    auto trained = lstm::train(dataset, make_lstm_config(cfg));

    const fs::path out = prepare_out_dir(cfg);
    std::vector<double> seed(scaled.values.end() - cfg.window_len, scaled.values.end());
    json doc{{"model", "lstm"},
             {"window_len", cfg.window_len},
             {"params", to_json(trained.params)},
             {"scaler", to_json(scaler)},
             {"seed_window", seed},
             {"origin", to_string(series.start)},
             {"last_index", static_cast<int>(series.size()) - 1}};
    write_file(out / "lstm_model.json", dump_json(doc));
    {
        std::ostringstream s;
        write_loss_csv(s, trained.loss_history);
        write_file(out / "lstm_loss.csv", s.str());
    }

    print_metrics("validation (fit on first " + format_double(cfg.train_fraction) + ")",
                  validation);
    std::cout << "final training loss (scaled): " << format_double(trained.loss_history.back())
              << "\n";
    std::cout << "saved model to " << (out / "lstm_model.json").string() << "\n";
}

void cmd_forecast(const RunConfig& cfg, const std::string& model, const std::string& params_path,
                  int horizon, bool svg) {
    if (horizon < 1) throw UsageError("forecast horizon must be at least 1");

    const fs::path out = prepare_out_dir(cfg);
    std::vector<MonthStamp> stamps;
    std::vector<double> yhat;
    std::optional<prophet::Forecast> prophet_forecast;
    TimeSeries history;  // empty when forecasting from a params file
    int last_index = -1;

    if (!params_path.empty()) {
        json doc = load_json_file(params_path);
        const std::string kind = doc.at("model").get<std::string>();
        last_index = doc.at("last_index").get<int>();
        if (kind == "prophet") {
            auto params = prophet_params_from_json(doc.at("params"));
            prophet_forecast = prophet::predict(params, horizon, last_index);
            stamps = prophet_forecast->timestamps;
            yhat = prophet_forecast->yhat;
        } else if (kind == "lstm") {
            auto params = lstm_params_from_json(doc.at("params"));
            Scaler scaler = scaler_from_json(doc.at("scaler"));
            auto seed = doc.at("seed_window").get<std::vector<double>>();
            MonthStamp origin = parse_month(doc.at("origin").get<std::string>());
            yhat = lstm::forecast_recursive(params, seed, horizon);
            for (double& v : yhat) v = unscale_value(scaler, v);
            for (int i = 1; i <= horizon; ++i) stamps.push_back(advance(origin, last_index + i));
        } else {
            throw UsageError("unknown model kind '" + kind + "' in " + params_path);
        }
    } else if (model == "prophet" || model == "lstm") {
        ParseResult parsed = read_records(cfg);
        history = build_timeline(parsed.records, cfg.product).series;
        last_index = static_cast<int>(history.size()) - 1;
        if (model == "prophet") {
            auto config = make_prophet_config(cfg.prophet, static_cast<int>(history.size()));
            auto params = prophet::fit(history, config);
            prophet_forecast = prophet::predict(params, horizon, last_index);
            stamps = prophet_forecast->timestamps;
            yhat = prophet_forecast->yhat;
        } else {
            Scaler scaler = fit_scaler(history, cfg.scale_lo, cfg.scale_hi);
            TimeSeries scaled = scale(scaler, history);
            auto dataset = make_windows(scaled, static_cast<std::size_t>(cfg.window_len));
            auto trained = lstm::train(dataset, make_lstm_config(cfg));
            std::vector<double> seed(scaled.values.end() - cfg.window_len, scaled.values.end());
            yhat = lstm::forecast_recursive(trained.params, seed, horizon);
            for (double& v : yhat) v = unscale_value(scaler, v);
            for (int i = 1; i <= horizon; ++i)
                stamps.push_back(advance(history.start, last_index + i));
        }
    } else {
        throw UsageError("pass --params <model.json> or --model prophet|lstm");
    }

    {
        std::ostringstream s;
        if (prophet_forecast) {
            write_forecast_csv(s, *prophet_forecast);
        } else {
            write_forecast_csv(s, stamps, yhat);
        }
        write_file(out / "forecast.csv", s.str());
    }
    if (svg) {
        std::vector<ChartSeries> chart;
        if (!history.values.empty()) {
            ChartSeries hist;
            hist.label = "history";
            for (std::size_t i = 0; i < history.size(); ++i) {
                hist.x.push_back(static_cast<double>(i));
                hist.y.push_back(history.values[i]);
            }
            chart.push_back(std::move(hist));
        }
        ChartSeries fc;
        fc.label = "forecast";
        fc.dashed = true;
        fc.color = "#c03a2b";
        for (int i = 0; i < horizon; ++i) {
            fc.x.push_back(static_cast<double>(last_index + 1 + i));
            fc.y.push_back(yhat[static_cast<std::size_t>(i)]);
        }
        chart.push_back(std::move(fc));
        write_file(out / "forecast.svg", render_line_chart("forecast", chart));
    }
    std::cout << "wrote " << (out / "forecast.csv").string();
    if (svg) std::cout << " and " << (out / "forecast.svg").string();
    std::cout << "\n";
}

void cmd_backtest(const RunConfig& cfg) {
    ParseResult parsed = read_records(cfg);
    TimelineResult timeline = build_timeline(parsed.records, cfg.product);
    const TimeSeries& series = timeline.series;

    const int k = cfg.backtest.cutoffs;
    const int horizon = cfg.backtest.horizon;
    const int min_train = resolve_min_train(cfg.backtest);

    LstmForecaster lstm_model(make_lstm_config(cfg), cfg.scale_lo, cfg.scale_hi);
    ProphetForecaster prophet_model(make_prophet_config(cfg.prophet, 0),
                                    cfg.prophet.n_changepoints < 0);
    NaiveForecaster naive_model;

    std::vector<BacktestReport> reports;
    reports.push_back(run_backtest(series, lstm_model, k, horizon, min_train));
    reports.push_back(run_backtest(series, prophet_model, k, horizon, min_train));
    reports.push_back(run_backtest(series, naive_model, k, horizon, min_train));

    const fs::path out = prepare_out_dir(cfg);
    for (const auto& report : reports) {
        write_file(out / (report.model_name + ".json"), dump_json(to_json(report)));
        std::ostringstream s;
        write_report_detail_csv(s, report);
        write_file(out / (report.model_name + "_detail.csv"), s.str());
    }

    ComparisonSummary summary = compare(reports);
    {
        std::ostringstream s;
        write_comparison_csv(s, summary);
        write_file(out / "comparison.csv", s.str());
    }

    std::cout << "backtest: " << k << " cutoffs, horizon " << horizon << ", min_train "
              << min_train << "\n";
    print_comparison(summary);
    std::cout << "wrote reports to " << out.string() << "\n";
}

void cmd_compare(const std::vector<std::string>& report_paths, const std::string& out_dir) {
    if (report_paths.size() < 2) throw UsageError("compare needs at least two report files");
    std::vector<BacktestReport> reports;
    reports.reserve(report_paths.size());
    for (const auto& path : report_paths) reports.push_back(report_from_json(load_json_file(path)));

    ComparisonSummary summary = compare(reports);
    fs::path out(out_dir);
    fs::create_directories(out);
    std::ostringstream s;
    write_comparison_csv(s, summary);
    write_file(out / "comparison.csv", s.str());
    print_comparison(summary);
    std::cout << "wrote " << (out / "comparison.csv").string() << "\n";
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"importcast: monthly import series forecasting and model comparison"};
    app.require_subcommand(1);

    std::string flag_input, flag_config, flag_product, flag_out;
    std::uint64_t flag_seed = 0;
    int flag_horizon = 6;
    int flag_cutoffs = 0;
    bool flag_svg = false;
    std::string flag_model, flag_params;
    std::vector<std::string> flag_reports;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", flag_input, "records CSV file");
        sub->add_option("--config", flag_config, "JSON config file");
        sub->add_option("--product", flag_product, "restrict to one product id");
        sub->add_option("--out", flag_out, "output directory");
        sub->add_option("--seed", flag_seed, "top-level random seed");
        return sub;
    };

    auto* sub_ingest = add_common(app.add_subcommand(
        "ingest", "parse records, write the timeline, gap report and product shares"));
    auto* sub_shares =
        add_common(app.add_subcommand("shares", "write per-product totals and shares"));
    auto* sub_fit_prophet = add_common(
        app.add_subcommand("fit-prophet", "fit the additive trend+seasonality model"));
    auto* sub_fit_lstm =
        add_common(app.add_subcommand("fit-lstm", "train the recurrent model"));
    auto* sub_forecast =
        add_common(app.add_subcommand("forecast", "forecast future months"));
    sub_forecast->add_option("--model", flag_model, "prophet or lstm (fits fresh from --input)");
    sub_forecast->add_option("--params", flag_params, "fitted model JSON from fit-prophet/fit-lstm");
    sub_forecast->add_option("--horizon", flag_horizon, "months to forecast");
    sub_forecast->add_flag("--svg", flag_svg, "also write an SVG line chart");
    auto* sub_backtest = add_common(app.add_subcommand(
        "backtest", "rolling-origin evaluation of lstm, prophet and the naive baseline"));
    sub_backtest->add_option("--cutoffs", flag_cutoffs, "number of forecast cutoffs");
    sub_backtest->add_option("--horizon", flag_horizon, "forecast horizon per cutoff");
    auto* sub_compare = app.add_subcommand("compare", "compare saved backtest reports");
    sub_compare->add_option("--reports", flag_reports, "two or more report JSON files");
    sub_compare->add_option("--out", flag_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto flag_given = [](const CLI::App* sub, const std::string& name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };

    try {
        CLI::App* sub = app.get_subcommands().front();
        RunConfig cfg;
        if (!flag_config.empty()) cfg = load_run_config(flag_config);
        // Flags win over the config file.
        if (!flag_input.empty()) cfg.input_path = flag_input;
        if (!flag_product.empty()) cfg.product = flag_product;
        if (!flag_out.empty()) cfg.out_dir = flag_out;
        if (flag_given(sub, "--seed")) cfg.seed = flag_seed;
        if (sub_backtest->parsed()) {
            if (flag_given(sub_backtest, "--cutoffs")) cfg.backtest.cutoffs = flag_cutoffs;
            if (flag_given(sub_backtest, "--horizon")) cfg.backtest.horizon = flag_horizon;
        }
        validate(cfg);

        if (sub_ingest->parsed()) {
            cmd_ingest(cfg);
        } else if (sub_shares->parsed()) {
            cmd_shares(cfg);
        } else if (sub_fit_prophet->parsed()) {
            cmd_fit_prophet(cfg);
        } else if (sub_fit_lstm->parsed()) {
            cmd_fit_lstm(cfg);
        } else if (sub_forecast->parsed()) {
            cmd_forecast(cfg, flag_model, flag_params, flag_horizon, flag_svg);
        } else if (sub_backtest->parsed()) {
            cmd_backtest(cfg);
        } else if (sub_compare->parsed()) {
            cmd_compare(flag_reports, flag_out.empty() ? "." : flag_out);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace importcast
