#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "importcast/ingest.hpp"

namespace importcast {

struct ProphetSettings {
    std::string growth = "linear";
    int n_changepoints = -1;  // -1: pick min(25, n/4) from the data
    double changepoint_range = 0.8;
    double period = 12.0;
    int fourier_order = 3;
    double ridge_lambda_trend = 0.1;
    double ridge_lambda_seasonal = 1.0;
    double capacity = 0.0;  // required for logistic growth
};

struct LstmSettings {
    int hidden_dim = 8;
    int epochs = 200;
    double learning_rate = 0.01;
    double grad_clip = 5.0;
};

struct BacktestSettings {
    int cutoffs = 4;
    int horizon = 6;
    int min_train = 0;  // 0: max(2*horizon, 12)
};

// One configuration document drives every subcommand; flags override the
// config file, which overrides the defaults.
struct RunConfig {
    std::string input_path;
    ColumnSchema schema;
    char delimiter = ',';
    ParsePolicy parse_policy = ParsePolicy::fail_fast;
    std::optional<std::string> product;
    double scale_lo = 0.0;
    double scale_hi = 1.0;
    int window_len = 6;
    double train_fraction = 0.8;
    ProphetSettings prophet;
    LstmSettings lstm;
    BacktestSettings backtest;
    std::string out_dir = ".";
    std::uint64_t seed = 42;
};

// Parses the JSON config document. Unknown keys are rejected so typos fail
// loudly. Throws UsageError on malformed content.
RunConfig load_run_config(const std::string& path);

// Cross-field validation of every settings block, before any work starts.
void validate(const RunConfig& config);

// Subcommand bodies. They throw on failure; run_cli maps exceptions to exit
// codes (2 for usage/schema problems, 1 for anything else).
void cmd_ingest(const RunConfig& config);
void cmd_shares(const RunConfig& config);
void cmd_fit_prophet(const RunConfig& config);
void cmd_fit_lstm(const RunConfig& config);
void cmd_forecast(const RunConfig& config, const std::string& model,
                  const std::string& params_path, int horizon, bool svg);
void cmd_backtest(const RunConfig& config);
void cmd_compare(const std::vector<std::string>& report_paths, const std::string& out_dir);

int run_cli(int argc, const char* const* argv);

}  // namespace importcast
