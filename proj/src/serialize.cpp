#include "importcast/serialize.hpp"

#include "importcast/error.hpp"

namespace importcast {

using nlohmann::json;

namespace {

json mat_to_json(const lstm::Mat& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

lstm::Mat mat_from_json(const json& j) {
    lstm::Mat m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    m.data = j.at("data").get<std::vector<double>>();
    if (m.data.size() != m.rows * m.cols)
        throw UsageError("matrix data length does not match its shape");
    return m;
}

json gate_to_json(const lstm::GateParams& g) {
    return json{{"w_in", mat_to_json(g.w_in)}, {"w_rec", mat_to_json(g.w_rec)}, {"bias", g.bias}};
}

lstm::GateParams gate_from_json(const json& j) {
    lstm::GateParams g;
    g.w_in = mat_from_json(j.at("w_in"));
    g.w_rec = mat_from_json(j.at("w_rec"));
    g.bias = j.at("bias").get<std::vector<double>>();
    return g;
}

}  // namespace

json to_json(const Scaler& scaler) {
    return json{{"min", scaler.min},
                {"max", scaler.max},
                {"target_lo", scaler.target_lo},
                {"target_hi", scaler.target_hi}};
}

Scaler scaler_from_json(const json& j) {
    return Scaler{j.at("min").get<double>(), j.at("max").get<double>(),
                  j.at("target_lo").get<double>(), j.at("target_hi").get<double>()};
}

json to_json(const prophet::Params& p) {
    return json{{"k", p.k},
                {"m", p.m},
                {"changepoints", p.changepoints},
                {"delta", p.delta},
                {"gamma", p.gamma},
                {"beta", p.beta},
                {"growth", p.growth == prophet::Growth::linear ? "linear" : "logistic"},
                {"period", p.period},
                {"fourier_order", p.fourier_order},
                {"capacity", p.capacity},
                {"origin", to_string(p.origin)}};
}

prophet::Params prophet_params_from_json(const json& j) {
    prophet::Params p;
    p.k = j.at("k").get<double>();
    p.m = j.at("m").get<double>();
    p.changepoints = j.at("changepoints").get<std::vector<double>>();
    p.delta = j.at("delta").get<std::vector<double>>();
    p.gamma = j.at("gamma").get<std::vector<double>>();
    p.beta = j.at("beta").get<std::vector<double>>();
    const std::string growth = j.at("growth").get<std::string>();
    if (growth == "linear") {
        p.growth = prophet::Growth::linear;
    } else if (growth == "logistic") {
        p.growth = prophet::Growth::logistic;
    } else {
        throw UsageError("unknown growth mode '" + growth + "'");
    }
    p.period = j.at("period").get<double>();
    p.fourier_order = j.at("fourier_order").get<int>();
    p.capacity = j.at("capacity").get<double>();
    p.origin = parse_month(j.at("origin").get<std::string>());
    if (p.delta.size() != p.changepoints.size() || p.gamma.size() != p.changepoints.size())
        throw UsageError("delta and gamma must have one entry per changepoint");
    return p;
}

json to_json(const lstm::Params& p) {
    return json{{"input_dim", p.input_dim},
                {"hidden_dim", p.hidden_dim},
                {"gates",
                 json{{"forget", gate_to_json(p.forget)},
                      {"input", gate_to_json(p.input)},
                      {"candidate", gate_to_json(p.candidate)},
                      {"output", gate_to_json(p.output)}}},
                {"head_w", p.head_w},
                {"head_b", p.head_b}};
}

lstm::Params lstm_params_from_json(const json& j) {
    lstm::Params p;
    p.input_dim = j.at("input_dim").get<int>();
    p.hidden_dim = j.at("hidden_dim").get<int>();
    const json& gates = j.at("gates");
    p.forget = gate_from_json(gates.at("forget"));
    p.input = gate_from_json(gates.at("input"));
    p.candidate = gate_from_json(gates.at("candidate"));
    p.output = gate_from_json(gates.at("output"));
    p.head_w = j.at("head_w").get<std::vector<double>>();
    p.head_b = j.at("head_b").get<double>();
    return p;
}

json to_json(const BacktestReport& report) {
    json per_cutoff = json::array();
    for (const auto& c : report.per_cutoff) {
        per_cutoff.push_back(json{{"cutoff", c.cutoff},
                                  {"forecasts", c.forecasts},
                                  {"actuals", c.actuals},
                                  {"mse", c.metrics.mse},
                                  {"rmse", c.metrics.rmse}});
    }
    return json{{"model_name", report.model_name},
                {"horizon", report.horizon},
                {"n_points", report.n_points},
                {"cutoffs", report.cutoffs},
                {"per_cutoff", per_cutoff},
                {"aggregate", json{{"mse", report.aggregate.mse}, {"rmse", report.aggregate.rmse}}}};
}

BacktestReport report_from_json(const json& j) {
    BacktestReport report;
    report.model_name = j.at("model_name").get<std::string>();
    report.horizon = j.at("horizon").get<int>();
    report.n_points = j.at("n_points").get<int>();
    report.cutoffs = j.at("cutoffs").get<std::vector<int>>();
    for (const auto& c : j.at("per_cutoff")) {
        CutoffResult result;
        result.cutoff = c.at("cutoff").get<int>();
        result.forecasts = c.at("forecasts").get<std::vector<double>>();
        result.actuals = c.at("actuals").get<std::vector<double>>();
        result.metrics = MetricPair{c.at("mse").get<double>(), c.at("rmse").get<double>()};
        report.per_cutoff.push_back(std::move(result));
    }
    report.aggregate = MetricPair{j.at("aggregate").at("mse").get<double>(),
                                  j.at("aggregate").at("rmse").get<double>()};
    return report;
}

}  // namespace importcast
