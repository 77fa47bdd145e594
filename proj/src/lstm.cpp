#include "importcast/lstm.hpp"

#include <cmath>
#include <string>

#include "importcast/error.hpp"
#include "importcast/rng.hpp"

namespace importcast::lstm {
namespace {

void check_config(const Config& c) {
    if (c.input_dim < 1 || c.hidden_dim < 1 || c.window_len < 1 || c.epochs < 1)
        throw UsageError("input_dim, hidden_dim, window_len and epochs must all be positive");
    if (!(c.learning_rate > 0.0) || !(c.grad_clip > 0.0))
        throw UsageError("learning_rate and grad_clip must be positive");
}

GateParams zero_gate(std::size_t hidden, std::size_t input) {
    GateParams g;
    g.w_in = Mat(hidden, input);
    g.w_rec = Mat(hidden, hidden);
    g.bias.assign(hidden, 0.0);
    return g;
}

void fill_xavier(Mat& m, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& v : m.data) v = rng.uniform(-bound, bound);
}

// pre = w_in * x + w_rec * h_prev + bias
std::vector<double> gate_preactivation(const GateParams& g, const std::vector<double>& x,
                                       const std::vector<double>& h_prev) {
    std::vector<double> pre(g.bias);
    for (std::size_t r = 0; r < g.w_in.rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < g.w_in.cols; ++c) acc += g.w_in(r, c) * x[c];
        for (std::size_t c = 0; c < g.w_rec.cols; ++c) acc += g.w_rec(r, c) * h_prev[c];
        pre[r] += acc;
    }
    return pre;
}

void require_finite(const std::vector<double>& v, const char* gate) {
    for (double x : v)
        if (!std::isfinite(x))
            throw NumericError(std::string("non-finite activation in the ") + gate + " gate");
}

// grads of one gate given the pre-activation deltas; also accumulates the
// gradient flowing back into h_{t-1}.
void accumulate_gate(GateParams& grad, const GateParams& params, const std::vector<double>& d_pre,
                     const std::vector<double>& x, const std::vector<double>& h_prev,
                     std::vector<double>& dh_prev) {
    const std::size_t hidden = params.w_rec.rows;
    for (std::size_t r = 0; r < hidden; ++r) {
        const double d = d_pre[r];
        for (std::size_t c = 0; c < params.w_in.cols; ++c) grad.w_in(r, c) += d * x[c];
        for (std::size_t c = 0; c < hidden; ++c) {
            grad.w_rec(r, c) += d * h_prev[c];
            dh_prev[c] += params.w_rec(r, c) * d;
        }
        grad.bias[r] += d;
    }
}

double squared_norm(const Params& p) {
    double acc = 0.0;
    auto add_gate = [&acc](const GateParams& g) {
        for (double v : g.w_in.data) acc += v * v;
        for (double v : g.w_rec.data) acc += v * v;
        for (double v : g.bias) acc += v * v;
    };
    add_gate(p.forget);
    add_gate(p.input);
    add_gate(p.candidate);
    add_gate(p.output);
    for (double v : p.head_w) acc += v * v;
    acc += p.head_b * p.head_b;
    return acc;
}

void axpy(Params& dst, const Params& grad, double alpha) {
    auto gate = [alpha](GateParams& d, const GateParams& g) {
        for (std::size_t i = 0; i < d.w_in.data.size(); ++i) d.w_in.data[i] += alpha * g.w_in.data[i];
        for (std::size_t i = 0; i < d.w_rec.data.size(); ++i) d.w_rec.data[i] += alpha * g.w_rec.data[i];
        for (std::size_t i = 0; i < d.bias.size(); ++i) d.bias[i] += alpha * g.bias[i];
    };
    gate(dst.forget, grad.forget);
    gate(dst.input, grad.input);
    gate(dst.candidate, grad.candidate);
    gate(dst.output, grad.output);
    for (std::size_t i = 0; i < dst.head_w.size(); ++i) dst.head_w[i] += alpha * grad.head_w[i];
    dst.head_b += alpha * grad.head_b;
}

}  // namespace

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double tanh_act(double x) { return std::tanh(x); }

Params zero_params(const Config& config) {
    check_config(config);
    const auto hidden = static_cast<std::size_t>(config.hidden_dim);
    const auto input = static_cast<std::size_t>(config.input_dim);
    Params p;
    p.forget = zero_gate(hidden, input);
    p.input = zero_gate(hidden, input);
    p.candidate = zero_gate(hidden, input);
    p.output = zero_gate(hidden, input);
    p.head_w.assign(hidden, 0.0);
    p.head_b = 0.0;
    p.input_dim = config.input_dim;
    p.hidden_dim = config.hidden_dim;
    return p;
}

Params init_params(const Config& config) {
    Params p = zero_params(config);
    Rng rng(config.seed);
    const auto hidden = static_cast<std::size_t>(config.hidden_dim);
    const auto input = static_cast<std::size_t>(config.input_dim);
    // Fixed fill order keeps a given seed reproducible: f, i, g, o, then head.
    for (GateParams* g : {&p.forget, &p.input, &p.candidate, &p.output}) {
        fill_xavier(g->w_in, input, hidden, rng);
        fill_xavier(g->w_rec, hidden, hidden, rng);
    }
    for (double& b : p.forget.bias) b = 1.0;
    const double head_bound = std::sqrt(6.0 / static_cast<double>(hidden + 1));
    for (double& v : p.head_w) v = rng.uniform(-head_bound, head_bound);
    return p;
}

StepCache cell_forward(const std::vector<double>& x, const State& prev, const Params& params) {
    const auto hidden = static_cast<std::size_t>(params.hidden_dim);
    if (x.size() != static_cast<std::size_t>(params.input_dim))
        throw UsageError("input vector length does not match input_dim");
    if (prev.cell.size() != hidden || prev.hidden.size() != hidden)
        throw UsageError("state vectors do not match hidden_dim");

    StepCache cache;
    cache.x = x;
    cache.prev = prev;
    cache.f.resize(hidden);
    cache.i.resize(hidden);
    cache.g.resize(hidden);
    cache.o.resize(hidden);
    cache.cell.resize(hidden);
    cache.tanh_cell.resize(hidden);
    cache.hidden.resize(hidden);

    const auto pre_f = gate_preactivation(params.forget, x, prev.hidden);
    const auto pre_i = gate_preactivation(params.input, x, prev.hidden);
    const auto pre_g = gate_preactivation(params.candidate, x, prev.hidden);
    const auto pre_o = gate_preactivation(params.output, x, prev.hidden);
    for (std::size_t r = 0; r < hidden; ++r) {
        cache.f[r] = sigmoid(pre_f[r]);
        cache.i[r] = sigmoid(pre_i[r]);
        cache.g[r] = tanh_act(pre_g[r]);
        cache.o[r] = sigmoid(pre_o[r]);
        cache.cell[r] = cache.f[r] * prev.cell[r] + cache.i[r] * cache.g[r];
        cache.tanh_cell[r] = std::tanh(cache.cell[r]);
        cache.hidden[r] = cache.o[r] * cache.tanh_cell[r];
    }
    require_finite(cache.f, "forget");
    require_finite(cache.i, "input");
    require_finite(cache.g, "candidate");
    require_finite(cache.o, "output");
    require_finite(cache.cell, "cell-state");
    return cache;
}

ForwardCache forward_window(const std::vector<double>& window, const Params& params) {
    if (params.input_dim != 1)
        throw UsageError("forward_window drives a univariate model; input_dim must be 1");
    if (window.empty()) throw UsageError("window must not be empty");

    const auto hidden = static_cast<std::size_t>(params.hidden_dim);
    State state{std::vector<double>(hidden, 0.0), std::vector<double>(hidden, 0.0)};

    ForwardCache cache;
    cache.steps.reserve(window.size());
    for (double value : window) {
        StepCache step = cell_forward({value}, state, params);
        state.cell = step.cell;
        state.hidden = step.hidden;
        cache.steps.push_back(std::move(step));
    }
    double pred = params.head_b;
    for (std::size_t r = 0; r < hidden; ++r) pred += params.head_w[r] * state.hidden[r];
    if (!std::isfinite(pred)) throw NumericError("non-finite prediction from the output head");
    cache.prediction = pred;
    return cache;
}

BackwardResult backward_window(const ForwardCache& cache, double target, const Params& params) {
    const auto hidden = static_cast<std::size_t>(params.hidden_dim);
    Config shape;
    shape.input_dim = params.input_dim;
    shape.hidden_dim = params.hidden_dim;

    BackwardResult result;
    result.gradients = zero_params(shape);
    Params& grads = result.gradients;

    const double err = cache.prediction - target;
    result.loss = err * err;
    const double d_pred = 2.0 * err;

    std::vector<double> dh(hidden, 0.0);
    std::vector<double> dc(hidden, 0.0);
    const auto& last = cache.steps.back();
    for (std::size_t r = 0; r < hidden; ++r) {
        grads.head_w[r] = d_pred * last.hidden[r];
        dh[r] = params.head_w[r] * d_pred;
    }
    grads.head_b = d_pred;

    std::vector<double> d_pre_f(hidden), d_pre_i(hidden), d_pre_g(hidden), d_pre_o(hidden);
    for (std::size_t step = cache.steps.size(); step-- > 0;) {
        const StepCache& s = cache.steps[step];
        std::vector<double> dh_prev(hidden, 0.0);
        for (std::size_t r = 0; r < hidden; ++r) {
            const double d_tanh_c = dh[r] * s.o[r];
            const double dct = dc[r] + d_tanh_c * (1.0 - s.tanh_cell[r] * s.tanh_cell[r]);
            const double d_o = dh[r] * s.tanh_cell[r];
            const double d_f = dct * s.prev.cell[r];
            const double d_i = dct * s.g[r];
            const double d_g = dct * s.i[r];
            d_pre_o[r] = d_o * s.o[r] * (1.0 - s.o[r]);
            d_pre_f[r] = d_f * s.f[r] * (1.0 - s.f[r]);
            d_pre_i[r] = d_i * s.i[r] * (1.0 - s.i[r]);
            d_pre_g[r] = d_g * (1.0 - s.g[r] * s.g[r]);
            dc[r] = dct * s.f[r];  // additive path to c_{t-1}
        }
        accumulate_gate(grads.forget, params.forget, d_pre_f, s.x, s.prev.hidden, dh_prev);
        accumulate_gate(grads.input, params.input, d_pre_i, s.x, s.prev.hidden, dh_prev);
        accumulate_gate(grads.candidate, params.candidate, d_pre_g, s.x, s.prev.hidden, dh_prev);
        accumulate_gate(grads.output, params.output, d_pre_o, s.x, s.prev.hidden, dh_prev);
        dh = std::move(dh_prev);
    }

    if (!std::isfinite(squared_norm(grads)) || !std::isfinite(result.loss))
        throw NumericError("non-finite gradient in backpropagation through time");
    return result;
}

TrainResult train(const WindowedDataset& dataset, const Config& config) {
    check_config(config);
    if (dataset.size() == 0) throw UsageError("training dataset is empty");
    if (dataset.window_len != static_cast<std::size_t>(config.window_len))
        throw UsageError("dataset window length does not match config.window_len");

    TrainResult result;
    result.params = init_params(config);
    result.loss_history.reserve(static_cast<std::size_t>(config.epochs));

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_loss = 0.0;
        for (std::size_t sample = 0; sample < dataset.size(); ++sample) {
            try {
                ForwardCache cache = forward_window(dataset.inputs[sample], result.params);
                BackwardResult back =
                    backward_window(cache, dataset.targets[sample], result.params);
                epoch_loss += back.loss;

                double norm = std::sqrt(squared_norm(back.gradients));
                double scale = norm > config.grad_clip ? config.grad_clip / norm : 1.0;
                axpy(result.params, back.gradients, -config.learning_rate * scale);
            } catch (const NumericError& e) {
                throw NumericError("epoch " + std::to_string(epoch) + ", sample " +
                                   std::to_string(sample) + ": " + e.what());
            }
        }
        if (!std::isfinite(epoch_loss))
            throw NumericError("non-finite loss at epoch " + std::to_string(epoch));
        result.loss_history.push_back(epoch_loss / static_cast<double>(dataset.size()));
    }
    return result;
}

std::vector<double> forecast_recursive(const Params& params, const std::vector<double>& seed_window,
                                       int horizon) {
    if (horizon < 1) throw UsageError("forecast horizon must be at least 1");
    std::vector<double> window = seed_window;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(horizon));
    for (int step = 0; step < horizon; ++step) {
        const double next = forward_window(window, params).prediction;
        out.push_back(next);
        window.erase(window.begin());
        window.push_back(next);
    }
    return out;
}

}  // namespace importcast::lstm
