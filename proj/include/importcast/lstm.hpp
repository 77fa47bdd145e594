#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "importcast/windows.hpp"

namespace importcast::lstm {

struct Config {
    int input_dim = 1;  // 1 for a univariate series
    int hidden_dim = 8;
    int window_len = 6;
    int epochs = 100;
    double learning_rate = 0.01;
    double grad_clip = 5.0;  // max global gradient norm per step
    std::uint64_t seed = 42;
};

// Minimal row-major dense matrix; all the shapes here are tiny.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// One gate's weights: w_in applies to the step input, w_rec to the previous
// hidden state.
struct GateParams {
    Mat w_in;   // hidden_dim x input_dim
    Mat w_rec;  // hidden_dim x hidden_dim
    std::vector<double> bias;
};

struct Params {
    GateParams forget;
    GateParams input;
    GateParams candidate;
    GateParams output;
    std::vector<double> head_w;  // 1 x hidden_dim readout
    double head_b = 0.0;
    int input_dim = 0;
    int hidden_dim = 0;
};

struct State {
    std::vector<double> cell;
    std::vector<double> hidden;
};

// Everything the backward pass needs from one unrolled step.
struct StepCache {
    std::vector<double> x;
    State prev;
    std::vector<double> f, i, g, o;  // forget, input, candidate, output activations
    std::vector<double> cell;
    std::vector<double> tanh_cell;
    std::vector<double> hidden;
};

struct ForwardCache {
    std::vector<StepCache> steps;
    double prediction = 0.0;
};

struct TrainResult {
    Params params;
    std::vector<double> loss_history;  // mean squared error per epoch
};

double sigmoid(double x);
double tanh_act(double x);

// Zeroed parameter set with the shapes of `config`; also the gradient layout.
Params zero_params(const Config& config);

// Xavier-uniform weights from the seeded generator; biases zero except the
// forget bias, which starts at 1 so early training does not erase the cell.
Params init_params(const Config& config);

// One gate update: f/i/g/o from x_t and h_{t-1}, then
// c_t = f.c_{t-1} + i.g and h_t = o.tanh(c_t).
// Throws NumericError if any activation is non-finite.
StepCache cell_forward(const std::vector<double>& x, const State& prev, const Params& params);

// Unrolls cell_forward over the window from a zero state;
// prediction = head_w . h_w + head_b. Univariate (input_dim 1) only.
ForwardCache forward_window(const std::vector<double>& window, const Params& params);

// Reverse accumulation through every step of the cache, including the
// additive cell-state path. loss = (prediction - target)^2.
struct BackwardResult {
    Params gradients;
    double loss = 0.0;
};
BackwardResult backward_window(const ForwardCache& cache, double target, const Params& params);

// Online SGD over chronological samples with global-norm gradient clipping.
// Identical config and dataset reproduce the history bit for bit.
TrainResult train(const WindowedDataset& dataset, const Config& config);

// One-step predictions fed back into the sliding window, h times.
std::vector<double> forecast_recursive(const Params& params, const std::vector<double>& seed_window,
                                       int horizon);

}  // namespace importcast::lstm
