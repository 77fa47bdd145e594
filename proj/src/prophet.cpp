#include "importcast/prophet.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "importcast/error.hpp"

namespace importcast::prophet {
namespace {

constexpr double kRateFloor = 1e-12;  // effective rates below this are singular

// Accumulated rate and offset at time t, given per-changepoint adjustments.
struct Segment {
    double rate;
    double offset;
};

Segment segment_at(double t, double k, double m, const std::vector<double>& changepoints,
                   const std::vector<double>& delta, const std::vector<double>& gamma) {
    Segment seg{k, m};
    for (std::size_t j = 0; j < changepoints.size(); ++j) {
        if (t >= changepoints[j]) {
            seg.rate += delta[j];
            seg.offset += gamma[j];
        }
    }
    return seg;
}

double logistic_curve(double capacity, double rate, double offset, double t) {
    return capacity / (1.0 + std::exp(-rate * (t - offset)));
}

void check_config(const Config& config, std::size_t n) {
    if (config.n_changepoints < 0) throw UsageError("n_changepoints must be non-negative");
    if (!(config.changepoint_range > 0.0 && config.changepoint_range <= 1.0))
        throw UsageError("changepoint_range must lie in (0,1]");
    if (!(config.period > 0.0)) throw UsageError("seasonality period must be positive");
    if (config.fourier_order < 1) throw UsageError("fourier_order must be at least 1");
    if (config.ridge_lambda_trend < 0.0 || config.ridge_lambda_seasonal < 0.0)
        throw UsageError("ridge penalties must be non-negative");

    const auto s = static_cast<std::size_t>(config.n_changepoints);
    const auto two_n = static_cast<std::size_t>(2 * config.fourier_order);
    if (s >= n) throw UsageError("n_changepoints must be below the number of training points");
    if (two_n >= n) throw UsageError("2*fourier_order must be below the number of training points");
    const std::size_t min_len = std::max<std::size_t>(two_n + s + 2, 8);
    if (n < min_len)
        throw UsageError("series of " + std::to_string(n) + " months is too short to fit; need " +
                         std::to_string(min_len));
}

// Ridge least squares: minimize |y - X theta|^2 + sum_i penalty[i] * theta_i^2,
// solved through QR on the penalty-augmented system. Zero-penalty columns must
// leave the design full rank, otherwise a FitError asks for ridge > 0.
Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& penalty) {
    const long cols = design.cols();
    long extra = 0;
    for (long i = 0; i < cols; ++i)
        if (penalty(i) > 0.0) ++extra;

    Eigen::MatrixXd aug(design.rows() + extra, cols);
    Eigen::VectorXd rhs(design.rows() + extra);
    aug.topRows(design.rows()) = design;
    rhs.head(design.rows()) = y;
    long row = design.rows();
    for (long i = 0; i < cols; ++i) {
        if (penalty(i) > 0.0) {
            aug.row(row).setZero();
            aug(row, i) = std::sqrt(penalty(i));
            rhs(row) = 0.0;
            ++row;
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(aug);
    if (qr.rank() < cols)
        throw FitError("design matrix is rank deficient; set ridge_lambda_trend/"
                       "ridge_lambda_seasonal above zero");
    return qr.solve(rhs);
}

Eigen::MatrixXd fourier_design(std::size_t n, double period, int order) {
    Eigen::MatrixXd f(n, 2 * order);
    for (std::size_t t = 0; t < n; ++t) {
        auto row = fourier_features(static_cast<double>(t), period, order);
        for (std::size_t c = 0; c < row.size(); ++c) f(static_cast<long>(t), static_cast<long>(c)) = row[c];
    }
    return f;
}

Params fit_linear(const TimeSeries& series, const Config& config,
                  std::vector<double> changepoints) {
    const std::size_t n = series.size();
    const std::size_t s = changepoints.size();
    const auto two_n = static_cast<std::size_t>(2 * config.fourier_order);
    const std::size_t cols = 2 + s + two_n;

    // Columns: t, 1, (t - s_j)*1{t >= s_j}, then the Fourier pairs. The
    // changepoint column folds gamma_j = -s_j*delta_j into the slope term.
    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(cols));
    Eigen::VectorXd y(static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        const long r = static_cast<long>(i);
        design(r, 0) = t;
        design(r, 1) = 1.0;
        for (std::size_t j = 0; j < s; ++j)
            if (t >= changepoints[j]) design(r, 2 + static_cast<long>(j)) = t - changepoints[j];
        auto f = fourier_features(t, config.period, config.fourier_order);
        for (std::size_t c = 0; c < f.size(); ++c) design(r, static_cast<long>(2 + s + c)) = f[c];
        y(r) = series.values[i];
    }

    Eigen::VectorXd penalty = Eigen::VectorXd::Zero(static_cast<long>(cols));
    for (std::size_t j = 0; j < s; ++j) penalty(static_cast<long>(2 + j)) = config.ridge_lambda_trend;
    for (std::size_t c = 0; c < two_n; ++c)
        penalty(static_cast<long>(2 + s + c)) = config.ridge_lambda_seasonal;

    const Eigen::VectorXd theta = ridge_solve(design, y, penalty);

    Params params;
    params.k = theta(0);
    params.m = theta(1);
    params.changepoints = std::move(changepoints);
    params.delta.resize(s);
    params.gamma.resize(s);
    for (std::size_t j = 0; j < s; ++j) {
        params.delta[j] = theta(static_cast<long>(2 + j));
        params.gamma[j] = -params.changepoints[j] * params.delta[j];
    }
    params.beta.resize(two_n);
    for (std::size_t c = 0; c < two_n; ++c) params.beta[c] = theta(static_cast<long>(2 + s + c));
    params.growth = Growth::linear;
    params.period = config.period;
    params.fourier_order = config.fourier_order;
    params.capacity = config.capacity;
    params.origin = series.start;
    return params;
}

// Squared error of the unit-capacity logistic trend against targets in
// capacity units, plus the (rescaled) ridge term on delta. Returns +inf when
// a candidate parameter vector is singular, so the line search rejects it.
double logistic_trend_loss(const std::vector<double>& target_over_c,
                           const std::vector<double>& changepoints, double lambda_over_c2,
                           const std::vector<double>& theta) {
    const double k = theta[0];
    const double m = theta[1];
    std::vector<double> delta(theta.begin() + 2, theta.end());

    double rate = k;
    if (std::abs(rate) < kRateFloor) return std::numeric_limits<double>::infinity();
    for (double d : delta) {
        rate += d;
        if (std::abs(rate) < kRateFloor) return std::numeric_limits<double>::infinity();
    }

    std::vector<double> gamma = logistic_gamma(k, m, changepoints, delta);
    double loss = 0.0;
    for (std::size_t t = 0; t < target_over_c.size(); ++t) {
        Segment seg = segment_at(static_cast<double>(t), k, m, changepoints, delta, gamma);
        double e = target_over_c[t] - logistic_curve(1.0, seg.rate, seg.offset, static_cast<double>(t));
        loss += e * e;
    }
    for (double d : delta) loss += lambda_over_c2 * d * d;
    return std::isfinite(loss) ? loss : std::numeric_limits<double>::infinity();
}

// Deterministic line-searched gradient descent; gradients come from central
// differences of the loss closure, which re-derives gamma at every evaluation.
void descend_logistic_trend(const std::vector<double>& target_over_c,
                            const std::vector<double>& changepoints, double lambda_over_c2,
                            std::vector<double>& theta) {
    auto loss_at = [&](const std::vector<double>& th) {
        return logistic_trend_loss(target_over_c, changepoints, lambda_over_c2, th);
    };

    double loss = loss_at(theta);
    if (!std::isfinite(loss)) throw FitError("logistic trend is singular at its starting point", loss);

    const int max_iters = 200;
    std::vector<double> grad(theta.size());
    for (int iter = 0; iter < max_iters; ++iter) {
        double gnorm2 = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            const double eps = 1e-7 * std::max(1.0, std::abs(theta[i]));
            std::vector<double> hi = theta;
            std::vector<double> lo = theta;
            hi[i] += eps;
            lo[i] -= eps;
            grad[i] = (loss_at(hi) - loss_at(lo)) / (2.0 * eps);
            gnorm2 += grad[i] * grad[i];
        }
        if (!(gnorm2 > 0.0) || !std::isfinite(gnorm2)) break;

        double step = 1.0 / std::sqrt(gnorm2);  // first trial moves by unit length
        std::vector<double> candidate(theta.size());
        bool improved = false;
        while (step > 1e-16) {
            for (std::size_t i = 0; i < theta.size(); ++i) candidate[i] = theta[i] - step * grad[i];
            const double trial = loss_at(candidate);
            if (trial < loss) {
                theta = candidate;
                if (loss - trial < 1e-12 * std::max(1.0, loss)) {
                    loss = trial;
                    return;  // flat; finished
                }
                loss = trial;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    if (!std::isfinite(loss)) throw FitError("logistic trend fit diverged", loss);
}

Params fit_logistic(const TimeSeries& series, const Config& config,
                    std::vector<double> changepoints) {
    const std::size_t n = series.size();
    const double capacity = config.capacity;
    if (!(capacity > 0.0)) throw UsageError("logistic growth requires a positive capacity");
    const double y_max = *std::max_element(series.values.begin(), series.values.end());
    if (capacity < y_max)
        throw UsageError("capacity " + std::to_string(capacity) + " is below the series maximum " +
                         std::to_string(y_max));

    // Initial k, m from a logit-transformed line fit: logit(y/C) ~ a*t + b
    // puts the midpoint near t = -b/a.
    double sum_t = 0.0, sum_q = 0.0, sum_tt = 0.0, sum_tq = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double u = std::clamp(series.values[t] / capacity, 1e-6, 1.0 - 1e-6);
        double q = std::log(u / (1.0 - u));
        double td = static_cast<double>(t);
        sum_t += td;
        sum_q += q;
        sum_tt += td * td;
        sum_tq += td * q;
    }
    const double nn = static_cast<double>(n);
    const double denom = nn * sum_tt - sum_t * sum_t;
    double k0 = denom != 0.0 ? (nn * sum_tq - sum_t * sum_q) / denom : 0.0;
    double b0 = (sum_q - k0 * sum_t) / nn;
    if (std::abs(k0) < 1e-8) k0 = k0 < 0.0 ? -1e-8 : 1e-8;
    double m0 = -b0 / k0;

    const std::size_t s = changepoints.size();
    const auto two_n = static_cast<std::size_t>(2 * config.fourier_order);
    std::vector<double> theta(2 + s, 0.0);
    theta[0] = k0;
    theta[1] = m0;

    const Eigen::MatrixXd fourier = fourier_design(n, config.period, config.fourier_order);
    Eigen::VectorXd seasonal_penalty =
        Eigen::VectorXd::Constant(static_cast<long>(two_n), config.ridge_lambda_seasonal);
    const double lambda_over_c2 = config.ridge_lambda_trend / (capacity * capacity);

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<long>(two_n));
    std::vector<double> target_over_c(n);
    double prev_loss = std::numeric_limits<double>::infinity();

    for (int round = 0; round < 10; ++round) {
        // Seasonal solve on the residual of the current trend.
        std::vector<double> delta(theta.begin() + 2, theta.end());
        std::vector<double> gamma = logistic_gamma(theta[0], theta[1], changepoints, delta);
        Eigen::VectorXd residual(static_cast<long>(n));
        for (std::size_t t = 0; t < n; ++t) {
            Segment seg = segment_at(static_cast<double>(t), theta[0], theta[1], changepoints, delta, gamma);
            residual(static_cast<long>(t)) =
                series.values[t] - logistic_curve(capacity, seg.rate, seg.offset, static_cast<double>(t));
        }
        beta = ridge_solve(fourier, residual, seasonal_penalty);

        // Trend descent against the deseasonalized series, in capacity units.
        for (std::size_t t = 0; t < n; ++t) {
            double seasonal = fourier.row(static_cast<long>(t)).dot(beta);
            target_over_c[t] = (series.values[t] - seasonal) / capacity;
        }
        descend_logistic_trend(target_over_c, changepoints, lambda_over_c2, theta);

        const double loss = logistic_trend_loss(target_over_c, changepoints, lambda_over_c2, theta);
        if (!std::isfinite(loss)) throw FitError("logistic fit produced a non-finite loss", prev_loss);
        if (std::isfinite(prev_loss) &&
            std::abs(prev_loss - loss) < 1e-8 * std::max(prev_loss, 1e-12)) {
            prev_loss = loss;
            break;
        }
        prev_loss = loss;
    }

    // one last seasonal solve so beta is conditioned on the final trend
    {
        std::vector<double> delta(theta.begin() + 2, theta.end());
        std::vector<double> gamma = logistic_gamma(theta[0], theta[1], changepoints, delta);
        Eigen::VectorXd residual(static_cast<long>(n));
        for (std::size_t t = 0; t < n; ++t) {
            Segment seg = segment_at(static_cast<double>(t), theta[0], theta[1], changepoints, delta, gamma);
            residual(static_cast<long>(t)) =
                series.values[t] - logistic_curve(capacity, seg.rate, seg.offset, static_cast<double>(t));
        }
        beta = ridge_solve(fourier, residual, seasonal_penalty);
    }

    Params params;
    params.k = theta[0];
    params.m = theta[1];
    params.changepoints = std::move(changepoints);
    params.delta.assign(theta.begin() + 2, theta.end());
    params.gamma = logistic_gamma(params.k, params.m, params.changepoints, params.delta);
    params.beta.assign(beta.data(), beta.data() + beta.size());
    params.growth = Growth::logistic;
    params.period = config.period;
    params.fourier_order = config.fourier_order;
    params.capacity = capacity;
    params.origin = series.start;
    return params;
}

}  // namespace

std::vector<double> place_changepoints(int n_points, int n_changepoints, double range_fraction) {
    if (n_changepoints < 0) throw UsageError("n_changepoints must be non-negative");
    if (!(range_fraction > 0.0 && range_fraction <= 1.0))
        throw UsageError("changepoint_range must lie in (0,1]");
    if (n_changepoints == 0) return {};
    if (n_changepoints >= n_points)
        throw UsageError("n_changepoints must be below the number of points");

    const int limit = static_cast<int>(std::floor(range_fraction * n_points));
    if (limit < n_changepoints + 1)
        throw UsageError("cannot place " + std::to_string(n_changepoints) +
                         " distinct changepoints in the first " + std::to_string(limit) +
                         " indices; reduce n_changepoints or widen changepoint_range");

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_changepoints));
    for (int j = 1; j <= n_changepoints; ++j)
        out.push_back(std::floor(static_cast<double>(j) * limit / (n_changepoints + 1)));
    return out;
}

std::vector<double> indicator_vector(double t, const std::vector<double>& changepoints) {
    std::vector<double> a(changepoints.size());
    for (std::size_t j = 0; j < changepoints.size(); ++j) a[j] = t >= changepoints[j] ? 1.0 : 0.0;
    return a;
}

double trend_linear(double t, double k, double m, const std::vector<double>& changepoints,
                    const std::vector<double>& delta) {
    double rate = k;
    double offset = m;
    for (std::size_t j = 0; j < changepoints.size(); ++j) {
        if (t >= changepoints[j]) {
            rate += delta[j];
            offset -= changepoints[j] * delta[j];
        }
    }
    return rate * t + offset;
}

std::vector<double> logistic_gamma(double k, double m, const std::vector<double>& changepoints,
                                   const std::vector<double>& delta) {
    std::vector<double> gamma(changepoints.size());
    double rate = k;
    double offset = m;
    for (std::size_t j = 0; j < changepoints.size(); ++j) {
        const double next_rate = rate + delta[j];
        if (std::abs(next_rate) < kRateFloor || std::abs(rate) < kRateFloor)
            throw FitError("effective growth rate hits zero at changepoint " + std::to_string(j) +
                           "; the logistic trend is singular there");
        gamma[j] = (changepoints[j] - offset) * (1.0 - rate / next_rate);
        offset += gamma[j];
        rate = next_rate;
    }
    return gamma;
}

double trend_logistic(double t, double capacity, double k, double m,
                      const std::vector<double>& changepoints, const std::vector<double>& delta) {
    if (!(capacity > 0.0)) throw UsageError("logistic capacity must be positive");
    std::vector<double> gamma = logistic_gamma(k, m, changepoints, delta);
    Segment seg = segment_at(t, k, m, changepoints, delta, gamma);
    return logistic_curve(capacity, seg.rate, seg.offset, t);
}

std::vector<double> fourier_features(double t, double period, int order) {
    if (!(period > 0.0)) throw UsageError("seasonality period must be positive");
    if (order < 1) throw UsageError("fourier_order must be at least 1");
    // Reduce t modulo the period first so large indices keep full precision.
    double phase = std::fmod(t, period);
    if (phase < 0.0) phase += period;
    std::vector<double> f;
    f.reserve(static_cast<std::size_t>(2 * order));
    for (int h = 1; h <= order; ++h) {
        const double angle = 2.0 * std::numbers::pi * h * phase / period;
        f.push_back(std::cos(angle));
        f.push_back(std::sin(angle));
    }
    return f;
}

Params fit(const TimeSeries& series, const Config& config) {
    const std::size_t n = series.size();
    check_config(config, n);
    auto changepoints =
        place_changepoints(static_cast<int>(n), config.n_changepoints, config.changepoint_range);
    if (config.growth == Growth::linear) return fit_linear(series, config, std::move(changepoints));
    return fit_logistic(series, config, std::move(changepoints));
}

double trend_value(const Params& params, double t) {
    Segment seg = segment_at(t, params.k, params.m, params.changepoints, params.delta, params.gamma);
    if (params.growth == Growth::linear) return seg.rate * t + seg.offset;
    return logistic_curve(params.capacity, seg.rate, seg.offset, t);
}

double seasonal_value(const Params& params, double t) {
    if (params.fourier_order == 0) return 0.0;
    auto f = fourier_features(t, params.period, params.fourier_order);
    double s = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) s += params.beta[c] * f[c];
    return s;
}

Forecast predict(const Params& params, int horizon, int last_training_index) {
    if (horizon < 1) throw UsageError("forecast horizon must be at least 1");
    Forecast out;
    out.timestamps.reserve(static_cast<std::size_t>(horizon));
    out.yhat.reserve(static_cast<std::size_t>(horizon));
    out.trend_component.reserve(static_cast<std::size_t>(horizon));
    out.seasonal_component.reserve(static_cast<std::size_t>(horizon));
    for (int i = 1; i <= horizon; ++i) {
        const int idx = last_training_index + i;
        const double t = static_cast<double>(idx);
        const double trend = trend_value(params, t);
        const double seasonal = seasonal_value(params, t);
        out.timestamps.push_back(advance(params.origin, idx));
        out.trend_component.push_back(trend);
        out.seasonal_component.push_back(seasonal);
        out.yhat.push_back(trend + seasonal);
    }
    return out;
}

}  // namespace importcast::prophet
