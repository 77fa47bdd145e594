#include "importcast/windows.hpp"

#include <cmath>

#include "importcast/error.hpp"

namespace importcast {
namespace {

std::size_t train_count(std::size_t total, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw UsageError("train fraction must lie in (0,1)");
    auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(total)));
    if (count == 0 || count == total)
        throw UsageError("train fraction " + std::to_string(fraction) + " leaves an empty part for " +
                         std::to_string(total) + " items");
    return count;
}

}  // namespace

WindowedDataset make_windows(const TimeSeries& series, std::size_t window_len) {
    if (window_len == 0) throw UsageError("window length must be positive");
    const std::size_t n = series.size();
    if (n <= window_len)
        throw UsageError("series of " + std::to_string(n) + " months is too short; need at least " +
                         std::to_string(window_len + 1) + " for window length " +
                         std::to_string(window_len));

    WindowedDataset out;
    out.window_len = window_len;
    out.inputs.reserve(n - window_len);
    out.targets.reserve(n - window_len);
    for (std::size_t i = 0; i + window_len < n; ++i) {
        out.inputs.emplace_back(series.values.begin() + static_cast<long>(i),
                                series.values.begin() + static_cast<long>(i + window_len));
        out.targets.push_back(series.values[i + window_len]);
    }
    return out;
}

Split<WindowedDataset> split_chronological(const WindowedDataset& dataset, double train_fraction) {
    const std::size_t k = train_count(dataset.size(), train_fraction);
    Split<WindowedDataset> out;
    out.train.window_len = dataset.window_len;
    out.validation.window_len = dataset.window_len;
    out.train.inputs.assign(dataset.inputs.begin(), dataset.inputs.begin() + static_cast<long>(k));
    out.train.targets.assign(dataset.targets.begin(), dataset.targets.begin() + static_cast<long>(k));
    out.validation.inputs.assign(dataset.inputs.begin() + static_cast<long>(k), dataset.inputs.end());
    out.validation.targets.assign(dataset.targets.begin() + static_cast<long>(k), dataset.targets.end());
    return out;
}

Split<TimeSeries> split_chronological(const TimeSeries& series, double train_fraction) {
    const std::size_t k = train_count(series.size(), train_fraction);
    Split<TimeSeries> out;
    out.train.start = series.start;
    out.train.unit = series.unit;
    out.train.values.assign(series.values.begin(), series.values.begin() + static_cast<long>(k));
    out.validation.start = advance(series.start, static_cast<int>(k));
    out.validation.unit = series.unit;
    out.validation.values.assign(series.values.begin() + static_cast<long>(k), series.values.end());
    return out;
}

}  // namespace importcast
