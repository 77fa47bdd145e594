#pragma once

#include <cstddef>
#include <vector>

#include "importcast/timeseries.hpp"

namespace importcast {

// Supervised one-step-ahead samples: inputs[i] = series[i .. i+w),
// targets[i] = series[i+w]. Chronological, never shuffled.
struct WindowedDataset {
    std::size_t window_len = 0;
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;

    std::size_t size() const { return targets.size(); }
};

// Throws UsageError unless series length > window_len.
WindowedDataset make_windows(const TimeSeries& series, std::size_t window_len);

template <typename T>
struct Split {
    T train;
    T validation;
};

// First floor(fraction * count) items train, the rest validate; order kept.
// Throws UsageError when either part would be empty.
Split<WindowedDataset> split_chronological(const WindowedDataset& dataset, double train_fraction);
Split<TimeSeries> split_chronological(const TimeSeries& series, double train_fraction);

}  // namespace importcast
