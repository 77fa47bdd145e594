#pragma once

#include <vector>

namespace importcast {

struct MetricPair {
    double mse = 0.0;
    double rmse = 0.0;
};

// Mean squared difference. Throws UsageError on empty or mismatched lengths.
double mse(const std::vector<double>& predicted, const std::vector<double>& actual);
double rmse(const std::vector<double>& predicted, const std::vector<double>& actual);

MetricPair make_metrics(const std::vector<double>& predicted, const std::vector<double>& actual);

}  // namespace importcast
