#include "importcast/metrics.hpp"

#include <cmath>
#include <string>

#include "importcast/error.hpp"

namespace importcast {

double mse(const std::vector<double>& predicted, const std::vector<double>& actual) {
    if (predicted.empty()) throw UsageError("mse of empty vectors is undefined");
    if (predicted.size() != actual.size())
        throw UsageError("mse length mismatch: " + std::to_string(predicted.size()) + " vs " +
                         std::to_string(actual.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        double e = predicted[i] - actual[i];
        sum += e * e;
    }
    return sum / static_cast<double>(predicted.size());
}

double rmse(const std::vector<double>& predicted, const std::vector<double>& actual) {
    return std::sqrt(mse(predicted, actual));
}

MetricPair make_metrics(const std::vector<double>& predicted, const std::vector<double>& actual) {
    double m = mse(predicted, actual);
    return MetricPair{m, std::sqrt(m)};
}

}  // namespace importcast
