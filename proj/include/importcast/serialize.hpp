#pragma once

#include <json.hpp>

#include "importcast/backtest.hpp"
#include "importcast/lstm.hpp"
#include "importcast/prophet.hpp"
#include "importcast/scaling.hpp"

namespace importcast {

nlohmann::json to_json(const Scaler& scaler);
Scaler scaler_from_json(const nlohmann::json& j);

nlohmann::json to_json(const prophet::Params& params);
prophet::Params prophet_params_from_json(const nlohmann::json& j);

// Shape metadata plus row-major weight arrays per gate.
nlohmann::json to_json(const lstm::Params& params);
lstm::Params lstm_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BacktestReport& report);
BacktestReport report_from_json(const nlohmann::json& j);

}  // namespace importcast
