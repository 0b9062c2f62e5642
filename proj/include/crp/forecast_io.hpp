#pragma once

#include "crp/forecast.hpp"

#include <string>
#include <vector>

namespace crp {

struct ForecastTable {
    LabelSpace labels;
    std::vector<ForecastVector> forecasts;
};

// Forecast CSV: header `example_id,true_label,p_<name1>,...,p_<nameK>`;
// true_label may be empty. Rows are validated and normalized on load.
ForecastTable parse_forecast_csv(const std::string& text);

std::string write_forecast_csv(const ForecastTable& table);

// Region CSV: header `example_id,delta,members,excluded_mass,err`; members
// are semicolon-joined label names in descending forecast probability; err
// is blank when the example carried no true label.
std::string write_region_csv(const std::vector<RegionPrediction>& regions,
                             const LabelSpace& labels,
                             const std::vector<ForecastVector>& forecasts);

} // namespace crp
