#include "crp/forecast_io.hpp"

#include "crp/error.hpp"
#include "crp/metrics.hpp"
#include "crp/util.hpp"

#include <set>
#include <sstream>

namespace crp {

ForecastTable parse_forecast_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail_validation("forecast CSV: empty input");

    auto header = split_csv(trim(line));
    if (header.size() < 4 || trim(header[0]) != "example_id" || trim(header[1]) != "true_label") {
        fail_validation("forecast CSV: header must be example_id,true_label,p_<name>,... "
                        "with at least two probability columns");
    }
    ForecastTable table;
    std::set<std::string> seen;
    for (std::size_t i = 2; i < header.size(); ++i) {
        std::string col = trim(header[i]);
        if (col.rfind("p_", 0) != 0 || col.size() <= 2) {
            fail_validation("forecast CSV: column " + std::to_string(i + 1) +
                            " must be named p_<label>, got '" + col + "'");
        }
        std::string name = col.substr(2);
        if (!seen.insert(name).second) {
            fail_validation("forecast CSV: duplicate label name '" + name + "'");
        }
        table.labels.names.push_back(name);
    }

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        auto cells = split_csv(t);
        if (cells.size() != header.size()) {
            fail_validation("forecast CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " columns, got " +
                            std::to_string(cells.size()));
        }
        std::string id = trim(cells[0]);
        if (id.empty()) {
            fail_validation("forecast CSV line " + std::to_string(line_no) + ": empty example_id");
        }
        std::optional<int> true_label;
        std::string label_name = trim(cells[1]);
        if (!label_name.empty()) {
            int idx = table.labels.index_of(label_name);
            if (idx < 0) {
                fail_validation("forecast CSV line " + std::to_string(line_no) +
                                ": true label '" + label_name + "' is not a declared label");
            }
            true_label = idx;
        }
        std::vector<double> probs;
        probs.reserve(table.labels.names.size());
        for (std::size_t i = 2; i < cells.size(); ++i) {
            auto v = parse_double(trim(cells[i]));
            if (!v) {
                fail_validation("forecast CSV line " + std::to_string(line_no) + ": column " +
                                std::to_string(i + 1) + " is not a number");
            }
            probs.push_back(*v);
        }
        try {
            table.forecasts.push_back(make_forecast(id, std::move(probs), true_label));
        } catch (const Error& e) {
            throw Error(e.kind(),
                        "forecast CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return table;
}

std::string write_forecast_csv(const ForecastTable& table) {
    std::string out = "example_id,true_label";
    for (const auto& name : table.labels.names) out += ",p_" + name;
    out += '\n';
    for (const auto& f : table.forecasts) {
        out += f.example_id;
        out += ',';
        if (f.true_label) out += table.labels.names[*f.true_label];
        for (double p : f.probs) {
            out += ',';
            out += fmt_double(p);
        }
        out += '\n';
    }
    return out;
}

std::string write_region_csv(const std::vector<RegionPrediction>& regions,
                             const LabelSpace& labels,
                             const std::vector<ForecastVector>& forecasts) {
    if (regions.size() != forecasts.size()) fail_internal("regions/forecasts length mismatch");
    std::string out = "example_id,delta,members,excluded_mass,err\n";
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const auto& r = regions[i];
        std::vector<std::string> names;
        names.reserve(r.members.size());
        // stored ascending by probability; emit most likely first
        for (auto it = r.members.rbegin(); it != r.members.rend(); ++it) {
            names.push_back(labels.names[static_cast<std::size_t>(*it)]);
        }
        out += r.example_id;
        out += ',';
        out += fmt_double(r.delta);
        out += ',';
        out += join(names, ";");
        out += ',';
        out += fmt_double(r.excluded_mass);
        out += ',';
        if (forecasts[i].true_label) {
            out += std::to_string(err_indicator(r, *forecasts[i].true_label));
        }
        out += '\n';
    }
    return out;
}

} // namespace crp
