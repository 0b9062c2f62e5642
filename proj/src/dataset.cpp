#include "crp/dataset.hpp"

#include "crp/error.hpp"
#include "crp/util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace crp {

int Attribute::value_index(const std::string& v) const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == v) return static_cast<int>(i);
    }
    return -1;
}

int Schema::num_classes() const {
    return static_cast<int>(class_attr().values.size());
}

const Attribute& Schema::class_attr() const {
    return attributes[static_cast<std::size_t>(class_attribute)];
}

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                          (s.front() == '"' && s.back() == '"'))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

void validate_schema(const Schema& schema, const std::string& where) {
    if (schema.attributes.empty()) fail_validation(where + ": no attributes declared");
    std::set<std::string> names;
    for (const auto& a : schema.attributes) {
        if (a.name.empty()) fail_validation(where + ": empty attribute name");
        if (!names.insert(a.name).second) {
            fail_validation(where + ": duplicate attribute name '" + a.name + "'");
        }
    }
    const auto& cls = schema.class_attr();
    if (cls.numeric || cls.values.size() < 2) {
        fail_validation(where + ": class attribute '" + cls.name +
                        "' must be nominal with at least 2 values");
    }
}

Cell parse_cell(const std::string& raw, const Attribute& attr, const std::string& where) {
    std::string v = trim(raw);
    if (v == "?" || v.empty()) return Cell::miss();
    if (attr.numeric) {
        auto d = parse_double(v);
        if (!d) fail_validation(where + ": '" + v + "' is not numeric (attribute " + attr.name + ")");
        return Cell::of(*d);
    }
    int idx = attr.value_index(unquote(v));
    if (idx < 0) {
        fail_validation(where + ": value '" + v + "' not declared for nominal attribute " +
                        attr.name);
    }
    return Cell::of(static_cast<double>(idx));
}

} // namespace

Dataset parse_arff(const std::string& text, const std::string& provenance_name) {
    Dataset ds;
    ds.provenance_name = provenance_name;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool seen_relation = false;
    bool in_data = false;

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        std::string where = provenance_name + " line " + std::to_string(line_no);

        if (!in_data) {
            std::string low = lower(t);
            if (low.rfind("@relation", 0) == 0) {
                seen_relation = true;
                continue;
            }
            if (low.rfind("@attribute", 0) == 0) {
                std::string rest = trim(t.substr(10));
                std::string name;
                std::size_t pos = 0;
                if (!rest.empty() && (rest[0] == '\'' || rest[0] == '"')) {
                    char q = rest[0];
                    std::size_t end = rest.find(q, 1);
                    if (end == std::string::npos) fail_validation(where + ": unterminated quote");
                    name = rest.substr(1, end - 1);
                    pos = end + 1;
                } else {
                    std::size_t end = rest.find_first_of(" \t");
                    if (end == std::string::npos) fail_validation(where + ": attribute needs a type");
                    name = rest.substr(0, end);
                    pos = end;
                }
                std::string type = trim(rest.substr(pos));
                if (type.empty()) fail_validation(where + ": attribute needs a type");

                Attribute attr;
                attr.name = name;
                if (type[0] == '{') {
                    if (type.back() != '}') fail_validation(where + ": unterminated nominal list");
                    attr.numeric = false;
                    for (const auto& v : split_csv(type.substr(1, type.size() - 2))) {
                        std::string val = unquote(trim(v));
                        if (val.empty()) fail_validation(where + ": empty nominal value");
                        if (attr.value_index(val) >= 0) {
                            fail_validation(where + ": duplicate nominal value '" + val + "'");
                        }
                        attr.values.push_back(val);
                    }
                    if (attr.values.empty()) fail_validation(where + ": empty nominal list");
                } else {
                    std::string tl = lower(type);
                    if (tl == "numeric" || tl == "real" || tl == "integer") {
                        attr.numeric = true;
                    } else {
                        fail_validation(where + ": unsupported attribute type '" + type +
                                        "' (only numeric and nominal are accepted)");
                    }
                }
                ds.schema.attributes.push_back(std::move(attr));
                continue;
            }
            if (low.rfind("@data", 0) == 0) {
                if (!seen_relation) fail_validation(where + ": @data before @relation");
                if (ds.schema.attributes.empty()) fail_validation(where + ": @data with no attributes");
                ds.schema.class_attribute = static_cast<int>(ds.schema.attributes.size()) - 1;
                validate_schema(ds.schema, where);
                in_data = true;
                continue;
            }
            fail_validation(where + ": unrecognized declaration '" + t + "'");
        }

        if (t[0] == '{') {
            fail_validation(where + ": sparse ARFF rows are not supported");
        }
        auto cells_raw = split_csv(t);
        if (cells_raw.size() != ds.schema.attributes.size()) {
            fail_validation(where + ": expected " + std::to_string(ds.schema.attributes.size()) +
                            " values, got " + std::to_string(cells_raw.size()));
        }
        std::vector<Cell> row;
        row.reserve(cells_raw.size());
        for (std::size_t i = 0; i < cells_raw.size(); ++i) {
            row.push_back(parse_cell(cells_raw[i], ds.schema.attributes[i], where));
        }
        ds.row_ids.push_back(ds.n());
        ds.rows.push_back(std::move(row));
    }
    if (!in_data) fail_validation(provenance_name + ": missing @data section");
    return ds;
}

Dataset parse_csv_with_schema(const std::string& text, const Schema& schema,
                              const std::string& provenance_name) {
    validate_schema(schema, provenance_name);
    Dataset ds;
    ds.schema = schema;
    ds.provenance_name = provenance_name;

    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail_validation(provenance_name + ": empty input");
    auto header = split_csv(trim(line));
    if (header.size() != schema.attributes.size()) {
        fail_validation(provenance_name + ": header has " + std::to_string(header.size()) +
                        " columns, schema expects " + std::to_string(schema.attributes.size()));
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) != schema.attributes[i].name) {
            fail_validation(provenance_name + ": header column " + std::to_string(i + 1) + " is '" +
                            trim(header[i]) + "', schema expects '" + schema.attributes[i].name + "'");
        }
    }
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        std::string where = provenance_name + " line " + std::to_string(line_no);
        auto cells_raw = split_csv(t);
        if (cells_raw.size() != schema.attributes.size()) {
            fail_validation(where + ": expected " + std::to_string(schema.attributes.size()) +
                            " values, got " + std::to_string(cells_raw.size()));
        }
        std::vector<Cell> row;
        row.reserve(cells_raw.size());
        for (std::size_t i = 0; i < cells_raw.size(); ++i) {
            row.push_back(parse_cell(cells_raw[i], schema.attributes[i], where));
        }
        ds.row_ids.push_back(ds.n());
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

namespace {

struct NumericStats {
    double min = 0.0, max = 0.0, mean = 0.0;
};

NumericStats numeric_stats(const std::vector<const std::vector<Cell>*>& rows, std::size_t col,
                           const std::string& attr_name) {
    NumericStats s;
    long count = 0;
    double sum = 0.0;
    for (const auto* row : rows) {
        const Cell& c = (*row)[col];
        if (c.missing) continue;
        if (count == 0) {
            s.min = s.max = c.value;
        } else {
            s.min = std::min(s.min, c.value);
            s.max = std::max(s.max, c.value);
        }
        sum += c.value;
        ++count;
    }
    if (count == 0) {
        fail_validation("attribute '" + attr_name + "' has no observed training values");
    }
    s.mean = sum / static_cast<double>(count);
    return s;
}

int nominal_mode(const std::vector<const std::vector<Cell>*>& rows, std::size_t col,
                 std::size_t num_values, const std::string& attr_name) {
    std::vector<long> counts(num_values, 0);
    long total = 0;
    for (const auto* row : rows) {
        const Cell& c = (*row)[col];
        if (c.missing) continue;
        ++counts[static_cast<std::size_t>(c.value)];
        ++total;
    }
    if (total == 0) {
        fail_validation("attribute '" + attr_name + "' has no observed training values");
    }
    int mode = 0;
    for (std::size_t v = 1; v < num_values; ++v) {
        if (counts[v] > counts[static_cast<std::size_t>(mode)]) mode = static_cast<int>(v);
    }
    return mode;
}

} // namespace

std::pair<Dataset, Dataset> preprocess(const Dataset& train, const Dataset& test,
                                       PreprocessScope scope) {
    if (train.schema.attributes.size() != test.schema.attributes.size()) {
        fail_validation("preprocess: train and test schemas differ");
    }
    std::vector<const std::vector<Cell>*> stat_rows;
    for (const auto& r : train.rows) stat_rows.push_back(&r);
    if (scope == PreprocessScope::all) {
        for (const auto& r : test.rows) stat_rows.push_back(&r);
    }

    const auto& attrs = train.schema.attributes;
    std::vector<NumericStats> num_stats(attrs.size());
    std::vector<int> modes(attrs.size(), 0);
    for (std::size_t a = 0; a < attrs.size(); ++a) {
        if (attrs[a].numeric) {
            num_stats[a] = numeric_stats(stat_rows, a, attrs[a].name);
        } else {
            modes[a] = nominal_mode(stat_rows, a, attrs[a].values.size(), attrs[a].name);
        }
    }

    auto transform = [&](const Dataset& src) {
        Dataset out = src;
        for (auto& row : out.rows) {
            for (std::size_t a = 0; a < attrs.size(); ++a) {
                Cell& c = row[a];
                if (attrs[a].numeric) {
                    double v = c.missing ? num_stats[a].mean : c.value;
                    double range = num_stats[a].max - num_stats[a].min;
                    double scaled = range == 0.0 ? 0.0 : (v - num_stats[a].min) / range;
                    c = Cell::of(std::clamp(scaled, 0.0, 1.0));
                } else if (c.missing) {
                    c = Cell::of(static_cast<double>(modes[a]));
                }
            }
        }
        return out;
    };
    return {transform(train), transform(test)};
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& data, const SplitPlan& plan,
                                          std::uint64_t seed) {
    if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0)) {
        fail_validation("train fraction must be in (0,1)");
    }
    long n = data.n();
    if (n < 3) fail_validation("dataset too small to split (need at least 3 rows)");

    std::vector<long> order(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    auto rng = make_engine(seed);
    shuffle_v1(order, rng);

    // The epsilon guard keeps ceil from absorbing representation noise:
    // double(0.66)*150 is 99.000000000000014 but the intended count is 99.
    long train_count = static_cast<long>(
        std::ceil(plan.train_fraction * static_cast<double>(n) - 1e-9));
    train_count = std::clamp(train_count, 1L, n - 1);

    Dataset train, test;
    train.schema = test.schema = data.schema;
    train.provenance_name = test.provenance_name = data.provenance_name;
    for (long i = 0; i < n; ++i) {
        auto idx = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
        Dataset& dst = i < train_count ? train : test;
        dst.rows.push_back(data.rows[idx]);
        dst.row_ids.push_back(data.row_ids[idx]);
    }
    return {train, test};
}

} // namespace crp
