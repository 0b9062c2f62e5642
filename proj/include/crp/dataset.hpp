#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crp {

struct Attribute {
    std::string name;
    bool numeric = true;
    std::vector<std::string> values; // nominal value list, empty for numeric

    int value_index(const std::string& v) const;
};

struct Schema {
    std::vector<Attribute> attributes;
    int class_attribute = -1; // defaults to the last attribute

    int num_classes() const;
    const Attribute& class_attr() const;
};

struct Cell {
    bool missing = false;
    double value = 0.0; // numeric value, or nominal value index

    static Cell miss() { return Cell{true, 0.0}; }
    static Cell of(double v) { return Cell{false, v}; }
};

struct Dataset {
    Schema schema;
    std::vector<std::vector<Cell>> rows;
    std::vector<long> row_ids; // stable original indices, preserved by split
    std::string provenance_name;

    long n() const { return static_cast<long>(rows.size()); }
};

// ARFF subset: @relation, @attribute (numeric/real/integer or {nominal}),
// @data with '?' for missing. String, date, relational and sparse rows are
// rejected with position information. Class attribute is the last one.
Dataset parse_arff(const std::string& text, const std::string& provenance_name);

// CSV whose header must match the schema's attribute names in order;
// '?' or an empty cell marks a missing value.
Dataset parse_csv_with_schema(const std::string& text, const Schema& schema,
                              const std::string& provenance_name);

enum class PreprocessScope { train_only, all };

// Min-max scales numerics to [0,1] and imputes missing cells (numeric mean,
// nominal mode). Statistics come from the training rows (or from both parts
// under PreprocessScope::all); test rows are clipped to [0,1].
std::pair<Dataset, Dataset> preprocess(const Dataset& train, const Dataset& test,
                                       PreprocessScope scope = PreprocessScope::train_only);

struct SplitPlan {
    double train_fraction = 0.66;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
};

// Deterministic shuffle (see kRngVersion) then first ceil(frac*n) rows train.
std::pair<Dataset, Dataset> split_dataset(const Dataset& data, const SplitPlan& plan,
                                          std::uint64_t seed);

} // namespace crp
