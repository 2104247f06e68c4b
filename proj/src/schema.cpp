#include "chilli/schema.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "chilli/io.hpp"

namespace chilli {

const char* kind_name(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::continuous: return "continuous";
        case FeatureKind::cyclic: return "cyclic";
        case FeatureKind::categorical: return "categorical";
    }
    return "?";
}

void FeatureSchema::validate() const {
    if (name.empty()) fail("validation", "feature with empty name");
    switch (kind) {
        case FeatureKind::continuous:
            if (period != 0.0 || !categories.empty())
                fail("validation", name + ": continuous feature carries cyclic/categorical fields");
            if (min.has_value() != max.has_value())
                fail("validation", name + ": min and max must be given together");
            if (has_bounds() && !(*min < *max))
                fail("validation", name + ": requires min < max");
            break;
        case FeatureKind::cyclic:
            if (min || max || !categories.empty())
                fail("validation", name + ": cyclic feature carries continuous/categorical fields");
            if (!(period > 0.0)) fail("validation", name + ": requires period > 0");
            break;
        case FeatureKind::categorical: {
            if (min || max || period != 0.0)
                fail("validation", name + ": categorical feature carries numeric fields");
            if (categories.size() < 2)
                fail("validation", name + ": requires at least 2 categories");
            std::set<std::string> uniq(categories.begin(), categories.end());
            if (uniq.size() != categories.size())
                fail("validation", name + ": duplicate category values");
            break;
        }
    }
}

double normalize_value(double value, const FeatureSchema& f) {
    switch (f.kind) {
        case FeatureKind::continuous:
            return (value - *f.min) / (*f.max - *f.min);
        case FeatureKind::cyclic: {
            double m = std::fmod(value, f.period);
            if (m < 0.0) m += f.period;
            return m / f.period;
        }
        case FeatureKind::categorical:
            return value;
    }
    return value;
}

double denormalize_value(double normalized, const FeatureSchema& f) {
    switch (f.kind) {
        case FeatureKind::continuous:
            return *f.min + normalized * (*f.max - *f.min);
        case FeatureKind::cyclic:
            return normalized * f.period;
        case FeatureKind::categorical:
            return normalized;
    }
    return normalized;
}

Instance normalize_instance(const Instance& x, std::span<const FeatureSchema> schema) {
    Instance out;
    out.values.resize(x.size());
    for (std::size_t f = 0; f < schema.size(); ++f)
        out.values[f] = normalize_value(x[f], schema[f]);
    return out;
}

std::vector<std::vector<double>> normalized_columns(std::span<const Instance> instances,
                                                    std::span<const FeatureSchema> schema) {
    std::vector<std::vector<double>> cols(schema.size());
    for (std::size_t f = 0; f < schema.size(); ++f) {
        cols[f].resize(instances.size());
        for (std::size_t i = 0; i < instances.size(); ++i)
            cols[f][i] = normalize_value(instances[i][f], schema[f]);
    }
    return cols;
}

void validate_instance(const Instance& x, std::span<const FeatureSchema> schema) {
    if (x.size() != schema.size())
        fail("validation", "instance has " + std::to_string(x.size()) + " values, schema has " +
                               std::to_string(schema.size()) + " features");
    for (std::size_t f = 0; f < schema.size(); ++f) {
        double v = x[f];
        if (!std::isfinite(v))
            fail("validation", schema[f].name + ": non-finite value");
        if (schema[f].kind == FeatureKind::categorical) {
            double idx = std::floor(v);
            if (idx != v || v < 0.0 || idx >= static_cast<double>(schema[f].categories.size()))
                fail("validation", schema[f].name + ": categorical index out of range");
        }
    }
}

namespace {

FeatureSchema parse_feature(const nlohmann::json& obj) {
    if (!obj.is_object()) fail("parse", "schema entry is not an object");
    FeatureSchema f;
    if (!obj.contains("name") || !obj["name"].is_string())
        fail("parse", "schema entry missing string field 'name'");
    f.name = obj["name"].get<std::string>();
    if (!obj.contains("kind") || !obj["kind"].is_string())
        fail("parse", f.name + ": missing string field 'kind'");
    std::string kind = obj["kind"].get<std::string>();
    if (kind == "continuous") f.kind = FeatureKind::continuous;
    else if (kind == "cyclic") f.kind = FeatureKind::cyclic;
    else if (kind == "categorical") f.kind = FeatureKind::categorical;
    else fail("parse", f.name + ": unknown kind '" + kind + "'");

    for (auto& [key, value] : obj.items()) {
        if (key == "name" || key == "kind") continue;
        if (key == "min") f.min = value.get<double>();
        else if (key == "max") f.max = value.get<double>();
        else if (key == "period") f.period = value.get<double>();
        else if (key == "categories") {
            if (!value.is_array()) fail("parse", f.name + ": categories must be an array");
            for (auto& c : value) {
                if (c.is_string()) f.categories.push_back(c.get<std::string>());
                else f.categories.push_back(c.dump());
            }
        } else {
            fail("parse", f.name + ": unknown schema field '" + key + "'");
        }
    }
    f.validate();
    return f;
}

} // namespace

std::vector<FeatureSchema> load_schema(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(io::read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail("parse", path + ": " + e.what());
    }
    if (!doc.is_array()) fail("parse", path + ": schema file must be a JSON array");
    std::vector<FeatureSchema> schema;
    std::set<std::string> names;
    for (const auto& entry : doc) {
        FeatureSchema f = parse_feature(entry);
        if (!names.insert(f.name).second)
            fail("validation", path + ": duplicate feature name '" + f.name + "'");
        schema.push_back(std::move(f));
    }
    return schema;
}

Dataset::Dataset(std::vector<FeatureSchema> schema, std::vector<Instance> instances,
                 std::vector<double> targets)
    : schema_(std::move(schema)), instances_(std::move(instances)), targets_(std::move(targets)) {
    if (instances_.size() != targets_.size())
        fail("validation", "instance/target count mismatch");
    if (instances_.size() < 2)
        fail("validation", "dataset requires at least 2 rows, got " +
                               std::to_string(instances_.size()));
    for (const auto& f : schema_) f.validate();

    const std::size_t n = instances_.size();
    const std::size_t d = schema_.size();

    // bind absent continuous bounds to the data range before validating rows
    for (std::size_t f = 0; f < d; ++f) {
        if (schema_[f].kind != FeatureKind::continuous || schema_[f].has_bounds()) continue;
        double lo = instances_[0][f], hi = instances_[0][f];
        for (const auto& row : instances_) {
            lo = std::min(lo, row[f]);
            hi = std::max(hi, row[f]);
        }
        if (!(lo < hi))
            fail("validation", schema_[f].name +
                                   ": cannot infer bounds from constant data; set min/max in the schema");
        schema_[f].min = lo;
        schema_[f].max = hi;
    }

    for (const auto& row : instances_) validate_instance(row, schema_);
    for (double t : targets_)
        if (!std::isfinite(t)) fail("validation", "non-finite target value");

    stats_.resize(d);
    for (std::size_t f = 0; f < d; ++f) {
        FeatureStats& st = stats_[f];
        if (schema_[f].kind == FeatureKind::categorical) {
            st.frequencies.assign(schema_[f].categories.size(), 0.0);
            for (const auto& row : instances_)
                st.frequencies[static_cast<std::size_t>(row[f])] += 1.0;
            for (double& c : st.frequencies) c /= static_cast<double>(n);
            continue;
        }
        double s = 0.0;
        st.data_min = instances_[0][f];
        st.data_max = instances_[0][f];
        for (const auto& row : instances_) {
            s += row[f];
            st.data_min = std::min(st.data_min, row[f]);
            st.data_max = std::max(st.data_max, row[f]);
        }
        st.mean = s / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& row : instances_) {
            double dv = row[f] - st.mean;
            ss += dv * dv;
        }
        st.stddev = std::sqrt(ss / static_cast<double>(n - 1));
    }

    columns_ = normalized_columns(instances_, schema_);
}

namespace {

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& path) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail("parse", path + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

} // namespace

Dataset load_dataset(const std::string& path, std::vector<FeatureSchema> schema,
                     const std::string& target_column) {
    auto records = io::read_csv(path);
    if (records.empty()) fail("parse", path + ": empty file");
    const auto& header = records.front();

    std::vector<std::size_t> feature_cols;
    feature_cols.reserve(schema.size());
    for (const auto& f : schema) feature_cols.push_back(find_column(header, f.name, path));
    std::size_t target_col = find_column(header, target_column, path);

    // category label -> index maps
    std::vector<std::unordered_map<std::string, std::size_t>> cat_index(schema.size());
    for (std::size_t f = 0; f < schema.size(); ++f)
        for (std::size_t c = 0; c < schema[f].categories.size(); ++c)
            cat_index[f][schema[f].categories[c]] = c;

    std::vector<Instance> instances;
    std::vector<double> targets;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        if (row.size() != header.size())
            fail("parse", path + ": row " + std::to_string(r) + " has " +
                              std::to_string(row.size()) + " cells, header has " +
                              std::to_string(header.size()));
        Instance inst;
        inst.values.reserve(schema.size());
        for (std::size_t f = 0; f < schema.size(); ++f) {
            const std::string& cell = row[feature_cols[f]];
            const std::string where = path + ": row " + std::to_string(r) + ", column '" +
                                      schema[f].name + "'";
            if (cell.empty()) fail("parse", where + ": missing value");
            if (schema[f].kind == FeatureKind::categorical) {
                auto it = cat_index[f].find(cell);
                if (it == cat_index[f].end())
                    fail("validation", where + ": value '" + cell +
                                           "' is not in the schema's category list");
                inst.values.push_back(static_cast<double>(it->second));
            } else {
                inst.values.push_back(io::parse_double(cell, where));
            }
        }
        targets.push_back(io::parse_double(
            row[target_col], path + ": row " + std::to_string(r) + ", target column"));
        instances.push_back(std::move(inst));
    }
    return Dataset(std::move(schema), std::move(instances), std::move(targets));
}

} // namespace chilli
