#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chilli/error.hpp"

namespace chilli {

enum class FeatureKind { continuous, cyclic, categorical };

const char* kind_name(FeatureKind kind);

// Per-feature context: what kind of quantity a column holds and the scale it
// lives on. This is the domain knowledge the contextual distance consumes.
struct FeatureSchema {
    std::string name;
    FeatureKind kind = FeatureKind::continuous;

    // continuous only; may be absent in a schema file, in which case dataset
    // loading binds them to the training data range
    std::optional<double> min;
    std::optional<double> max;

    double period = 0.0;                  // cyclic only, > 0
    std::vector<std::string> categories;  // categorical only, >= 2 distinct

    bool has_bounds() const { return min.has_value() && max.has_value(); }

    // Checks kind/field consistency; throws Error("validation", ...).
    void validate() const;
};

// A point in feature space, one entry per schema feature in schema order.
// Continuous and cyclic entries are raw values; categorical entries are
// indices into the schema's category list, stored as exact small doubles.
struct Instance {
    std::vector<double> values;

    Instance() = default;
    explicit Instance(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    bool operator==(const Instance&) const = default;
};

struct FeatureStats {
    double mean = 0.0;    // continuous/cyclic, over raw values
    double stddev = 0.0;  // sample standard deviation, n-1 denominator
    double data_min = 0.0;
    double data_max = 0.0;
    std::vector<double> frequencies;  // categorical: per category, sums to 1
};

// Immutable training set: schema, instances, targets, per-feature statistics
// and normalized feature columns (structure-of-arrays) for the batch kernels.
class Dataset {
public:
    Dataset(std::vector<FeatureSchema> schema, std::vector<Instance> instances,
            std::vector<double> targets);

    const std::vector<FeatureSchema>& schema() const { return schema_; }
    const std::vector<Instance>& instances() const { return instances_; }
    const std::vector<double>& targets() const { return targets_; }
    const FeatureStats& stats(std::size_t feature) const { return stats_[feature]; }

    std::size_t n_rows() const { return instances_.size(); }
    std::size_t n_features() const { return schema_.size(); }

    // Normalized values of one feature across all rows.
    std::span<const double> normalized_column(std::size_t feature) const {
        return columns_[feature];
    }

private:
    std::vector<FeatureSchema> schema_;
    std::vector<Instance> instances_;
    std::vector<double> targets_;
    std::vector<FeatureStats> stats_;
    std::vector<std::vector<double>> columns_;
};

// Parses and validates a schema file (JSON array of feature objects).
std::vector<FeatureSchema> load_schema(const std::string& path);

// Parses an RFC-4180 CSV with a header row. Columns are matched by name; the
// file may contain extra columns, which are ignored.
Dataset load_dataset(const std::string& path, std::vector<FeatureSchema> schema,
                     const std::string& target_column);

// Maps a raw value onto the common distance scale: continuous to
// (v-min)/(max-min), cyclic to (v mod period)/period in [0,1), categorical
// passes through unchanged.
double normalize_value(double value, const FeatureSchema& feature);

// Inverse of normalize_value for continuous and cyclic features.
double denormalize_value(double normalized, const FeatureSchema& feature);

Instance normalize_instance(const Instance& x, std::span<const FeatureSchema> schema);

// Normalized per-feature columns for an arbitrary instance list.
std::vector<std::vector<double>> normalized_columns(std::span<const Instance> instances,
                                                    std::span<const FeatureSchema> schema);

// Validates one instance against a schema (length, categorical index range).
void validate_instance(const Instance& x, std::span<const FeatureSchema> schema);

} // namespace chilli
