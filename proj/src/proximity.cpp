#include "chilli/proximity.hpp"

#include <cmath>

#include "chilli/simd/kernels.hpp"

namespace chilli {

namespace {

// Per-feature batch distance against a fixed reference value, written so the
// pairwise functions below execute the identical operation sequence.
void feature_distance_batch(std::span<const double> column, double x_norm,
                            const FeatureSchema& f, double* out) {
    const auto& k = simd::active();
    switch (f.kind) {
        case FeatureKind::continuous:
            k.abs_diff_clamp1(column.data(), x_norm, out, column.size());
            break;
        case FeatureKind::cyclic:
            k.cyclic_arc_unit(column.data(), x_norm, out, column.size());
            break;
        case FeatureKind::categorical:
            k.indicator_neq(column.data(), x_norm, out, column.size());
            break;
    }
}

std::vector<double> proximity_over_columns(const Instance& x,
                                           std::span<const std::span<const double>> columns,
                                           std::size_t n_rows, const ProximityConfig& config,
                                           std::span<const FeatureSchema> schema) {
    config.validate();
    const auto& k = simd::active();
    const std::size_t d = schema.size();
    std::vector<double> acc(n_rows, 0.0);
    std::vector<double> tmp(n_rows);

    if (config.kernel == ProximityKernel::contextual_eq2) {
        for (std::size_t f = 0; f < d; ++f) {
            double xn = normalize_value(x[f], schema[f]);
            feature_distance_batch(columns[f], xn, schema[f], tmp.data());
            k.add_inplace(acc.data(), tmp.data(), n_rows);
        }
        k.div_inplace(acc.data(), static_cast<double>(d), n_rows);
        std::vector<double> out(n_rows);
        k.exp_neg_sq_over(acc.data(), config.sigma * config.sigma, out.data(), n_rows);
        return out;
    }

    // euclidean_eq1: squared distance accumulated per feature
    for (std::size_t f = 0; f < d; ++f) {
        double xn = normalize_value(x[f], schema[f]);
        if (schema[f].kind == FeatureKind::categorical) {
            k.indicator_neq(columns[f].data(), xn, tmp.data(), n_rows);
            k.add_inplace(acc.data(), tmp.data(), n_rows);
        } else {
            k.sq_diff_add(columns[f].data(), xn, acc.data(), n_rows);
        }
    }
    std::vector<double> out(n_rows);
    double inv_sigma_sq = 1.0 / (config.sigma * config.sigma);
    k.exp_neg_scaled(acc.data(), inv_sigma_sq, out.data(), n_rows);
    return out;
}

std::vector<std::span<const double>> dataset_columns(const Dataset& data) {
    std::vector<std::span<const double>> columns;
    columns.reserve(data.n_features());
    for (std::size_t f = 0; f < data.n_features(); ++f)
        columns.push_back(data.normalized_column(f));
    return columns;
}

} // namespace

const char* kernel_name(ProximityKernel kernel) {
    return kernel == ProximityKernel::euclidean_eq1 ? "euclidean" : "contextual";
}

double default_sigma(ProximityKernel kernel, std::size_t n_features) {
    if (kernel == ProximityKernel::euclidean_eq1)
        return 0.75 * std::sqrt(static_cast<double>(n_features));
    return 0.1;
}

double feature_distance(double a, double b, const FeatureSchema& f) {
    double na = normalize_value(a, f);
    double nb = normalize_value(b, f);
    switch (f.kind) {
        case FeatureKind::continuous:
            return std::min(std::fabs(na - nb), 1.0);
        case FeatureKind::cyclic: {
            double d = std::fabs(na - nb);
            return 2.0 * std::min(d, 1.0 - d);
        }
        case FeatureKind::categorical:
            return na == nb ? 0.0 : 1.0;
    }
    return 0.0;
}

double aggregate_distance(const Instance& p, const Instance& q,
                          std::span<const FeatureSchema> schema) {
    const std::size_t d = schema.size();
    double acc = 0.0;
    for (std::size_t f = 0; f < d; ++f) acc += feature_distance(p[f], q[f], schema[f]);
    return acc / static_cast<double>(d);
}

double proximity(const Instance& p, const Instance& q, const ProximityConfig& config,
                 std::span<const FeatureSchema> schema) {
    config.validate();
    if (config.kernel == ProximityKernel::contextual_eq2) {
        double m = aggregate_distance(p, q, schema);
        double t = m * m;
        return std::exp(-(t / (config.sigma * config.sigma)));
    }
    double ssq = 0.0;
    for (std::size_t f = 0; f < schema.size(); ++f) {
        double na = normalize_value(p[f], schema[f]);
        double nb = normalize_value(q[f], schema[f]);
        if (schema[f].kind == FeatureKind::categorical) {
            ssq += na == nb ? 0.0 : 1.0;
        } else {
            double t = na - nb;
            ssq += t * t;
        }
    }
    double inv_sigma_sq = 1.0 / (config.sigma * config.sigma);
    return std::exp(-(inv_sigma_sq * ssq));
}

std::vector<double> proximity_vector(const Instance& x, const Dataset& data,
                                     const ProximityConfig& config) {
    if (data.n_rows() == 0) fail("validation", "proximity_vector over an empty dataset");
    auto columns = dataset_columns(data);
    return proximity_over_columns(x, columns, data.n_rows(), config, data.schema());
}

std::vector<double> proximity_batch(const Instance& x, std::span<const Instance> points,
                                    const ProximityConfig& config,
                                    std::span<const FeatureSchema> schema) {
    auto owned = normalized_columns(points, schema);
    std::vector<std::span<const double>> columns(owned.begin(), owned.end());
    return proximity_over_columns(x, columns, points.size(), config, schema);
}

std::vector<double> aggregate_distance_vector(const Instance& x, const Dataset& data) {
    const auto& k = simd::active();
    const std::size_t n = data.n_rows();
    const std::size_t d = data.n_features();
    std::vector<double> acc(n, 0.0);
    std::vector<double> tmp(n);
    for (std::size_t f = 0; f < d; ++f) {
        double xn = normalize_value(x[f], data.schema()[f]);
        feature_distance_batch(data.normalized_column(f), xn, data.schema()[f], tmp.data());
        k.add_inplace(acc.data(), tmp.data(), n);
    }
    k.div_inplace(acc.data(), static_cast<double>(d), n);
    return acc;
}

} // namespace chilli
