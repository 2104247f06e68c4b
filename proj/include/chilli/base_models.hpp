#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "chilli/schema.hpp"

namespace chilli {

// A black-box regressor f. Built-in models extrapolate naturally on
// out-of-bounds inputs rather than clipping them.
class Predictor {
public:
    virtual ~Predictor() = default;

    // One prediction per instance, order preserved.
    virtual std::vector<double> predict_batch(std::span<const Instance> instances) const = 0;

    // JSON parameter dump for reports.
    virtual std::string describe() const = 0;
};

// Mean target of the k nearest training instances under the contextual
// aggregate distance. Ties at the neighborhood boundary break by row index.
std::unique_ptr<Predictor> train_knn(const Dataset& data, std::size_t k);

// Kernel ridge regression with kernel exp(-gamma * |u - v|^2) on normalized
// features; dual coefficients solve (K + alpha*I) beta = y.
std::unique_ptr<Predictor> train_rbf_ridge(const Dataset& data, double gamma, double alpha);

// Adapter for an external model: each batch is written to a temporary CSV
// (header in schema order, categorical values as labels) and `command` is
// invoked with that path as its single argument; it must print exactly one
// decimal prediction per row to stdout, in order.
std::unique_ptr<Predictor> make_external(std::vector<FeatureSchema> schema,
                                         std::string command);

} // namespace chilli
