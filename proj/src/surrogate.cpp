#include "chilli/surrogate.hpp"

#include <algorithm>
#include <cmath>

#include "chilli/evaluation.hpp"
#include "chilli/numeric.hpp"
#include "chilli/simd/kernels.hpp"

namespace chilli {

const std::vector<double> kDefaultLambdaGrid = {0.0, 1e-4, 1e-3, 1e-2, 1e-1};

namespace {

// Design columns: constant 1 followed by normalized features.
std::vector<std::vector<double>> design_columns(const PerturbationSet& z,
                                                std::span<const FeatureSchema> schema) {
    std::vector<std::vector<double>> cols;
    cols.reserve(schema.size() + 1);
    cols.emplace_back(z.perturbations.size(), 1.0);
    auto feature_cols = normalized_columns(z.perturbations, schema);
    for (auto& c : feature_cols) cols.push_back(std::move(c));
    return cols;
}

} // namespace

LinearSurrogate fit_weighted_linear(const PerturbationSet& z,
                                    std::span<const FeatureSchema> schema, double lambda) {
    const std::size_t n = z.perturbations.size();
    const std::size_t d = schema.size();
    const std::size_t m = d + 1;
    if (n < 1) fail("validation", "cannot fit on an empty perturbation set");
    if (!(lambda >= 0.0)) fail("validation", "ridge lambda must be >= 0");
    if (lambda == 0.0 && n < m)
        fail("validation", "need at least " + std::to_string(m) +
                               " perturbations for an unregularized fit, got " + std::to_string(n));
    if (z.weights.size() != n || z.predictions.size() != n)
        fail("validation", "perturbation set is not fully labeled");

    const auto& k = simd::active();
    auto cols = design_columns(z, schema);

    // Weighted moments A^T W A and A^T W y. Each entry is a sum over the
    // perturbations; deterministic_sum makes it order-invariant.
    std::vector<double> gram(m * m, 0.0);
    std::vector<double> rhs(m, 0.0);
    std::vector<double> products(n);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = r; c < m; ++c) {
            k.mul3(z.weights.data(), cols[r].data(), cols[c].data(), products.data(), n);
            double v = numeric::deterministic_sum(products);
            gram[r * m + c] = v;
            gram[c * m + r] = v;
        }
        k.mul3(z.weights.data(), cols[r].data(), z.predictions.data(), products.data(), n);
        rhs[r] = numeric::deterministic_sum(products);
    }
    for (std::size_t f = 1; f < m; ++f) gram[f * m + f] += lambda;  // intercept unpenalized

    std::vector<double> theta =
        numeric::solve_spd(std::move(gram), m, rhs,
                           "weighted linear fit is singular; increase lambda or use more "
                           "perturbations");

    LinearSurrogate g;
    g.intercept = theta[0];
    g.coefficients.assign(theta.begin() + 1, theta.end());
    g.ridge_lambda = lambda;
    return g;
}

double surrogate_predict(const LinearSurrogate& g, const Instance& x,
                         std::span<const FeatureSchema> schema) {
    double y = g.intercept;
    for (std::size_t f = 0; f < schema.size(); ++f)
        y += g.coefficients[f] * normalize_value(x[f], schema[f]);
    return y;
}

std::vector<double> surrogate_predict_batch(const LinearSurrogate& g,
                                            std::span<const Instance> instances,
                                            std::span<const FeatureSchema> schema) {
    std::vector<double> out(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i)
        out[i] = surrogate_predict(g, instances[i], schema);
    return out;
}

double weighted_rmse(const LinearSurrogate& g, const PerturbationSet& z,
                     std::span<const FeatureSchema> schema) {
    const std::size_t n = z.perturbations.size();
    auto fitted = surrogate_predict_batch(g, z.perturbations, schema);
    double wsum = 0.0, wsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = z.predictions[i] - fitted[i];
        wsum += z.weights[i];
        wsq += z.weights[i] * (e * e);
    }
    if (wsum <= 0.0) fail("validation", "weighted RMSE needs positive total weight");
    return std::sqrt(wsq / wsum);
}

LinearSurrogate select_best(const PerturbationSet& z, std::span<const FeatureSchema> schema,
                            std::span<const double> lambda_grid) {
    if (lambda_grid.empty()) fail("validation", "lambda grid must be non-empty");
    bool have_best = false;
    LinearSurrogate best;
    double best_err = 0.0;
    std::string last_error;
    for (double lambda : lambda_grid) {
        LinearSurrogate cand;
        try {
            cand = fit_weighted_linear(z, schema, lambda);
        } catch (const Error& e) {
            last_error = e.what();
            continue;
        }
        double err = weighted_rmse(cand, z, schema);
        if (!have_best || err < best_err ||
            (err == best_err && lambda > best.ridge_lambda)) {
            best = std::move(cand);
            best_err = err;
            have_best = true;
        }
    }
    if (!have_best)
        fail("singular_system", "no candidate surrogate could be fitted: " + last_error);
    return best;
}

std::vector<double> raw_unit_coefficients(const LinearSurrogate& g,
                                          std::span<const FeatureSchema> schema) {
    std::vector<double> out(g.coefficients.size());
    for (std::size_t f = 0; f < schema.size(); ++f) {
        switch (schema[f].kind) {
            case FeatureKind::continuous:
                out[f] = g.coefficients[f] / (*schema[f].max - *schema[f].min);
                break;
            case FeatureKind::cyclic:
                out[f] = g.coefficients[f] / schema[f].period;
                break;
            case FeatureKind::categorical:
                out[f] = g.coefficients[f];
                break;
        }
    }
    return out;
}

Explanation explain(const LinearSurrogate& best, const Instance& x, const PerturbationSet& z,
                    std::span<const FeatureSchema> schema) {
    Explanation e;
    e.surrogate = best;
    e.local_prediction = surrogate_predict(best, x, schema);
    e.faithfulness = faithfulness(best, z, schema);
    e.method = z.method;
    e.seed = z.seed;
    e.sigma = z.proximity.sigma;

    e.feature_names.reserve(schema.size());
    for (const auto& f : schema) e.feature_names.push_back(f.name);

    e.contributions.reserve(schema.size());
    for (std::size_t f = 0; f < schema.size(); ++f)
        e.contributions.push_back({schema[f].name, best.coefficients[f]});
    std::stable_sort(e.contributions.begin(), e.contributions.end(),
                     [](const Contribution& a, const Contribution& b) {
                         return std::fabs(a.coefficient) > std::fabs(b.coefficient);
                     });
    return e;
}

} // namespace chilli
