#include "chilli/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "chilli/numeric.hpp"
#include "chilli/rng.hpp"

namespace chilli {

const char* method_name(Method method) {
    return method == Method::lime ? "lime" : "chilli";
}

Method method_from_name(const std::string& name) {
    if (name == "lime") return Method::lime;
    if (name == "chilli") return Method::chilli;
    fail("usage", "unknown method '" + name + "' (expected lime or chilli)");
}

std::vector<std::string> zero_stddev_features(const Dataset& data) {
    std::vector<std::string> held;
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        if (data.schema()[f].kind == FeatureKind::categorical) continue;
        if (data.stats(f).stddev == 0.0) held.push_back(data.schema()[f].name);
    }
    return held;
}

std::vector<Instance> lime_perturb(const Instance& x, const Dataset& data, std::size_t n,
                                   std::uint64_t seed) {
    if (n < 1) fail("validation", "perturbation count must be >= 1");
    validate_instance(x, data.schema());
    const auto& schema = data.schema();
    const std::size_t d = schema.size();

    // cumulative frequency tables for categorical sampling
    std::vector<std::vector<double>> cumfreq(d);
    for (std::size_t f = 0; f < d; ++f) {
        if (schema[f].kind != FeatureKind::categorical) continue;
        const auto& freq = data.stats(f).frequencies;
        cumfreq[f].resize(freq.size());
        double run = 0.0;
        for (std::size_t c = 0; c < freq.size(); ++c) {
            run += freq[c];
            cumfreq[f][c] = run;
        }
    }

    std::vector<Instance> zs(n);
    for (std::size_t j = 0; j < n; ++j) {
        // independent substream per perturbation index: results do not depend
        // on how the index range is partitioned
        rng::Stream stream = rng::Stream::substream(seed, j);
        Instance z;
        z.values.resize(d);
        for (std::size_t f = 0; f < d; ++f) {
            if (schema[f].kind == FeatureKind::categorical) {
                z.values[f] = static_cast<double>(rng::sample_cdf(stream, cumfreq[f]));
            } else {
                double sd = data.stats(f).stddev;
                z.values[f] = sd == 0.0 ? x[f] : x[f] + sd * stream.normal();
            }
        }
        zs[j] = std::move(z);
    }
    return zs;
}

AnchorDistribution anchor_distribution(const Instance& x, const Dataset& data,
                                       const ProximityConfig& config,
                                       AnchorNormalization normalization) {
    std::vector<double> pi = proximity_vector(x, data, config);
    AnchorDistribution dist;
    dist.normalization = normalization;
    double scale;
    if (normalization == AnchorNormalization::sum) {
        scale = numeric::sum(pi);
    } else {
        scale = *std::max_element(pi.begin(), pi.end());
    }
    dist.probabilities.resize(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) dist.probabilities[i] = pi[i] / scale;
    return dist;
}

Instance chilli_interpolate(const Instance& x, const Instance& anchor, double t,
                            std::span<const FeatureSchema> schema) {
    Instance z;
    z.values.resize(schema.size());
    for (std::size_t f = 0; f < schema.size(); ++f) {
        double xf = x[f];
        double af = anchor[f];
        switch (schema[f].kind) {
            case FeatureKind::categorical:
                z.values[f] = t <= 0.5 ? xf : af;
                break;
            case FeatureKind::continuous: {
                if (t == 0.0) { z.values[f] = xf; break; }
                if (t == 1.0) { z.values[f] = af; break; }
                double v = xf + t * (af - xf);
                // the exact interpolant lies between the endpoints; keep the
                // rounded one there too
                z.values[f] = std::clamp(v, std::min(xf, af), std::max(xf, af));
                break;
            }
            case FeatureKind::cyclic: {
                if (t == 0.0) { z.values[f] = xf; break; }
                if (t == 1.0) { z.values[f] = af; break; }
                // walk the shorter arc, then wrap into [0, period)
                double p = schema[f].period;
                double delta = std::fmod(af - xf, p);
                if (delta > p / 2.0) delta -= p;
                else if (delta < -p / 2.0) delta += p;
                double v = std::fmod(xf + t * delta, p);
                if (v < 0.0) v += p;
                z.values[f] = v;
                break;
            }
        }
    }
    return z;
}

std::vector<Instance> chilli_perturb(const Instance& x, const Dataset& data, std::size_t n,
                                     const ProximityConfig& config, std::uint64_t seed,
                                     AnchorNormalization normalization) {
    if (n < 1) fail("validation", "perturbation count must be >= 1");
    if (data.n_rows() < 1) fail("validation", "chilli_perturb needs a non-empty dataset");
    validate_instance(x, data.schema());

    AnchorDistribution dist = anchor_distribution(x, data, config, normalization);
    std::vector<double> cum(dist.probabilities.size());
    double run = 0.0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
        run += dist.probabilities[i];
        cum[i] = run;
    }

    std::vector<Instance> zs(n);
    for (std::size_t j = 0; j < n; ++j) {
        rng::Stream stream = rng::Stream::substream(seed, j);
        double t = stream.uniform01();
        std::size_t anchor = rng::sample_cdf(stream, cum);
        zs[j] = chilli_interpolate(x, data.instances()[anchor], t, data.schema());
    }
    return zs;
}

std::size_t count_out_of_bounds(std::span<const Instance> zs,
                                std::span<const FeatureSchema> schema) {
    std::size_t count = 0;
    for (const auto& z : zs) {
        for (std::size_t f = 0; f < schema.size(); ++f) {
            double v = z[f];
            switch (schema[f].kind) {
                case FeatureKind::continuous:
                    if (v < *schema[f].min || v > *schema[f].max) ++count;
                    break;
                case FeatureKind::cyclic:
                    if (v < 0.0 || v >= schema[f].period) ++count;
                    break;
                case FeatureKind::categorical:
                    break;
            }
        }
    }
    return count;
}

} // namespace chilli
