#include <doctest.h>

#include <cmath>
#include <cstring>

#include "../support/helpers.hpp"
#include "chilli/proximity.hpp"
#include "chilli/rng.hpp"

using namespace chilli;

namespace {

const double kExpNeg1 = 0.36787944117144233;  // e^-1
const double kExpNeg4 = 0.018315638888734179; // e^-4

std::vector<FeatureSchema> unit_schema() {
    return {testing::continuous_feature("v", 0.0, 1.0)};
}

} // namespace

TEST_CASE("feature_distance respects each feature's context") {
    auto hour = testing::cyclic_feature("hour", 24.0);
    // 23:00 and 00:00 are one hour apart on the clock face
    CHECK(feature_distance(23.0, 0.0, hour) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(feature_distance(23.0, 12.0, hour) == doctest::Approx(11.0 / 12.0).epsilon(1e-12));
    CHECK(feature_distance(23.0, 0.0, hour) < feature_distance(23.0, 12.0, hour));

    auto cont = testing::continuous_feature("v", 0.0, 10.0);
    CHECK(feature_distance(3.0, 3.0, cont) == 0.0);
    CHECK(feature_distance(0.0, 10.0, cont) == 1.0);
    CHECK(feature_distance(-5.0, 20.0, cont) == 1.0);  // clamped

    auto cat = testing::categorical_feature("c", {"red", "blue"});
    CHECK(feature_distance(0.0, 1.0, cat) == 1.0);
    CHECK(feature_distance(1.0, 1.0, cat) == 0.0);

    SUBCASE("cyclic wrap invariance") {
        rng::Stream s(8);
        for (int i = 0; i < 100; ++i) {
            double a = s.uniform01() * 24.0;
            double b = s.uniform01() * 24.0;
            CHECK(feature_distance(a, b, hour) ==
                  doctest::Approx(feature_distance(a + 24.0, b, hour)).epsilon(1e-9));
        }
    }
}

TEST_CASE("aggregate_distance is the mean per-feature distance") {
    std::vector<FeatureSchema> schema{testing::continuous_feature("a", 0.0, 1.0),
                                      testing::continuous_feature("b", 0.0, 1.0)};
    CHECK(aggregate_distance(Instance({0.0, 0.0}), Instance({0.5, 0.5}), schema) == 0.5);
    CHECK(aggregate_distance(Instance({0.3, 0.7}), Instance({0.3, 0.7}), schema) == 0.0);

    std::vector<FeatureSchema> schema3{testing::continuous_feature("a", 0.0, 1.0),
                                       testing::continuous_feature("b", 0.0, 1.0),
                                       testing::continuous_feature("c", 0.0, 1.0)};
    CHECK(aggregate_distance(Instance({0.0, 0.0, 0.0}), Instance({0.0, 0.3, 0.9}), schema3) ==
          doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("contextual proximity follows the exponential kernel") {
    auto schema = unit_schema();
    ProximityConfig config{0.5, ProximityKernel::contextual_eq2};

    CHECK(proximity(Instance({0.3}), Instance({0.3}), config, schema) == 1.0);
    CHECK(proximity(Instance({0.0}), Instance({0.5}), config, schema) ==
          doctest::Approx(kExpNeg1).epsilon(1e-12));

    SUBCASE("large sigma pushes proximity toward 1") {
        ProximityConfig wide{100.0, ProximityKernel::contextual_eq2};
        double p = proximity(Instance({0.0}), Instance({0.5}), wide, schema);
        CHECK(p >= 0.9999);
        CHECK(p < 1.0);
    }
    SUBCASE("sigma must be positive") {
        ProximityConfig bad{0.0, ProximityKernel::contextual_eq2};
        CHECK_THROWS_AS(proximity(Instance({0.0}), Instance({0.5}), bad, schema), Error);
    }
}

TEST_CASE("cyclic context changes which instances are close") {
    std::vector<FeatureSchema> schema{testing::cyclic_feature("hour", 24.0)};
    Instance late({23.0}), midnight({0.0}), noon({12.0});
    for (double sigma : {0.01, 0.1, 1.0, 10.0}) {
        ProximityConfig config{sigma, ProximityKernel::contextual_eq2};
        CHECK(proximity(late, midnight, config, schema) >
              proximity(late, noon, config, schema));
    }
}

TEST_CASE("proximity invariants hold for both kernels") {
    std::vector<FeatureSchema> schema{testing::continuous_feature("a", 0.0, 1.0),
                                      testing::cyclic_feature("h", 24.0),
                                      testing::categorical_feature("c", {"x", "y", "z"})};
    rng::Stream s(99);
    auto random_instance = [&] {
        return Instance({s.uniform01() * 1.4 - 0.2, s.uniform01() * 30.0,
                         static_cast<double>(s.uniform_index(3))});
    };
    for (auto kernel : {ProximityKernel::contextual_eq2, ProximityKernel::euclidean_eq1}) {
        for (int i = 0; i < 200; ++i) {
            Instance p = random_instance();
            Instance q = random_instance();
            ProximityConfig config{0.1 + s.uniform01(), kernel};
            double pq = proximity(p, q, config, schema);
            double qp = proximity(q, p, config, schema);
            CHECK(pq == doctest::Approx(qp).epsilon(1e-12));
            CHECK(pq > 0.0);
            CHECK(pq <= 1.0);
            double agg = aggregate_distance(p, q, schema);
            CHECK(agg >= 0.0);
            CHECK(agg <= 1.0);
        }
    }
}

TEST_CASE("proximity is monotone in distance and in sigma") {
    auto schema = unit_schema();
    SUBCASE("decreasing in distance at fixed sigma") {
        ProximityConfig config{0.3, ProximityKernel::contextual_eq2};
        double prev = 2.0;
        for (double dist = 0.0; dist <= 1.0; dist += 0.05) {
            double p = proximity(Instance({0.0}), Instance({dist}), config, schema);
            CHECK(p < prev);
            prev = p;
        }
    }
    SUBCASE("increasing in sigma at fixed nonzero distance, approaching 1") {
        for (double dist : {0.1, 0.5, 1.0}) {
            double prev = 0.0;
            for (double sigma : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 25.0, 200.0}) {
                ProximityConfig config{sigma, ProximityKernel::contextual_eq2};
                double p = proximity(Instance({0.0}), Instance({dist}), config, schema);
                CHECK(p > prev);
                prev = p;
            }
            CHECK(prev > 0.999);
        }
    }
}

TEST_CASE("proximity_vector matches the pairwise definition bitwise") {
    std::vector<FeatureSchema> schema{testing::continuous_feature("a", 0.0, 1.0),
                                      testing::cyclic_feature("h", 24.0),
                                      testing::categorical_feature("c", {"x", "y"})};
    rng::Stream s(123);
    std::vector<Instance> rows;
    std::vector<double> targets;
    for (int i = 0; i < 57; ++i) {
        rows.push_back(Instance({s.uniform01(), s.uniform01() * 24.0,
                                 static_cast<double>(s.uniform_index(2))}));
        targets.push_back(s.uniform01());
    }
    Dataset data(schema, rows, targets);
    Instance x({0.42, 7.5, 1.0});

    for (auto kernel : {ProximityKernel::contextual_eq2, ProximityKernel::euclidean_eq1}) {
        ProximityConfig config{0.37, kernel};
        auto vec = proximity_vector(x, data, config);
        REQUIRE(vec.size() == data.n_rows());
        for (std::size_t i = 0; i < vec.size(); ++i) {
            double pair = proximity(x, data.instances()[i], config, data.schema());
            CHECK(std::memcmp(&vec[i], &pair, sizeof(double)) == 0);
        }
    }
}

TEST_CASE("proximity_vector frozen two-point example") {
    auto schema = unit_schema();
    Dataset data(schema, {Instance({0.5}), Instance({1.0})}, {0.0, 0.0});
    ProximityConfig config{0.5, ProximityKernel::contextual_eq2};
    auto vec = proximity_vector(Instance({0.0}), data, config);
    CHECK(vec[0] == doctest::Approx(kExpNeg1).epsilon(1e-12));
    CHECK(vec[1] == doctest::Approx(kExpNeg4).epsilon(1e-12));

    SUBCASE("own entry is exactly 1 when x is in the dataset") {
        auto self = proximity_vector(Instance({0.5}), data, config);
        CHECK(self[0] == 1.0);
    }
    SUBCASE("all identical points give all ones") {
        Dataset same(schema, {Instance({0.25}), Instance({0.25})}, {0.0, 0.0});
        auto vec2 = proximity_vector(Instance({0.25}), same, config);
        CHECK(vec2[0] == 1.0);
        CHECK(vec2[1] == 1.0);
    }
}

TEST_CASE("default sigma follows the kernel convention") {
    CHECK(default_sigma(ProximityKernel::contextual_eq2, 7) == 0.1);
    CHECK(default_sigma(ProximityKernel::euclidean_eq1, 4) == doctest::Approx(1.5));
}
