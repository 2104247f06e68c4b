#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "../support/helpers.hpp"
#include "chilli/base_models.hpp"
#include "chilli/numeric.hpp"
#include "chilli/rng.hpp"

using namespace chilli;

namespace {

Dataset line_data() {
    return Dataset({testing::continuous_feature("v", 0.0, 1.0)},
                   {Instance({0.0}), Instance({0.5}), Instance({1.0})}, {0.0, 1.0, 4.0});
}

std::string echo_command(const std::string& mode) {
    const char* script = std::getenv("CHILLI_ECHO");
    REQUIRE_MESSAGE(script != nullptr, "CHILLI_ECHO must point at the echo model script");
    return "python3 " + std::string(script) + " --mode " + mode;
}

} // namespace

TEST_CASE("knn predicts the mean target of the nearest neighbors") {
    Dataset data = line_data();

    SUBCASE("k=1 at a training point returns its target") {
        auto model = train_knn(data, 1);
        auto out = model->predict_batch(std::vector<Instance>{Instance({0.5})});
        CHECK(out[0] == 1.0);
    }
    SUBCASE("k equal to the dataset size returns the global mean") {
        auto model = train_knn(data, 3);
        auto out = model->predict_batch(std::vector<Instance>{Instance({0.123})});
        CHECK(out[0] == doctest::Approx(5.0 / 3.0));
    }
    SUBCASE("k=2 near the left end averages the two nearest targets") {
        auto model = train_knn(data, 2);
        auto out = model->predict_batch(std::vector<Instance>{Instance({0.1})});
        CHECK(out[0] == doctest::Approx(0.5));
    }
    SUBCASE("k out of range is rejected") {
        CHECK_THROWS_AS(train_knn(data, 0), Error);
        CHECK_THROWS_AS(train_knn(data, 4), Error);
    }
    SUBCASE("batch of training points returns their targets in order") {
        auto model = train_knn(data, 1);
        auto out = model->predict_batch(
            std::vector<Instance>{Instance({1.0}), Instance({0.0})});
        CHECK(out == std::vector<double>{4.0, 0.0});
    }
}

TEST_CASE("rbf kernel ridge interpolates and degenerates as expected") {
    Dataset data = line_data();

    SUBCASE("alpha=0 interpolates the training targets") {
        auto model = train_rbf_ridge(data, 2.0, 0.0);
        auto out = model->predict_batch(data.instances());
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out[i] == doctest::Approx(data.targets()[i]).epsilon(1e-6));
    }
    SUBCASE("vanishing gamma flattens the prediction surface") {
        auto model = train_rbf_ridge(data, 1e-8, 0.5);
        auto out = model->predict_batch(
            std::vector<Instance>{Instance({0.0}), Instance({0.5}), Instance({0.77})});
        CHECK(out[0] == doctest::Approx(out[1]).epsilon(1e-6));
        CHECK(out[1] == doctest::Approx(out[2]).epsilon(1e-6));
    }
    SUBCASE("two-point system matches an independent linear solve") {
        Dataset two({testing::continuous_feature("v", 0.0, 1.0)},
                    {Instance({0.0}), Instance({1.0})}, {0.0, 2.0});
        auto model = train_rbf_ridge(two, 1.0, 0.1);
        auto out = model->predict_batch(std::vector<Instance>{Instance({0.0})});

        // oracle: solve [[1.1, e^-1], [e^-1, 1.1]] beta = (0, 2) directly
        double k01 = std::exp(-1.0);
        double det = 1.1 * 1.1 - k01 * k01;
        double b0 = (1.1 * 0.0 - k01 * 2.0) / det;
        double b1 = (1.1 * 2.0 - k01 * 0.0) / det;
        double expect = b0 * 1.0 + b1 * k01;
        CHECK(out[0] == doctest::Approx(expect).epsilon(1e-8));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(train_rbf_ridge(data, 0.0, 0.1), Error);
        CHECK_THROWS_AS(train_rbf_ridge(data, 1.0, -0.1), Error);
    }
}

TEST_CASE("built-in predictions concatenate across batches") {
    Dataset data = line_data();
    rng::Stream s(6);
    std::vector<Instance> a, b, both;
    for (int i = 0; i < 7; ++i) {
        Instance z({s.uniform01() * 1.5 - 0.2});
        (i < 4 ? a : b).push_back(z);
        both.push_back(z);
    }
    auto knn = train_knn(data, 2);
    auto rbf = train_rbf_ridge(data, 3.0, 0.01);
    for (const Predictor* model : {knn.get(), rbf.get()}) {
        auto pa = model->predict_batch(a);
        auto pb = model->predict_batch(b);
        auto pc = model->predict_batch(both);
        pa.insert(pa.end(), pb.begin(), pb.end());
        CHECK(pa == pc);
    }
}

TEST_CASE("external model round-trips batches through the csv protocol") {
    std::vector<FeatureSchema> schema{testing::continuous_feature("v", 0.0, 1.0),
                                      testing::categorical_feature("c", {"left", "right"})};

    SUBCASE("constant mode returns 7 for every row") {
        auto model = make_external(schema, echo_command("const7"));
        auto out = model->predict_batch(
            std::vector<Instance>{Instance({0.1, 0.0}), Instance({0.9, 1.0})});
        CHECK(out == std::vector<double>{7.0, 7.0});
    }
    SUBCASE("first-column mode preserves order and values exactly") {
        auto model = make_external(schema, echo_command("first"));
        rng::Stream s(77);
        std::vector<Instance> batch;
        for (int i = 0; i < 200; ++i)
            batch.push_back(
                Instance({s.uniform01(), static_cast<double>(s.uniform_index(2))}));
        auto out = model->predict_batch(batch);
        REQUIRE(out.size() == batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) CHECK(out[i] == batch[i][0]);
    }
    SUBCASE("empty batch never launches the subprocess") {
        auto model = make_external(schema, "this-command-does-not-exist");
        CHECK(model->predict_batch(std::vector<Instance>{}).empty());
    }
    SUBCASE("row-count mismatch is a model error") {
        auto model = make_external(schema, echo_command("drop-last"));
        CHECK_THROWS_AS(
            model->predict_batch(std::vector<Instance>{Instance({0.1, 0.0}),
                                                       Instance({0.2, 1.0})}),
            Error);
    }
    SUBCASE("failing command is a model error") {
        auto model = make_external(schema, echo_command("fail"));
        CHECK_THROWS_AS(model->predict_batch(std::vector<Instance>{Instance({0.1, 0.0})}),
                        Error);
    }
}
