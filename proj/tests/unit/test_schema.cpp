#include <doctest.h>

#include <cmath>

#include "../support/helpers.hpp"
#include "../support/oracles.hpp"
#include "chilli/rng.hpp"
#include "chilli/schema.hpp"

using namespace chilli;
using testing::TempFile;

TEST_CASE("load_schema parses and validates feature definitions") {
    TempFile good(R"([
        {"name": "hour", "kind": "cyclic", "period": 24},
        {"name": "age", "kind": "continuous", "min": 0, "max": 120},
        {"name": "color", "kind": "categorical", "categories": ["red", "green", "blue"]}
    ])", ".json");
    auto schema = load_schema(good.path());
    REQUIRE(schema.size() == 3);
    CHECK(schema[0].name == "hour");
    CHECK(schema[0].kind == FeatureKind::cyclic);
    CHECK(schema[0].period == 24.0);
    CHECK(schema[1].kind == FeatureKind::continuous);
    CHECK(*schema[1].min == 0.0);
    CHECK(*schema[1].max == 120.0);
    CHECK(schema[2].categories.size() == 3);

    SUBCASE("min == max is rejected") {
        TempFile bad(R"([{"name": "age", "kind": "continuous", "min": 5, "max": 5}])", ".json");
        CHECK_THROWS_AS(load_schema(bad.path()), Error);
    }
    SUBCASE("period on a continuous feature is rejected") {
        TempFile bad(R"([{"name": "v", "kind": "continuous", "period": 3}])", ".json");
        CHECK_THROWS_AS(load_schema(bad.path()), Error);
    }
    SUBCASE("duplicate feature names are rejected") {
        TempFile bad(R"([{"name": "v", "kind": "cyclic", "period": 1},
                         {"name": "v", "kind": "cyclic", "period": 2}])", ".json");
        CHECK_THROWS_AS(load_schema(bad.path()), Error);
    }
    SUBCASE("single category is rejected") {
        TempFile bad(R"([{"name": "c", "kind": "categorical", "categories": ["only"]}])",
                     ".json");
        CHECK_THROWS_AS(load_schema(bad.path()), Error);
    }
    SUBCASE("malformed JSON is a parse error") {
        TempFile bad("[{", ".json");
        CHECK_THROWS_AS(load_schema(bad.path()), Error);
    }
}

TEST_CASE("load_dataset parses rows and computes statistics") {
    TempFile schema_file(R"([{"name": "v", "kind": "continuous", "min": 0, "max": 10}])",
                         ".json");
    auto schema = load_schema(schema_file.path());

    SUBCASE("sample stddev uses the n-1 denominator") {
        TempFile csv("v,y\n1,0\n2,0\n3,0\n", ".csv");
        Dataset data = load_dataset(csv.path(), schema, "y");
        CHECK(data.n_rows() == 3);
        CHECK(data.stats(0).mean == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(data.stats(0).stddev == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("one row is too few") {
        TempFile csv("v,y\n1,0\n", ".csv");
        CHECK_THROWS_AS(load_dataset(csv.path(), schema, "y"), Error);
    }
    SUBCASE("missing target column") {
        TempFile csv("v,z\n1,0\n2,0\n", ".csv");
        CHECK_THROWS_AS(load_dataset(csv.path(), schema, "y"), Error);
    }
    SUBCASE("unparseable cell") {
        TempFile csv("v,y\n1,0\nxyz,0\n", ".csv");
        CHECK_THROWS_AS(load_dataset(csv.path(), schema, "y"), Error);
    }
    SUBCASE("missing value is rejected") {
        TempFile csv("v,y\n1,0\n,0\n", ".csv");
        CHECK_THROWS_AS(load_dataset(csv.path(), schema, "y"), Error);
    }
    SUBCASE("extra columns are ignored") {
        TempFile csv("extra,v,y\nfoo,1,0\nbar,2,1\n", ".csv");
        Dataset data = load_dataset(csv.path(), schema, "y");
        CHECK(data.n_rows() == 2);
        CHECK(data.targets()[1] == 1.0);
    }
}

TEST_CASE("categorical columns map labels to schema indices") {
    TempFile schema_file(
        R"([{"name": "c", "kind": "categorical", "categories": ["red", "blue"]}])", ".json");
    auto schema = load_schema(schema_file.path());

    TempFile csv("c,y\nred,1\nblue,2\nred,3\n", ".csv");
    Dataset data = load_dataset(csv.path(), schema, "y");
    CHECK(data.instances()[0][0] == 0.0);
    CHECK(data.instances()[1][0] == 1.0);
    CHECK(data.stats(0).frequencies[0] == doctest::Approx(2.0 / 3.0));
    CHECK(data.stats(0).frequencies[1] == doctest::Approx(1.0 / 3.0));

    TempFile bad("c,y\nred,1\ngreen,2\n", ".csv");
    CHECK_THROWS_AS(load_dataset(bad.path(), schema, "y"), Error);
}

TEST_CASE("continuous bounds default to the training range when absent") {
    TempFile schema_file(R"([{"name": "v", "kind": "continuous"}])", ".json");
    auto schema = load_schema(schema_file.path());
    CHECK_FALSE(schema[0].has_bounds());

    TempFile csv("v,y\n2,0\n8,0\n5,0\n", ".csv");
    Dataset data = load_dataset(csv.path(), schema, "y");
    CHECK(*data.schema()[0].min == 2.0);
    CHECK(*data.schema()[0].max == 8.0);

    SUBCASE("constant data cannot bind bounds") {
        TempFile constant("v,y\n5,0\n5,0\n", ".csv");
        CHECK_THROWS_AS(load_dataset(constant.path(), schema, "y"), Error);
    }
}

TEST_CASE("rfc-4180 quoting round-trips through the parser") {
    TempFile schema_file(
        R"([{"name": "c", "kind": "categorical", "categories": ["a,b", "q\"q", "plain"]}])",
        ".json");
    auto schema = load_schema(schema_file.path());
    TempFile csv("c,y\r\n\"a,b\",1\r\n\"q\"\"q\",2\r\nplain,3\r\n", ".csv");
    Dataset data = load_dataset(csv.path(), schema, "y");
    CHECK(data.n_rows() == 3);
    CHECK(data.instances()[0][0] == 0.0);
    CHECK(data.instances()[1][0] == 1.0);
    CHECK(data.instances()[2][0] == 2.0);
}

TEST_CASE("normalize maps values onto the unit scale") {
    auto cont = testing::continuous_feature("v", 0.0, 100.0);
    CHECK(normalize_value(50.0, cont) == 0.5);
    CHECK(normalize_value(-10.0, cont) == doctest::Approx(-0.1));

    auto hour = testing::cyclic_feature("hour", 24.0);
    CHECK(normalize_value(25.0, hour) == doctest::Approx(1.0 / 24.0));
    CHECK(normalize_value(-1.0, hour) == doctest::Approx(23.0 / 24.0));

    auto cat = testing::categorical_feature("c", {"a", "b"});
    CHECK(normalize_value(1.0, cat) == 1.0);

    SUBCASE("monotone on continuous features") {
        rng::Stream s(3);
        double prev = normalize_value(-50.0, cont);
        for (double v = -40.0; v <= 140.0; v += 7.3) {
            double cur = normalize_value(v, cont);
            CHECK(cur > prev);
            prev = cur;
        }
    }
    SUBCASE("periodic on cyclic features") {
        for (double v : {0.0, 1.5, 11.99, 23.0}) {
            CHECK(normalize_value(v, hour) ==
                  doctest::Approx(normalize_value(v + 24.0, hour)).epsilon(1e-12));
        }
    }
    SUBCASE("denormalize round-trips in-range continuous values") {
        rng::Stream s(4);
        for (int i = 0; i < 200; ++i) {
            double v = s.uniform01() * 100.0;
            double back = denormalize_value(normalize_value(v, cont), cont);
            CHECK(back == doctest::Approx(v).epsilon(1e-12));
        }
    }
}

TEST_CASE("dataset statistics match a single-pass recomputation") {
    rng::Stream s(77);
    std::vector<Instance> rows;
    std::vector<double> targets;
    std::vector<double> col;
    for (int i = 0; i < 311; ++i) {
        double v = s.normal() * 3.7 + 12.0;
        rows.push_back(Instance({v}));
        col.push_back(v);
        targets.push_back(s.uniform01());
    }
    Dataset data({testing::continuous_feature("v", -20.0, 40.0)}, rows, targets);
    auto w = testing::welford(col);
    CHECK(data.stats(0).mean == doctest::Approx(w.mean).epsilon(1e-12));
    CHECK(data.stats(0).stddev == doctest::Approx(w.stddev).epsilon(1e-12));
}

TEST_CASE("instance validation catches shape and domain errors") {
    std::vector<FeatureSchema> schema{testing::continuous_feature("v", 0.0, 1.0),
                                      testing::categorical_feature("c", {"a", "b"})};
    CHECK_THROWS_AS(validate_instance(Instance({0.5}), schema), Error);
    CHECK_THROWS_AS(validate_instance(Instance({0.5, 2.0}), schema), Error);
    CHECK_THROWS_AS(validate_instance(Instance({0.5, 0.5}), schema), Error);
    CHECK_NOTHROW(validate_instance(Instance({0.5, 1.0}), schema));
    // out-of-bounds continuous values are allowed; they are flagged downstream
    CHECK_NOTHROW(validate_instance(Instance({-3.0, 0.0}), schema));
}
