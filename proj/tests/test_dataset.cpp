#include <doctest.h>

#include <cmath>
#include <sstream>

#include "csslr/dataset.hpp"
#include "csslr/errors.hpp"
#include "csslr/simulation.hpp"

using namespace csslr;

TEST_CASE("load_dataset parses a minimal CSV") {
    std::istringstream in("y,x1\n0,1.5\n1,-0.3\n");
    Dataset d = load_dataset(in, "y");
    CHECK(d.n_obs() == 2);
    REQUIRE(d.variables().size() == 1);
    CHECK(d.variables()[0].name == "x1");
    CHECK(d.variable("x1").values[1] == doctest::Approx(-0.3));
    CHECK(d.response()[0] == 0);
    CHECK(d.response()[1] == 1);
}

TEST_CASE("load_dataset rejects malformed input") {
    SUBCASE("single-class response") {
        std::istringstream in("y,x1\n0,1.0\n0,2.0\n");
        CHECK_THROWS_WITH_AS(load_dataset(in, "y"), "single-class response", ValidationError);
    }
    SUBCASE("response column absent") {
        std::istringstream in("y,x1\n0,1.0\n1,2.0\n");
        CHECK_THROWS_AS(load_dataset(in, "z"), ValidationError);
    }
    SUBCASE("non-binary response") {
        std::istringstream in("y,x1\n0,1.0\n2,2.0\n");
        CHECK_THROWS_AS(load_dataset(in, "y"), ValidationError);
    }
    SUBCASE("non-numeric cell") {
        std::istringstream in("y,x1\n0,abc\n1,2.0\n");
        CHECK_THROWS_AS(load_dataset(in, "y"), ValidationError);
    }
    SUBCASE("ragged row") {
        std::istringstream in("y,x1\n0,1.0,9\n1,2.0\n");
        CHECK_THROWS_AS(load_dataset(in, "y"), ValidationError);
    }
    SUBCASE("empty stream has no header") {
        std::istringstream in("");
        CHECK_THROWS_AS(load_dataset(in, "y"), ValidationError);
    }
}

TEST_CASE("dataset invariants") {
    CHECK_THROWS_AS(Dataset({0, 1}, {{"x", {1.0}}}), ValidationError);     // ragged
    CHECK_THROWS_AS(Dataset({0, 1}, {{"x", {1.0, NAN}}}), ValidationError);
    CHECK_THROWS_AS(Dataset({0, 1}, {{"x", {1.0, 2.0}}, {"x", {3.0, 4.0}}}),
                    ValidationError);  // duplicate name
    CHECK_THROWS_AS(Dataset({0, 1}, {{"", {1.0, 2.0}}}), ValidationError);
}

TEST_CASE("write/load round-trip is the identity") {
    StudySpec spec;
    spec.n_strong = 2;
    spec.n_weak = 1;
    spec.n_nuisance = 2;
    spec.mu_strong = 1.0;
    spec.mu_weak = 0.5;
    spec.observations_per_class = 500;
    spec.replications = 1;
    spec.seed = 42;
    spec.methods = {"AIC"};
    Dataset d = generate_dataset(spec, 0);

    std::stringstream buf;
    write_dataset(d, buf, "y");
    Dataset back = load_dataset(buf, "y");

    REQUIRE(back.n_obs() == d.n_obs());
    REQUIRE(back.variables().size() == d.variables().size());
    CHECK(back.response() == d.response());
    for (std::size_t j = 0; j < d.variables().size(); ++j) {
        CHECK(back.variables()[j].name == d.variables()[j].name);
        for (std::size_t i = 0; i < d.n_obs(); ++i) {
            CHECK(std::fabs(back.variables()[j].values[i] - d.variables()[j].values[i]) <=
                  1e-12);
        }
    }
}

TEST_CASE("sign expectations") {
    std::istringstream in("S1,Negative\nD,+\nR9,NoExpectation\n");
    SignExpectation signs = load_signs(in);
    CHECK(signs.expectation("S1") == Sign::Negative);
    CHECK(signs.expectation("D") == Sign::Positive);
    CHECK(signs.expectation("R9") == Sign::NoExpectation);
    CHECK(signs.expectation("unlisted") == Sign::NoExpectation);

    Dataset d({0, 1}, {{"S1", {1.0, 2.0}}});
    CHECK_THROWS_AS(signs.validate_against(d), ValidationError);  // D, R9 unknown

    std::istringstream bad("S1,Sometimes\n");
    CHECK_THROWS_AS(load_signs(bad), ValidationError);
}
