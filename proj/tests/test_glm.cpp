#include <doctest.h>

#include <cmath>

#include "csslr/dataset.hpp"
#include "csslr/errors.hpp"
#include "csslr/glm.hpp"
#include "csslr/rng.hpp"
#include "csslr/stats.hpp"

using namespace csslr;

namespace {

// K goods at N(+mu,1), K bads at N(-mu,1) in one column named "S"
Dataset two_gaussian_data(int K, double mu, std::uint64_t seed,
                          std::vector<Column> extra = {}) {
    NormalSampler normal(stream_engine(seed, 0));
    std::vector<int> y(2 * K, 0);
    Column s{"S", std::vector<double>(2 * K)};
    for (int i = 0; i < 2 * K; ++i) {
        if (i >= K) y[i] = 1;
        s.values[i] = (i < K ? mu : -mu) + normal();
    }
    std::vector<Column> cols{std::move(s)};
    for (auto& c : extra) cols.push_back(std::move(c));
    return Dataset(std::move(y), std::move(cols));
}

const SelectionConfig kConfig{};

}  // namespace

TEST_CASE("constant model on balanced data is analytic") {
    Dataset d = two_gaussian_data(500, 1.0, 7);
    FittedModel m = fit_logistic(d, {}, kConfig);
    CHECK(m.converged);
    CHECK(std::fabs(m.intercept) < 1e-8);
    for (double p : m.fitted_probs) CHECK(p == doctest::Approx(0.5));
    CHECK(m.log_likelihood == doctest::Approx(-1000.0 * std::log(2.0)));
    CHECK(m.aic == doctest::Approx(2.0 - 2.0 * m.log_likelihood));
}

TEST_CASE("single strong variable recovers the analytic slope -2") {
    Dataset d = two_gaussian_data(500, 1.0, 11);
    FittedModel m = fit_logistic(d, {"S"}, kConfig);
    CHECK(m.converged);
    // log-density-ratio of N(-1,1) vs N(+1,1) has slope -2mu
    CHECK(m.coefficients[0] == doctest::Approx(-2.0).epsilon(0.15));
    CHECK(std::fabs(m.coefficients[0] + 2.0) < 0.3);
}

TEST_CASE("exactly collinear predictors raise a singular-matrix error") {
    Dataset base = two_gaussian_data(50, 1.0, 3);
    std::vector<Column> cols = base.variables();
    cols.push_back({"S_copy", cols[0].values});
    Dataset d(base.response(), cols);
    CHECK_THROWS_WITH_AS(fit_logistic(d, {"S", "S_copy"}, kConfig), "singular matrix",
                         FitError);
}

TEST_CASE("fit invariants: AIC identity, score at optimum, determinism") {
    Dataset d = two_gaussian_data(500, 0.5, 13);
    FittedModel m = fit_logistic(d, {"S"}, kConfig);
    REQUIRE(m.converged);

    CHECK(m.aic == doctest::Approx(2.0 * (m.n_variables() + 1) - 2.0 * m.log_likelihood)
                       .epsilon(1e-12));

    // gradient check: score components vanish at the optimum
    double g0 = 0.0, g1 = 0.0;
    const auto& x = d.variable("S").values;
    for (std::size_t i = 0; i < d.n_obs(); ++i) {
        double r = d.response()[i] - m.fitted_probs[i];
        g0 += r;
        g1 += r * x[i];
    }
    CHECK(std::fabs(g0) < 1e-6 * d.n_obs());
    CHECK(std::fabs(g1) < 1e-6 * d.n_obs());

    FittedModel again = fit_logistic(d, {"S"}, kConfig);
    CHECK(again.intercept == m.intercept);
    CHECK(again.coefficients == m.coefficients);
    CHECK(again.log_likelihood == m.log_likelihood);

    for (double p : m.fitted_probs) {
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("lr_test") {
    Dataset base = two_gaussian_data(200, 1.0, 5);
    FittedModel pre = fit_logistic(base, {"S"}, kConfig);

    // an added column with zero score at the nested optimum contributes
    // nothing: fitted coefficient ~0, statistic ~0, p ~1
    NormalSampler extra(stream_engine(5, 77));
    std::vector<double> w(base.n_obs()), r_(base.n_obs());
    double rw = 0.0, rr = 0.0;
    for (std::size_t i = 0; i < base.n_obs(); ++i) {
        w[i] = extra();
        r_[i] = base.response()[i] - pre.fitted_probs[i];
        rw += r_[i] * w[i];
        rr += r_[i] * r_[i];
    }
    Column z{"Z", std::vector<double>(base.n_obs())};
    for (std::size_t i = 0; i < base.n_obs(); ++i) z.values[i] = w[i] - (rw / rr) * r_[i];
    std::vector<Column> cols = base.variables();
    cols.push_back(z);
    Dataset d(base.response(), cols);

    FittedModel nested = fit_logistic(d, {"S"}, kConfig);
    FittedModel full = fit_logistic(d, {"S", "Z"}, kConfig);
    TestResult r = lr_test(nested, full);
    CHECK(r.statistic < 1e-3);
    CHECK(r.p_value > 0.97);

    // chi-square quantile from standard tables
    CHECK(chi_squared_sf(3.841, 1.0) == doctest::Approx(0.050).epsilon(0.02));
    CHECK(std::fabs(chi_squared_sf(3.841, 1.0) - 0.050) < 1e-3);

    CHECK_THROWS_AS(lr_test(full, nested), ValidationError);  // not nested
    CHECK_THROWS_AS(lr_test(nested, nested), ValidationError);  // df = 0
}

TEST_CASE("log-likelihood never decreases when a variable is added") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        NormalSampler extra(stream_engine(seed, 99));
        Column noise{"R", std::vector<double>(400)};
        for (double& v : noise.values) v = extra();
        Dataset d = two_gaussian_data(200, 0.5, seed, {noise});
        FittedModel small = fit_logistic(d, {"S"}, kConfig);
        FittedModel big = fit_logistic(d, {"S", "R"}, kConfig);
        CHECK(big.log_likelihood >= small.log_likelihood - 1e-6);
    }
}

TEST_CASE("wald_pvalues") {
    FittedModel m;
    m.variable_names = {"a", "b"};
    m.coefficients = {0.0, 1.959964};
    m.coef_std_errors = {1.0, 0.5, 1.0};
    m.converged = true;
    auto p = wald_pvalues(m);
    CHECK(p.at("a") == doctest::Approx(1.0));
    CHECK(std::fabs(p.at("b") - 0.05) < 1e-4);

    m.coef_std_errors[1] = 0.0;
    CHECK_THROWS_AS(wald_pvalues(m), FitError);
}

TEST_CASE("strong variable is overwhelmingly significant") {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        Dataset d = two_gaussian_data(500, 1.0, seed);
        FittedModel m = fit_logistic(d, {"S"}, kConfig);
        CHECK(wald_pvalues(m).at("S") < 1e-10);
    }
}

TEST_CASE("vif") {
    NormalSampler normal(stream_engine(123, 0));
    const int n = 1000;
    std::vector<int> y(n, 0);
    for (int i = n / 2; i < n; ++i) y[i] = 1;
    Column a{"a", std::vector<double>(n)}, b{"b", std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        a.values[i] = normal();
        b.values[i] = normal();
    }

    SUBCASE("independent columns are near 1") {
        Dataset d(y, {a, b});
        auto v = vif(d, {"a", "b"});
        CHECK(v.at("a") >= 1.0 - 1e-10);
        CHECK(v.at("a") < 1.05);
        CHECK(v.at("b") < 1.05);
    }
    SUBCASE("exact copy gives infinity") {
        Column c{"c", a.values};
        Dataset d(y, {a, c});
        auto v = vif(d, {"a", "c"});
        CHECK(std::isinf(v.at("a")));
        CHECK(std::isinf(v.at("c")));
    }
    SUBCASE("two correlated columns match the closed form") {
        Column c{"c", std::vector<double>(n)};
        for (int i = 0; i < n; ++i) c.values[i] = 0.8 * a.values[i] + 0.6 * b.values[i];
        Dataset d(y, {a, c});
        // sample correlation of a and c
        double ma = 0, mc = 0;
        for (int i = 0; i < n; ++i) { ma += a.values[i]; mc += c.values[i]; }
        ma /= n; mc /= n;
        double saa = 0, scc = 0, sac = 0;
        for (int i = 0; i < n; ++i) {
            saa += (a.values[i] - ma) * (a.values[i] - ma);
            scc += (c.values[i] - mc) * (c.values[i] - mc);
            sac += (a.values[i] - ma) * (c.values[i] - mc);
        }
        double rho = sac / std::sqrt(saa * scc);
        double expected = 1.0 / (1.0 - rho * rho);
        auto v = vif(d, {"a", "c"});
        CHECK(std::fabs(v.at("a") - expected) < 1e-10);
        CHECK(std::fabs(v.at("c") - expected) < 1e-10);
    }
    SUBCASE("single variable and empty list return 1") {
        Dataset d(y, {a});
        auto v = vif(d, {"a"});
        CHECK(v.at("a") == 1.0);
        CHECK(vif(d, {}).empty());
    }
}
