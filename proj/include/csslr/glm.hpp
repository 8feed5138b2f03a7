#pragma once

#include <map>
#include <string>
#include <vector>

#include "csslr/config.hpp"
#include "csslr/dataset.hpp"

namespace csslr {

enum class Direction { FirstBetter, SecondBetter, None };

// Shared carrier for all paired and one-sample tests.
struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    Direction direction = Direction::None;
    bool degenerate = false;
};

struct FittedModel {
    std::vector<std::string> variable_names;  // inclusion order, empty = constant model
    double intercept = 0.0;
    std::vector<double> coefficients;       // aligned with variable_names
    std::vector<double> fitted_probs;       // strictly inside (0,1)
    double log_likelihood = 0.0;
    double aic = 0.0;
    bool converged = false;
    std::vector<double> coef_std_errors;    // intercept first

    std::size_t n_variables() const { return variable_names.size(); }
    bool contains(const std::string& name) const;
    double coefficient_of(const std::string& name) const;
};

// Maximum-likelihood logistic regression via IRLS. Convergence: max absolute
// coefficient change below config.fit_tolerance within
// config.fit_max_iterations; otherwise the model is returned with
// converged = false. Throws FitError on an exactly singular system.
FittedModel fit_logistic(const Dataset& data, const std::vector<std::string>& variables,
                         const SelectionConfig& config);

// Likelihood-ratio chi-square test of nested against full.
TestResult lr_test(const FittedModel& nested, const FittedModel& full);

// Two-sided normal p-values of coefficient z-statistics, intercept excluded.
std::map<std::string, double> wald_pvalues(const FittedModel& model);

// Variance inflation factors from the predictor correlation matrix.
// Exactly collinear variables get +infinity.
std::map<std::string, double> vif(const Dataset& data,
                                  const std::vector<std::string>& variables);

}  // namespace csslr
