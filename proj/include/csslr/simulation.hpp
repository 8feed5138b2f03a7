#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "csslr/baselines.hpp"
#include "csslr/config.hpp"
#include "csslr/dataset.hpp"
#include "csslr/selection.hpp"

namespace csslr {

// Two-class balanced Gaussian design: strong columns S* at +/- mu_strong,
// weak columns W* at +/- mu_weak, nuisance columns R* at 0.
struct StudySpec {
    int n_strong = 0;
    int n_weak = 0;
    int n_nuisance = 0;
    double mu_strong = 0.0;
    double mu_weak = 0.0;
    int observations_per_class = 500;  // K
    int replications = 1000;
    std::uint64_t seed = 0;
    std::vector<std::string> methods;  // CSSLR profile names, "AIC", "Coeff"

    void validate() const;
};

Dataset generate_dataset(const StudySpec& spec, int replication_index);

// Discriminating columns carry a Negative expectation (large value means
// good); nuisance columns carry none.
SignExpectation expected_signs(const StudySpec& spec);

struct ClassMetrics {
    double p_selected = 0.0;        // percent of replications with >= 1 selection
    double avg_when_selected = 0.0; // mean count conditional on >= 1; NaN when never
    bool defined = false;
};

struct MethodResult {
    ClassMetrics strong, weak, nuisance;
    int failures = 0;
};

struct StudyResult {
    std::vector<std::pair<std::string, MethodResult>> per_method;
};

// Representative model of a CSSLR run: the max-AUC leader.
const FittedModel& representative_model(const SelectionResult& result);

StudyResult run_study(const StudySpec& spec,
                      const std::map<std::string, SelectionConfig>& configs, int jobs = 1);

// Aligned text table (Method, P_s, A_s, P_w, A_w, P_nd, A_nd; absent classes
// omitted) and the same content as CSV.
std::string render_table(const StudySpec& spec, const StudyResult& result);
std::string render_csv(const StudySpec& spec, const StudyResult& result);

// Built-in experiment specs "table3", "table4", "table5", "table6".
StudySpec builtin_study(std::string_view name);
bool is_builtin_study(std::string_view name);

}  // namespace csslr
