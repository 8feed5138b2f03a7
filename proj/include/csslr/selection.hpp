#pragma once

#include <string>
#include <vector>

#include "csslr/config.hpp"
#include "csslr/dataset.hpp"
#include "csslr/glm.hpp"

namespace csslr {

// Per-criterion outcome of an improvement check, kept in full for the trace.
struct CriterionRecord {
    double p_lr = 1.0;
    bool lr_pass = false;
    bool sign_pass = false;
    double max_vif = 1.0;
    bool vif_pass = false;
    double p_spiegelhalter = 1.0;
    bool calib_pass = false;
    double aic_base = 0.0;
    double aic_candidate = 0.0;
    double bic_base = 0.0;
    double bic_candidate = 0.0;
    bool aic_pass = false;  // both information criteria decrease
    double p_auc = 1.0;
    Direction auc_direction = Direction::None;
    bool auc_pass = false;   // significant AUC gain of the candidate
    double p_mse = 1.0;
    Direction mse_direction = Direction::None;
    bool mse_pass = false;   // significant MSE gain of the candidate
    bool mse_evaluated = false;  // both models passed the calibration gate
    bool discrimination_calibration_pass = false;  // combined AUC/MSE decision
};

struct ImprovementVerdict {
    bool improved = false;
    bool candidate_converged = false;
    CriterionRecord criteria;
};

// Deduplicated collection of fitted models, keyed by unordered variable set.
class ModelSet {
public:
    bool insert(FittedModel model);  // false and no-op when the variable set exists
    bool contains(const std::vector<std::string>& variables) const;
    const std::vector<FittedModel>& models() const { return models_; }
    std::size_t size() const { return models_.size(); }
    bool empty() const { return models_.empty(); }

    static std::vector<std::string> key(const std::vector<std::string>& variables);

private:
    std::vector<FittedModel> models_;
    std::vector<std::vector<std::string>> keys_;
};

struct CandidateRecord {
    int step = 0;
    std::vector<std::string> base_variables;
    std::string candidate_variable;
    ImprovementVerdict verdict;
    std::vector<std::string> trimmed_away;
    bool accepted = false;
};

struct EquivalenceRecord {
    std::vector<std::string> variables;
    bool equivalent = false;
};

struct StepRecord {
    int step = 0;
    std::vector<CandidateRecord> candidates;
    std::vector<std::vector<std::string>> deleted;   // base models superseded this step
    std::vector<std::vector<std::string>> improved;  // accepted candidates
    std::vector<std::vector<std::string>> leaders;
    std::vector<EquivalenceRecord> equivalence;
    bool capped = false;
    bool stopped = false;
};

enum class Termination { NoImprovement, MaxSteps };

struct SelectionResult {
    ModelSet final_models;
    std::vector<double> model_auc;   // aligned with final_models
    std::vector<double> model_mse;
    std::vector<std::size_t> leader_indices;  // max-AUC leader first
    std::vector<StepRecord> trace;
    Termination terminated_by = Termination::NoImprovement;
};

// Improvement predicate: likelihood-ratio significance, coefficient signs,
// VIF, Spiegelhalter calibration, AIC reduction, and the AUC/MSE difference
// tests combined per config.decision_mode. The new variables are those of
// candidate absent from base.
ImprovementVerdict check_improved(const FittedModel& base, const FittedModel& candidate,
                                  const Dataset& data, const SignExpectation& signs,
                                  const SelectionConfig& config);

// Incremental trimming: previously included variables that lost sign
// correctness or all of their LR/AUC/MSE contribution are removed, restarting
// the scan after every removal. The newly added variable (the one absent from
// base_variables) is never removed.
FittedModel trim_model(const FittedModel& candidate,
                       const std::vector<std::string>& base_variables, const Dataset& data,
                       const SignExpectation& signs, const SelectionConfig& config);

// Indices of the leading model(s): argmax AUC and argmin MSE, collapsed to
// one when the difference tests rank them. Max-AUC leader first.
std::vector<std::size_t> leading_models(const std::vector<FittedModel>& models,
                                        const Dataset& data, const SelectionConfig& config);

// Two models are equivalent when they cannot be rank-ordered across the
// discrimination and calibration dimensions.
bool check_equivalent(const FittedModel& model, const FittedModel& leader,
                      const Dataset& data, const SelectionConfig& config);

struct StepOutcome {
    ModelSet next;
    StepRecord record;
    bool stopped = false;
};

StepOutcome selection_step(const ModelSet& current, const Dataset& data,
                           const SignExpectation& signs, const SelectionConfig& config,
                           int step_index = 1);

SelectionResult run_csslr(const Dataset& data, const SignExpectation& signs,
                          const SelectionConfig& config);

}  // namespace csslr
