#include "csslr/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csslr/errors.hpp"
#include "csslr/quality.hpp"

namespace csslr {

namespace {

std::vector<std::string> new_variables(const FittedModel& base, const FittedModel& candidate) {
    std::vector<std::string> out;
    for (const std::string& name : candidate.variable_names) {
        if (!base.contains(name)) out.push_back(name);
    }
    return out;
}

bool sign_matches(Sign expected, double coefficient) {
    switch (expected) {
        case Sign::Positive: return coefficient > 0.0;
        case Sign::Negative: return coefficient < 0.0;
        case Sign::NoExpectation: return true;
    }
    return true;
}

double model_bic(const FittedModel& m, std::size_t n_obs) {
    return std::log(static_cast<double>(n_obs)) * static_cast<double>(m.n_variables() + 1) -
           2.0 * m.log_likelihood;
}

// ordering used for all AUC-based tie-breaks: higher AUC, then fewer
// variables, then lexicographic sorted variable names
bool auc_order_before(double auc_a, const FittedModel& a, double auc_b, const FittedModel& b) {
    if (auc_a != auc_b) return auc_a > auc_b;
    if (a.n_variables() != b.n_variables()) return a.n_variables() < b.n_variables();
    return ModelSet::key(a.variable_names) < ModelSet::key(b.variable_names);
}

}  // namespace

std::vector<std::string> ModelSet::key(const std::vector<std::string>& variables) {
    std::vector<std::string> k = variables;
    std::sort(k.begin(), k.end());
    return k;
}

bool ModelSet::insert(FittedModel model) {
    std::vector<std::string> k = key(model.variable_names);
    if (std::find(keys_.begin(), keys_.end(), k) != keys_.end()) return false;
    keys_.push_back(std::move(k));
    models_.push_back(std::move(model));
    return true;
}

bool ModelSet::contains(const std::vector<std::string>& variables) const {
    std::vector<std::string> k = key(variables);
    return std::find(keys_.begin(), keys_.end(), k) != keys_.end();
}

ImprovementVerdict check_improved(const FittedModel& base, const FittedModel& candidate,
                                  const Dataset& data, const SignExpectation& signs,
                                  const SelectionConfig& config) {
    ImprovementVerdict v;
    v.candidate_converged = candidate.converged;
    v.criteria.aic_base = base.aic;
    v.criteria.aic_candidate = candidate.aic;
    if (!candidate.converged) return v;

    const std::vector<int>& labels = data.response();
    CriterionRecord& c = v.criteria;

    TestResult lr = lr_test(base, candidate);
    c.p_lr = lr.p_value;
    c.lr_pass = lr.p_value < config.p_lr_I;

    c.sign_pass = true;
    for (const std::string& name : new_variables(base, candidate)) {
        if (!sign_matches(signs.expectation(name), candidate.coefficient_of(name))) {
            c.sign_pass = false;
        }
    }

    c.max_vif = 1.0;
    c.vif_pass = true;
    if (candidate.n_variables() >= 2) {
        for (const auto& [name, value] : vif(data, candidate.variable_names)) {
            (void)name;
            c.max_vif = std::max(c.max_vif, value);
        }
        c.vif_pass = c.max_vif < config.v_crit;
    }

    TestResult sp_candidate = spiegelhalter_test(candidate.fitted_probs, labels);
    c.p_spiegelhalter = sp_candidate.p_value;
    c.calib_pass = sp_candidate.p_value > config.p_calib;

    // overfitting control: both information criteria must decrease; the BIC
    // requirement keeps marginally significant additions (chi-square below
    // log N) out of the model set
    c.bic_base = model_bic(base, labels.size());
    c.bic_candidate = model_bic(candidate, labels.size());
    c.aic_pass = candidate.aic < base.aic && c.bic_candidate < c.bic_base;

    TestResult auc_t = delong_test(candidate.fitted_probs, base.fitted_probs, labels);
    c.p_auc = auc_t.p_value;
    c.auc_direction = auc_t.direction;
    bool auc_gain = auc_t.p_value < config.p_auc_I && auc_t.direction == Direction::FirstBetter;
    bool auc_loss = auc_t.p_value < config.p_auc_I && auc_t.direction == Direction::SecondBetter;
    c.auc_pass = auc_gain;

    // the MSE comparison requires both models to be individually calibrated
    TestResult sp_base = spiegelhalter_test(base.fitted_probs, labels);
    bool mse_gain = false, mse_loss = false;
    if (c.calib_pass && sp_base.p_value > config.p_calib) {
        c.mse_evaluated = true;
        TestResult mse_t = redelmeier_test(candidate.fitted_probs, base.fitted_probs, labels);
        c.p_mse = mse_t.p_value;
        c.mse_direction = mse_t.direction;
        mse_gain = mse_t.p_value < config.p_mse_I && mse_t.direction == Direction::FirstBetter;
        mse_loss = mse_t.p_value < config.p_mse_I && mse_t.direction == Direction::SecondBetter;
    }
    c.mse_pass = mse_gain;

    if (config.decision_mode == DecisionMode::AucAndMse) {
        c.discrimination_calibration_pass = auc_gain && mse_gain;
    } else {
        c.discrimination_calibration_pass =
            (auc_gain && !mse_loss) || (mse_gain && !auc_loss);
    }

    v.improved = c.lr_pass && c.sign_pass && c.vif_pass && c.calib_pass && c.aic_pass &&
                 c.discrimination_calibration_pass;
    return v;
}

FittedModel trim_model(const FittedModel& candidate,
                       const std::vector<std::string>& base_variables, const Dataset& data,
                       const SignExpectation& signs, const SelectionConfig& config) {
    std::vector<std::string> added = {};
    for (const std::string& name : candidate.variable_names) {
        if (std::find(base_variables.begin(), base_variables.end(), name) ==
            base_variables.end()) {
            added.push_back(name);
        }
    }
    const std::vector<int>& labels = data.response();

    FittedModel current = candidate;
    bool removed = true;
    while (removed && current.n_variables() > 1) {
        removed = false;
        for (const std::string& name : current.variable_names) {
            if (std::find(added.begin(), added.end(), name) != added.end()) continue;

            std::vector<std::string> reduced_vars;
            for (const std::string& other : current.variable_names) {
                if (other != name) reduced_vars.push_back(other);
            }
            FittedModel reduced;
            try {
                reduced = fit_logistic(data, reduced_vars, config);
            } catch (const FitError&) {
                continue;  // keep the variable when the refit fails
            }
            if (!reduced.converged) continue;

            bool wrong_sign =
                !sign_matches(signs.expectation(name), current.coefficient_of(name));
            bool no_contribution = false;
            if (!wrong_sign) {
                double p_lr = lr_test(reduced, current).p_value;
                double p_auc =
                    delong_test(current.fitted_probs, reduced.fitted_probs, labels).p_value;
                double p_mse =
                    redelmeier_test(current.fitted_probs, reduced.fitted_probs, labels).p_value;
                no_contribution = p_lr > config.p_lr_T && p_auc > config.p_auc_T &&
                                  p_mse > config.p_mse_T;
            }
            if (wrong_sign || no_contribution) {
                current = std::move(reduced);
                removed = true;
                break;  // rerun the scan on the reduced model
            }
        }
    }
    return current;
}

std::vector<std::size_t> leading_models(const std::vector<FittedModel>& models,
                                        const Dataset& data, const SelectionConfig& config) {
    if (models.empty()) throw ValidationError("empty model set");
    const std::vector<int>& labels = data.response();

    std::vector<double> aucs(models.size()), mses(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) {
        aucs[i] = auc(models[i].fitted_probs, labels);
        mses[i] = brier(models[i].fitted_probs, labels);
    }
    std::size_t best_auc = 0, best_mse = 0;
    for (std::size_t i = 1; i < models.size(); ++i) {
        if (auc_order_before(aucs[i], models[i], aucs[best_auc], models[best_auc])) {
            best_auc = i;
        }
        bool better_mse = mses[i] != mses[best_mse]
                              ? mses[i] < mses[best_mse]
                              : auc_order_before(0.0, models[i], 0.0, models[best_mse]);
        if (better_mse) best_mse = i;
    }
    if (best_auc == best_mse) return {best_auc};

    double p_auc = delong_test(models[best_auc].fitted_probs, models[best_mse].fitted_probs,
                               labels).p_value;
    double p_mse = redelmeier_test(models[best_auc].fitted_probs,
                                   models[best_mse].fitted_probs, labels).p_value;
    if (p_auc < config.p_auc_E && p_mse > config.p_mse_E) return {best_auc};
    if (p_auc > config.p_auc_E && p_mse < config.p_mse_E) return {best_mse};
    return {best_auc, best_mse};
}

bool check_equivalent(const FittedModel& model, const FittedModel& leader,
                      const Dataset& data, const SelectionConfig& config) {
    const std::vector<int>& labels = data.response();
    TestResult auc_t = delong_test(model.fitted_probs, leader.fitted_probs, labels);
    TestResult mse_t = redelmeier_test(model.fitted_probs, leader.fitted_probs, labels);
    bool sig_auc = auc_t.p_value < config.p_auc_E && auc_t.direction != Direction::None;
    bool sig_mse = mse_t.p_value < config.p_mse_E && mse_t.direction != Direction::None;
    if (!sig_auc && !sig_mse) return true;
    if (sig_auc && sig_mse) return auc_t.direction != mse_t.direction;
    return false;
}

StepOutcome selection_step(const ModelSet& current, const Dataset& data,
                           const SignExpectation& signs, const SelectionConfig& config,
                           int step_index) {
    StepOutcome out;
    out.record.step = step_index;
    const std::vector<int>& labels = data.response();

    // Part I: identification of improved models. A candidate must improve on
    // its own base and must not be dominated by the model set it competes
    // against: its BIC has to undercut the best BIC present when the step
    // started, otherwise a weaker branch could keep growing alongside the
    // leading one.
    double best_bic = std::numeric_limits<double>::infinity();
    for (const FittedModel& m : current.models()) {
        best_bic = std::min(best_bic, model_bic(m, labels.size()));
    }
    std::vector<std::vector<std::string>> deleted_keys;
    ModelSet improved;
    for (const FittedModel& base : current.models()) {
        for (const Column& column : data.variables()) {
            if (base.contains(column.name)) continue;

            CandidateRecord rec;
            rec.step = step_index;
            rec.base_variables = base.variable_names;
            rec.candidate_variable = column.name;

            std::vector<std::string> cand_vars = base.variable_names;
            cand_vars.push_back(column.name);
            FittedModel candidate;
            bool fit_ok = true;
            try {
                candidate = fit_logistic(data, cand_vars, config);
            } catch (const FitError&) {
                fit_ok = false;
            }
            if (fit_ok) {
                rec.verdict = check_improved(base, candidate, data, signs, config);
                if (rec.verdict.improved) {
                    FittedModel trimmed =
                        trim_model(candidate, base.variable_names, data, signs, config);
                    for (const std::string& name : candidate.variable_names) {
                        if (!trimmed.contains(name)) rec.trimmed_away.push_back(name);
                    }
                    bool still_improved = true;
                    if (!rec.trimmed_away.empty()) {
                        // re-validate: adding the new variable to the trimmed
                        // model's remaining base must still be an improvement
                        std::vector<std::string> rebase_vars;
                        for (const std::string& name : trimmed.variable_names) {
                            if (name != column.name) rebase_vars.push_back(name);
                        }
                        try {
                            FittedModel rebase = fit_logistic(data, rebase_vars, config);
                            still_improved =
                                check_improved(rebase, trimmed, data, signs, config).improved;
                        } catch (const FitError&) {
                            still_improved = false;
                        }
                    }
                    if (still_improved &&
                        model_bic(trimmed, labels.size()) < best_bic) {
                        std::vector<std::string> base_key = ModelSet::key(base.variable_names);
                        if (std::find(deleted_keys.begin(), deleted_keys.end(), base_key) ==
                            deleted_keys.end()) {
                            deleted_keys.push_back(base_key);
                        }
                        rec.accepted = improved.insert(std::move(trimmed));
                    }
                }
            }
            out.record.candidates.push_back(std::move(rec));
        }
    }
    out.record.deleted = deleted_keys;
    for (const FittedModel& m : improved.models()) {
        out.record.improved.push_back(m.variable_names);
    }

    // Part II: identification of equivalent models
    if (improved.empty()) {
        out.next = current;
        out.stopped = true;
        out.record.stopped = true;
        return out;
    }
    ModelSet merged;
    for (const FittedModel& m : current.models()) {
        std::vector<std::string> k = ModelSet::key(m.variable_names);
        if (std::find(deleted_keys.begin(), deleted_keys.end(), k) == deleted_keys.end()) {
            merged.insert(m);
        }
    }
    for (const FittedModel& m : improved.models()) merged.insert(m);

    std::vector<std::size_t> leaders = leading_models(merged.models(), data, config);
    for (std::size_t idx : leaders) {
        out.record.leaders.push_back(merged.models()[idx].variable_names);
    }

    ModelSet retained;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const FittedModel& m = merged.models()[i];
        bool is_leader = std::find(leaders.begin(), leaders.end(), i) != leaders.end();
        bool keep = true;
        if (!is_leader) {
            for (std::size_t idx : leaders) {
                if (!check_equivalent(m, merged.models()[idx], data, config)) {
                    keep = false;
                    break;
                }
            }
            out.record.equivalence.push_back({m.variable_names, keep});
        }
        if (keep) retained.insert(m);
    }

    if (retained.size() > static_cast<std::size_t>(config.max_models_per_step)) {
        std::vector<std::size_t> order(retained.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::vector<double> aucs(retained.size());
        for (std::size_t i = 0; i < retained.size(); ++i) {
            aucs[i] = auc(retained.models()[i].fitted_probs, labels);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return auc_order_before(aucs[a], retained.models()[a], aucs[b],
                                    retained.models()[b]);
        });
        ModelSet capped;
        for (std::size_t i = 0; i < static_cast<std::size_t>(config.max_models_per_step); ++i) {
            capped.insert(retained.models()[order[i]]);
        }
        retained = std::move(capped);
        out.record.capped = true;
    }

    out.next = std::move(retained);
    return out;
}

SelectionResult run_csslr(const Dataset& data, const SignExpectation& signs,
                          const SelectionConfig& config) {
    config.validate();
    signs.validate_against(data);

    SelectionResult result;
    ModelSet current;
    current.insert(fit_logistic(data, {}, config));

    result.terminated_by = Termination::MaxSteps;
    for (int step = 1; step <= config.max_steps; ++step) {
        StepOutcome outcome = selection_step(current, data, signs, config, step);
        result.trace.push_back(std::move(outcome.record));
        current = std::move(outcome.next);
        if (outcome.stopped) {
            result.terminated_by = Termination::NoImprovement;
            break;
        }
    }

    result.final_models = std::move(current);
    const std::vector<int>& labels = data.response();
    for (const FittedModel& m : result.final_models.models()) {
        result.model_auc.push_back(auc(m.fitted_probs, labels));
        result.model_mse.push_back(brier(m.fitted_probs, labels));
    }
    result.leader_indices = leading_models(result.final_models.models(), data, config);
    return result;
}

}  // namespace csslr
