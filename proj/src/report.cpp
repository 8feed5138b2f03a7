#include "csslr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace csslr {

namespace {

const char* direction_name(Direction d) {
    switch (d) {
        case Direction::FirstBetter: return "candidate";
        case Direction::SecondBetter: return "base";
        case Direction::None: return "none";
    }
    return "none";
}

std::string join(const std::vector<std::string>& names) {
    if (names.empty()) return "(constant)";
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += "+";
        out += names[i];
    }
    return out;
}

std::string num(double v, int prec = 6) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

}  // namespace

std::uint64_t dataset_fingerprint(const Dataset& data) {
    std::ostringstream ss;
    write_dataset(data, ss);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : ss.str()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_run_report(std::ostream& out, const Dataset& data, const SelectionConfig& config,
                      const SelectionResult& result) {
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    out << "CSSLR run report\n";
    out << "config_hash: " << hex << "\n";
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(dataset_fingerprint(data)));
    out << "dataset_fingerprint: " << hex << "\n";
    out << "observations: " << data.n_obs() << ", variables: " << data.variables().size()
        << "\n";
    out << "terminated_by: "
        << (result.terminated_by == Termination::NoImprovement ? "NoImprovement" : "MaxSteps")
        << " after " << result.trace.size() << " step(s)\n\n";

    out << "Final models (" << result.final_models.size() << "):\n";
    for (std::size_t i = 0; i < result.final_models.size(); ++i) {
        const FittedModel& m = result.final_models.models()[i];
        bool leader = std::find(result.leader_indices.begin(), result.leader_indices.end(),
                                i) != result.leader_indices.end();
        out << "  [" << i << "]" << (leader ? " (leader)" : "") << " " << join(m.variable_names)
            << "  AUC=" << num(result.model_auc[i]) << "  MSE=" << num(result.model_mse[i])
            << "  AIC=" << num(m.aic) << "\n";
        out << "      intercept=" << num(m.intercept);
        for (std::size_t j = 0; j < m.n_variables(); ++j) {
            out << "  " << m.variable_names[j] << "=" << num(m.coefficients[j]);
        }
        out << "\n";
    }
    out << "\nStep trace:\n";
    write_trace_text(out, result);
}

void write_trace_text(std::ostream& out, const SelectionResult& result) {
    for (const StepRecord& step : result.trace) {
        out << "step " << step.step << ": " << step.candidates.size() << " candidates, "
            << step.improved.size() << " improved" << (step.stopped ? ", stopped" : "")
            << (step.capped ? ", capped" : "") << "\n";
        for (const CandidateRecord& c : step.candidates) {
            const CriterionRecord& r = c.verdict.criteria;
            out << "  " << join(c.base_variables) << " + " << c.candidate_variable << ": ";
            if (!c.verdict.candidate_converged) {
                out << "not converged\n";
                continue;
            }
            out << (c.verdict.improved ? "improved" : "rejected") << "  p_lr=" << num(r.p_lr)
                << " sign=" << (r.sign_pass ? "ok" : "wrong") << " max_vif=" << num(r.max_vif)
                << " p_spieg=" << num(r.p_spiegelhalter) << " aic=" << num(r.aic_candidate)
                << "/" << num(r.aic_base) << " p_auc=" << num(r.p_auc) << "("
                << direction_name(r.auc_direction) << ")"
                << " p_mse=" << num(r.p_mse) << "(" << direction_name(r.mse_direction) << ")";
            if (!c.trimmed_away.empty()) {
                out << " trimmed:" << join(c.trimmed_away);
            }
            if (c.verdict.improved && !c.accepted) out << " (duplicate)";
            out << "\n";
        }
        for (const auto& leader : step.leaders) out << "  leader: " << join(leader) << "\n";
        for (const EquivalenceRecord& e : step.equivalence) {
            out << "  " << join(e.variables)
                << (e.equivalent ? " equivalent, kept" : " not equivalent, removed") << "\n";
        }
    }
}

void write_trace_json(std::ostream& out, const SelectionResult& result) {
    for (const StepRecord& step : result.trace) {
        for (const CandidateRecord& c : step.candidates) {
            const CriterionRecord& r = c.verdict.criteria;
            nlohmann::ordered_json j{
                {"step", c.step},
                {"base_variables", c.base_variables},
                {"candidate_variable", c.candidate_variable},
                {"converged", c.verdict.candidate_converged},
                {"p_lr", r.p_lr},
                {"sign_ok", r.sign_pass},
                {"max_vif", r.max_vif},
                {"p_spiegelhalter", r.p_spiegelhalter},
                {"aic_base", r.aic_base},
                {"aic_candidate", r.aic_candidate},
                {"p_auc", r.p_auc},
                {"auc_direction", direction_name(r.auc_direction)},
                {"p_mse", r.p_mse},
                {"mse_direction", direction_name(r.mse_direction)},
                {"verdict", c.verdict.improved},
                {"trimmed_away", c.trimmed_away},
            };
            if (std::isinf(r.max_vif)) j["max_vif"] = "inf";
            out << j.dump() << "\n";
        }
    }
}

}  // namespace csslr
