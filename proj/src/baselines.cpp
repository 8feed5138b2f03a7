#include "csslr/baselines.hpp"

#include <algorithm>
#include <optional>

#include "csslr/errors.hpp"

namespace csslr {

namespace {

SelectionConfig fit_defaults() {
    return SelectionConfig{};
}

std::optional<FittedModel> try_fit(const Dataset& data,
                                   const std::vector<std::string>& variables,
                                   const SelectionConfig& config) {
    try {
        FittedModel m = fit_logistic(data, variables, config);
        if (!m.converged) return std::nullopt;
        return m;
    } catch (const FitError&) {
        return std::nullopt;
    }
}

std::vector<std::string> without(const std::vector<std::string>& vars, const std::string& name) {
    std::vector<std::string> out;
    for (const std::string& v : vars) {
        if (v != name) out.push_back(v);
    }
    return out;
}

}  // namespace

FittedModel select_aic(const Dataset& data, int max_steps) {
    const SelectionConfig config = fit_defaults();
    FittedModel current = fit_logistic(data, {}, config);

    for (int step = 0; step < max_steps; ++step) {
        std::optional<FittedModel> best;
        std::string best_move;  // for deterministic name tie-break
        auto consider = [&](std::optional<FittedModel> cand, const std::string& name) {
            if (!cand) return;
            if (!best || cand->aic < best->aic ||
                (cand->aic == best->aic && name < best_move)) {
                best = std::move(cand);
                best_move = name;
            }
        };
        for (const Column& col : data.variables()) {
            if (current.contains(col.name)) continue;
            std::vector<std::string> vars = current.variable_names;
            vars.push_back(col.name);
            consider(try_fit(data, vars, config), col.name);
        }
        for (const std::string& name : current.variable_names) {
            consider(try_fit(data, without(current.variable_names, name), config), name);
        }
        if (!best || best->aic >= current.aic) break;
        current = std::move(*best);
    }
    return current;
}

FittedModel select_pvalue(const Dataset& data, double alpha, int max_steps) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must be in (0,1)");
    const SelectionConfig config = fit_defaults();
    FittedModel current = fit_logistic(data, {}, config);

    for (int step = 0; step < max_steps; ++step) {
        bool changed = false;

        // forward: add the excluded variable with the smallest Wald p-value
        std::optional<FittedModel> best;
        double best_p = alpha;
        std::string best_name;
        for (const Column& col : data.variables()) {
            if (current.contains(col.name)) continue;
            std::vector<std::string> vars = current.variable_names;
            vars.push_back(col.name);
            std::optional<FittedModel> cand = try_fit(data, vars, config);
            if (!cand) continue;
            double p;
            try {
                p = wald_pvalues(*cand).at(col.name);
            } catch (const FitError&) {
                continue;
            }
            if (p < best_p || (p == best_p && best && col.name < best_name)) {
                best = std::move(cand);
                best_p = p;
                best_name = col.name;
            }
        }
        if (best) {
            current = std::move(*best);
            changed = true;
        }

        // backward purge: drop variables no longer significant, largest p first
        for (;;) {
            if (current.n_variables() == 0) break;
            std::map<std::string, double> pvals;
            try {
                pvals = wald_pvalues(current);
            } catch (const FitError&) {
                break;
            }
            std::string worst;
            double worst_p = alpha;
            for (const auto& [name, p] : pvals) {
                if (p >= worst_p) {
                    worst = name;
                    worst_p = p;
                }
            }
            if (worst.empty()) break;
            std::optional<FittedModel> reduced =
                try_fit(data, without(current.variable_names, worst), config);
            if (!reduced) break;
            current = std::move(*reduced);
            changed = true;
        }

        if (!changed) break;
    }
    return current;
}

}  // namespace csslr
