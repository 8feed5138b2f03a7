#include "csslr/simulation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "csslr/errors.hpp"
#include "csslr/rng.hpp"

namespace csslr {

namespace {

enum class VarClass { Strong, Weak, Nuisance };

VarClass classify(const std::string& name) {
    if (name.empty()) return VarClass::Nuisance;
    switch (name[0]) {
        case 'S': return VarClass::Strong;
        case 'W': return VarClass::Weak;
        default: return VarClass::Nuisance;
    }
}

struct RepCounts {
    int strong = 0, weak = 0, nuisance = 0;
    bool failed = false;
};

RepCounts count_model(const FittedModel& model) {
    RepCounts c;
    for (const std::string& name : model.variable_names) {
        switch (classify(name)) {
            case VarClass::Strong: ++c.strong; break;
            case VarClass::Weak: ++c.weak; break;
            case VarClass::Nuisance: ++c.nuisance; break;
        }
    }
    return c;
}

ClassMetrics aggregate(const std::vector<RepCounts>& counts, int RepCounts::* field,
                       int valid) {
    ClassMetrics m;
    int hits = 0;
    long long total = 0;
    for (const RepCounts& c : counts) {
        if (c.failed) continue;
        int k = c.*field;
        if (k > 0) {
            ++hits;
            total += k;
        }
    }
    m.p_selected = valid > 0 ? 100.0 * hits / valid : 0.0;
    if (hits > 0) {
        m.avg_when_selected = static_cast<double>(total) / hits;
        m.defined = true;
    } else {
        m.avg_when_selected = std::numeric_limits<double>::quiet_NaN();
    }
    return m;
}

std::string fmt2(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void StudySpec::validate() const {
    if (n_strong < 0 || n_weak < 0 || n_nuisance < 0 ||
        n_strong + n_weak + n_nuisance < 1) {
        throw ValidationError("study needs at least one variable");
    }
    if (observations_per_class < 2) throw ValidationError("K must be at least 2");
    if (replications < 1) throw ValidationError("replications must be positive");
    if (n_strong > 0 && n_weak > 0 && !(mu_strong > mu_weak)) {
        throw ValidationError("mu_strong must exceed mu_weak");
    }
    if (mu_strong < 0.0 || mu_weak < 0.0) throw ValidationError("mu must be nonnegative");
    if (methods.empty()) throw ValidationError("no methods given");
    for (const std::string& m : methods) {
        if (!is_csslr_profile(m) && m != "AIC" && m != "Coeff") {
            throw ValidationError(
                "unknown method '" + m +
                "' (valid: CSSLR1a, CSSLR1b, CSSLR2a, CSSLR2b, AIC, Coeff)");
        }
    }
}

Dataset generate_dataset(const StudySpec& spec, int replication_index) {
    const int K = spec.observations_per_class;
    const std::size_t n = static_cast<std::size_t>(2 * K);
    std::vector<int> response(n, 0);
    for (std::size_t i = static_cast<std::size_t>(K); i < n; ++i) response[i] = 1;

    NormalSampler normal(
        stream_engine(spec.seed, static_cast<std::uint64_t>(replication_index)));
    std::vector<Column> columns;
    auto add_columns = [&](int count, const char* prefix, double mu) {
        for (int j = 1; j <= count; ++j) {
            Column col;
            col.name = prefix + std::to_string(j);
            col.values.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                double mean = response[i] == 0 ? mu : -mu;
                col.values[i] = mean + normal();
            }
            columns.push_back(std::move(col));
        }
    };
    add_columns(spec.n_strong, "S", spec.mu_strong);
    add_columns(spec.n_weak, "W", spec.mu_weak);
    add_columns(spec.n_nuisance, "R", 0.0);
    return Dataset(std::move(response), std::move(columns));
}

SignExpectation expected_signs(const StudySpec& spec) {
    SignExpectation signs;
    for (int j = 1; j <= spec.n_strong; ++j) signs.set("S" + std::to_string(j), Sign::Negative);
    for (int j = 1; j <= spec.n_weak; ++j) signs.set("W" + std::to_string(j), Sign::Negative);
    return signs;
}

const FittedModel& representative_model(const SelectionResult& result) {
    if (result.final_models.empty()) throw ValidationError("empty selection result");
    return result.final_models.models()[result.leader_indices.front()];
}

StudyResult run_study(const StudySpec& spec,
                      const std::map<std::string, SelectionConfig>& configs, int jobs) {
    spec.validate();
    for (const std::string& method : spec.methods) {
        if (is_csslr_profile(method) && !configs.count(method)) {
            throw ValidationError("no config given for method '" + method + "'");
        }
    }
    if (jobs < 1) jobs = 1;

    const int reps = spec.replications;
    // counts[method][replication], filled in replication order by any schedule
    std::vector<std::vector<RepCounts>> counts(spec.methods.size(),
                                               std::vector<RepCounts>(reps));

    std::atomic<int> next_rep{0};
    auto worker = [&]() {
        for (;;) {
            int r = next_rep.fetch_add(1);
            if (r >= reps) return;
            Dataset data = generate_dataset(spec, r);
            SignExpectation signs = expected_signs(spec);
            for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
                const std::string& method = spec.methods[mi];
                try {
                    if (method == "AIC") {
                        counts[mi][r] = count_model(select_aic(data));
                    } else if (method == "Coeff") {
                        counts[mi][r] = count_model(select_pvalue(data));
                    } else {
                        SelectionResult result =
                            run_csslr(data, signs, configs.at(method));
                        counts[mi][r] = count_model(representative_model(result));
                    }
                } catch (const std::exception&) {
                    counts[mi][r].failed = true;
                }
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    StudyResult result;
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
        MethodResult mr;
        int valid = 0;
        for (const RepCounts& c : counts[mi]) {
            if (c.failed) ++mr.failures;
            else ++valid;
        }
        mr.strong = aggregate(counts[mi], &RepCounts::strong, valid);
        mr.weak = aggregate(counts[mi], &RepCounts::weak, valid);
        mr.nuisance = aggregate(counts[mi], &RepCounts::nuisance, valid);
        result.per_method.emplace_back(spec.methods[mi], mr);
    }
    return result;
}

std::string render_table(const StudySpec& spec, const StudyResult& result) {
    std::ostringstream out;
    auto col = [&](const std::string& s, int w) {
        out << s;
        for (int i = static_cast<int>(s.size()); i < w; ++i) out << ' ';
    };
    col("Method", 10);
    if (spec.n_strong > 0) { col("P_s", 9); col("A_s", 9); }
    if (spec.n_weak > 0) { col("P_w", 9); col("A_w", 9); }
    if (spec.n_nuisance > 0) { col("P_nd", 9); col("A_nd", 9); }
    out << '\n';
    for (const auto& [method, mr] : result.per_method) {
        col(method, 10);
        if (spec.n_strong > 0) {
            col(fmt2(mr.strong.p_selected), 9);
            col(fmt2(mr.strong.avg_when_selected), 9);
        }
        if (spec.n_weak > 0) {
            col(fmt2(mr.weak.p_selected), 9);
            col(fmt2(mr.weak.avg_when_selected), 9);
        }
        if (spec.n_nuisance > 0) {
            col(fmt2(mr.nuisance.p_selected), 9);
            col(fmt2(mr.nuisance.avg_when_selected), 9);
        }
        out << '\n';
    }
    return out.str();
}

std::string render_csv(const StudySpec& spec, const StudyResult& result) {
    std::ostringstream out;
    out << "method";
    if (spec.n_strong > 0) out << ",P_s,A_s";
    if (spec.n_weak > 0) out << ",P_w,A_w";
    if (spec.n_nuisance > 0) out << ",P_nd,A_nd";
    out << ",failures\n";
    for (const auto& [method, mr] : result.per_method) {
        out << method;
        if (spec.n_strong > 0) {
            out << ',' << fmt2(mr.strong.p_selected) << ',' << fmt2(mr.strong.avg_when_selected);
        }
        if (spec.n_weak > 0) {
            out << ',' << fmt2(mr.weak.p_selected) << ',' << fmt2(mr.weak.avg_when_selected);
        }
        if (spec.n_nuisance > 0) {
            out << ',' << fmt2(mr.nuisance.p_selected) << ','
                << fmt2(mr.nuisance.avg_when_selected);
        }
        out << ',' << mr.failures << '\n';
    }
    return out.str();
}

StudySpec builtin_study(std::string_view name) {
    StudySpec spec;
    spec.observations_per_class = 500;
    spec.replications = 1000;
    spec.methods = {"CSSLR1a", "CSSLR1b", "CSSLR2a", "CSSLR2b", "AIC", "Coeff"};
    if (name == "table3") {
        spec.n_strong = 3; spec.n_weak = 3; spec.n_nuisance = 14;
        spec.mu_strong = 1.0; spec.mu_weak = 0.5;
    } else if (name == "table4") {
        spec.n_strong = 3; spec.n_weak = 3; spec.n_nuisance = 14;
        spec.mu_strong = 0.3; spec.mu_weak = 0.15;
    } else if (name == "table5") {
        spec.n_weak = 3; spec.n_nuisance = 17;
        spec.mu_weak = 0.15;
    } else if (name == "table6") {
        spec.n_nuisance = 20;
    } else {
        throw ValidationError("unknown study '" + std::string(name) +
                              "' (valid: table3, table4, table5, table6)");
    }
    return spec;
}

bool is_builtin_study(std::string_view name) {
    return name == "table3" || name == "table4" || name == "table5" || name == "table6";
}

}  // namespace csslr
