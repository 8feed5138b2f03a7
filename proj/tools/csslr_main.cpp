#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "csslr/baselines.hpp"
#include "csslr/errors.hpp"
#include "csslr/report.hpp"
#include "csslr/simulation.hpp"

namespace {

namespace fs = std::filesystem;

fs::path default_out_dir() {
    if (const char* env = std::getenv("CSSLR_OUT_DIR")) return fs::path(env);
    return fs::current_path();
}

int run_select(const std::string& data_path, const std::string& response,
               const std::string& config_path, const std::string& signs_path,
               const std::string& out_dir, const std::string& trace_format) {
    csslr::Dataset data = csslr::load_dataset(fs::path(data_path), response);
    csslr::SelectionConfig config = csslr::is_csslr_profile(config_path)
                                        ? csslr::csslr_profile(config_path)
                                        : csslr::parse_config(fs::path(config_path));
    csslr::SignExpectation signs;
    if (!signs_path.empty()) {
        signs = csslr::load_signs(fs::path(signs_path));
        signs.validate_against(data);
    }

    csslr::SelectionResult result;
    try {
        result = csslr::run_csslr(data, signs, config);
    } catch (const csslr::FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return 3;
    }

    fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
    fs::create_directories(dir);
    {
        std::ofstream report(dir / "report.txt");
        csslr::write_run_report(report, data, config, result);
    }
    {
        std::ofstream trace(dir / (trace_format == "structured" ? "trace.jsonl" : "trace.txt"));
        if (trace_format == "structured") csslr::write_trace_json(trace, result);
        else csslr::write_trace_text(trace, result);
    }

    std::cout << "Final models: " << result.final_models.size() << "\n";
    for (std::size_t i = 0; i < result.final_models.size(); ++i) {
        const csslr::FittedModel& m = result.final_models.models()[i];
        bool leader = std::find(result.leader_indices.begin(), result.leader_indices.end(),
                                i) != result.leader_indices.end();
        std::cout << "  " << (leader ? "* " : "  ");
        if (m.variable_names.empty()) std::cout << "(constant)";
        for (std::size_t j = 0; j < m.n_variables(); ++j) {
            std::cout << (j ? "+" : "") << m.variable_names[j];
        }
        std::cout << "  AUC=" << result.model_auc[i] << "  MSE=" << result.model_mse[i]
                  << "  AIC=" << m.aic << "\n";
    }
    std::cout << "Report written to " << (dir / "report.txt").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Comprehensive stepwise selection for logistic regression"};
    app.require_subcommand(1);

    // select
    auto* select = app.add_subcommand("select", "Run model selection on a CSV dataset");
    std::string data_path, response, config_path, signs_path, out_dir;
    std::string trace_format = "text";
    select->add_option("--data", data_path, "input CSV file")->required();
    select->add_option("--response", response, "name of the binary response column")
        ->required();
    select
        ->add_option("--config", config_path,
                     "config file or profile name (CSSLR1a/1b/2a/2b)")
        ->required();
    select->add_option("--signs", signs_path, "CSV of name,expected_sign");
    select->add_option("--out", out_dir, "output directory");
    select->add_option("--trace-format", trace_format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo selection study");
    std::string study, sim_out;
    csslr::StudySpec spec;
    int replications = 0, jobs = 0;
    std::uint64_t seed = 0;
    bool seed_set = false, reps_set = false;
    std::vector<std::string> methods;
    simulate->add_option("--study", study, "built-in study: table3, table4, table5, table6");
    simulate->add_option("--strong", spec.n_strong, "number of strong variables");
    simulate->add_option("--weak", spec.n_weak, "number of weak variables");
    simulate->add_option("--nuisance", spec.n_nuisance, "number of nuisance variables");
    simulate->add_option("--mu-strong", spec.mu_strong, "strong-class mean offset");
    simulate->add_option("--mu-weak", spec.mu_weak, "weak-class mean offset");
    simulate->add_option("--K", spec.observations_per_class, "observations per class");
    simulate->add_option("--replications", replications, "number of replications")
        ->each([&](const std::string&) { reps_set = true; });
    simulate->add_option("--seed", seed, "study seed")
        ->each([&](const std::string&) { seed_set = true; });
    simulate->add_option("--methods", methods, "methods to run")->delimiter(',');
    simulate->add_option("--out", sim_out, "CSV output file");
    simulate->add_option("--jobs", jobs, "worker threads (default: hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (select->parsed()) {
            return run_select(data_path, response, config_path, signs_path, out_dir,
                              trace_format);
        }

        if (!study.empty()) spec = csslr::builtin_study(study);
        if (reps_set) spec.replications = replications;
        if (seed_set) spec.seed = seed;
        if (!methods.empty()) spec.methods = methods;
        spec.validate();
        if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
        if (jobs <= 0) jobs = 1;

        std::map<std::string, csslr::SelectionConfig> configs;
        for (const std::string& m : spec.methods) {
            if (csslr::is_csslr_profile(m)) configs[m] = csslr::csslr_profile(m);
        }
        csslr::StudyResult result = csslr::run_study(spec, configs, jobs);
        std::cout << csslr::render_table(spec, result);
        if (!sim_out.empty()) {
            std::ofstream out(sim_out);
            if (!out) throw csslr::ValidationError("cannot write '" + sim_out + "'");
            out << csslr::render_csv(spec, result);
        }
        return 0;
    } catch (const csslr::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const csslr::FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
