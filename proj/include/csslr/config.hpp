#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace csslr {

enum class DecisionMode { AucOrMse, AucAndMse };

// Thresholds controlling the selection engine. Suffixes: _I improvement,
// _T trimming, _E equivalence.
struct SelectionConfig {
    double p_lr_I = 0.05;
    double p_calib = 0.50;
    double p_auc_I = 0.05;
    double p_mse_I = 0.05;
    double p_lr_T = 0.05;
    double p_auc_T = 0.025;
    double p_mse_T = 0.025;
    double p_auc_E = 0.05;
    double p_mse_E = 0.05;
    double v_crit = 5.0;
    DecisionMode decision_mode = DecisionMode::AucOrMse;
    int max_steps = 20;
    int max_models_per_step = 20;
    double fit_tolerance = 1e-8;
    int fit_max_iterations = 50;

    void validate() const;
};

// Flat key=value file, keys identical to the field names above; '#' comments.
SelectionConfig parse_config(std::istream& in);
SelectionConfig parse_config(const std::filesystem::path& path);

// Built-in parameter profiles CSSLR1a, CSSLR1b, CSSLR2a, CSSLR2b.
SelectionConfig csslr_profile(std::string_view name);
bool is_csslr_profile(std::string_view name);

// Canonical key=value serialization (stable ordering); inverse of parse_config.
std::string serialize_config(const SelectionConfig& config);

std::uint64_t config_hash(const SelectionConfig& config);

}  // namespace csslr
