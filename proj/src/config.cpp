#include "csslr/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "csslr/errors.hpp"

namespace csslr {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError("value out of range: " + msg);
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ValidationError("unparsable value '" + value + "' for key '" + key + "'");
    }
    return x;
}

int to_int(const std::string& key, const std::string& value) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ValidationError("unparsable value '" + value + "' for key '" + key + "'");
    }
    return x;
}

}  // namespace

void SelectionConfig::validate() const {
    auto prob = [](double p) { return p > 0.0 && p < 1.0; };
    require(prob(p_lr_I), "p_lr_I");
    require(prob(p_calib), "p_calib");
    require(prob(p_auc_I), "p_auc_I");
    require(prob(p_mse_I), "p_mse_I");
    require(prob(p_lr_T), "p_lr_T");
    require(prob(p_auc_T), "p_auc_T");
    require(prob(p_mse_T), "p_mse_T");
    require(prob(p_auc_E), "p_auc_E");
    require(prob(p_mse_E), "p_mse_E");
    require(v_crit > 1.0, "v_crit must exceed 1");
    require(max_steps >= 1, "max_steps");
    require(max_models_per_step >= 1, "max_models_per_step");
    require(fit_tolerance > 0.0, "fit_tolerance");
    require(fit_max_iterations >= 1, "fit_max_iterations");
}

SelectionConfig parse_config(std::istream& in) {
    SelectionConfig c;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("unparsable config line " + std::to_string(row));
        }
        std::string key = strip(s.substr(0, eq));
        std::string value = strip(s.substr(eq + 1));
        if (key == "p_lr_I") c.p_lr_I = to_double(key, value);
        else if (key == "p_calib") c.p_calib = to_double(key, value);
        else if (key == "p_auc_I") c.p_auc_I = to_double(key, value);
        else if (key == "p_mse_I") c.p_mse_I = to_double(key, value);
        else if (key == "p_lr_T") c.p_lr_T = to_double(key, value);
        else if (key == "p_auc_T") c.p_auc_T = to_double(key, value);
        else if (key == "p_mse_T") c.p_mse_T = to_double(key, value);
        else if (key == "p_auc_E") c.p_auc_E = to_double(key, value);
        else if (key == "p_mse_E") c.p_mse_E = to_double(key, value);
        else if (key == "v_crit") c.v_crit = to_double(key, value);
        else if (key == "fit_tolerance") c.fit_tolerance = to_double(key, value);
        else if (key == "max_steps") c.max_steps = to_int(key, value);
        else if (key == "max_models_per_step") c.max_models_per_step = to_int(key, value);
        else if (key == "fit_max_iterations") c.fit_max_iterations = to_int(key, value);
        else if (key == "decision_mode") {
            if (value == "AucOrMse") c.decision_mode = DecisionMode::AucOrMse;
            else if (value == "AucAndMse") c.decision_mode = DecisionMode::AucAndMse;
            else throw ValidationError("unknown decision_mode '" + value + "'");
        } else {
            throw ValidationError("unknown key '" + key + "'");
        }
    }
    c.validate();
    return c;
}

SelectionConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    return parse_config(in);
}

SelectionConfig csslr_profile(std::string_view name) {
    SelectionConfig c;  // defaults already match CSSLR1a
    if (name == "CSSLR1a") {
        c.decision_mode = DecisionMode::AucOrMse;
    } else if (name == "CSSLR1b") {
        c.decision_mode = DecisionMode::AucAndMse;
    } else if (name == "CSSLR2a" || name == "CSSLR2b") {
        c.p_calib = 0.10;
        c.p_auc_I = c.p_mse_I = 0.10;
        c.p_auc_E = c.p_mse_E = 0.10;
        c.decision_mode =
            name == "CSSLR2a" ? DecisionMode::AucOrMse : DecisionMode::AucAndMse;
    } else {
        throw ValidationError("unknown CSSLR profile '" + std::string(name) + "'");
    }
    return c;
}

bool is_csslr_profile(std::string_view name) {
    return name == "CSSLR1a" || name == "CSSLR1b" || name == "CSSLR2a" || name == "CSSLR2b";
}

std::string serialize_config(const SelectionConfig& c) {
    std::ostringstream out;
    char buf[40];
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << key << " = " << buf << '\n';
    };
    put("p_lr_I", c.p_lr_I);
    put("p_calib", c.p_calib);
    put("p_auc_I", c.p_auc_I);
    put("p_mse_I", c.p_mse_I);
    put("p_lr_T", c.p_lr_T);
    put("p_auc_T", c.p_auc_T);
    put("p_mse_T", c.p_mse_T);
    put("p_auc_E", c.p_auc_E);
    put("p_mse_E", c.p_mse_E);
    put("v_crit", c.v_crit);
    out << "decision_mode = "
        << (c.decision_mode == DecisionMode::AucOrMse ? "AucOrMse" : "AucAndMse") << '\n';
    out << "max_steps = " << c.max_steps << '\n';
    out << "max_models_per_step = " << c.max_models_per_step << '\n';
    put("fit_tolerance", c.fit_tolerance);
    out << "fit_max_iterations = " << c.fit_max_iterations << '\n';
    return out.str();
}

std::uint64_t config_hash(const SelectionConfig& config) {
    // FNV-1a over the canonical serialization
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_config(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace csslr
