#include "csslr/glm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>

#include "csslr/errors.hpp"
#include "csslr/stats.hpp"

namespace csslr {

namespace {

constexpr double kProbClamp = 1e-12;

double clamp_prob(double p) {
    return std::min(1.0 - kProbClamp, std::max(kProbClamp, p));
}

double bernoulli_loglik(const std::vector<int>& y, const std::vector<double>& probs) {
    double ll = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double p = clamp_prob(probs[i]);
        ll += y[i] ? std::log(p) : std::log1p(-p);
    }
    return ll;
}

}  // namespace

bool FittedModel::contains(const std::string& name) const {
    return std::find(variable_names.begin(), variable_names.end(), name) !=
           variable_names.end();
}

double FittedModel::coefficient_of(const std::string& name) const {
    for (std::size_t j = 0; j < variable_names.size(); ++j) {
        if (variable_names[j] == name) return coefficients[j];
    }
    throw ValidationError("model does not contain variable '" + name + "'");
}

FittedModel fit_logistic(const Dataset& data, const std::vector<std::string>& variables,
                         const SelectionConfig& config) {
    const std::size_t n = data.n_obs();
    const std::size_t m = variables.size();
    const std::vector<int>& y = data.response();

    {
        std::set<std::string> distinct(variables.begin(), variables.end());
        if (distinct.size() != m) throw ValidationError("duplicate variable in model");
    }

    FittedModel model;
    model.variable_names = variables;

    if (m == 0) {
        // constant model: closed form, pi_i = sample bad rate
        double bad = 0.0;
        for (int v : y) bad += v;
        double rate = bad / static_cast<double>(n);
        model.intercept = std::log(rate / (1.0 - rate));
        model.fitted_probs.assign(n, rate);
        model.log_likelihood = bernoulli_loglik(y, model.fitted_probs);
        model.aic = 2.0 - 2.0 * model.log_likelihood;
        model.coef_std_errors = {1.0 / std::sqrt(n * rate * (1.0 - rate))};
        model.converged = true;
        return model;
    }

    Eigen::MatrixXd X(n, m + 1);
    for (std::size_t i = 0; i < n; ++i) X(i, 0) = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::vector<double>& col = data.variable(variables[j]).values;
        for (std::size_t i = 0; i < n; ++i) X(i, j + 1) = col[i];
    }
    Eigen::VectorXd yv(n);
    for (std::size_t i = 0; i < n; ++i) yv(i) = static_cast<double>(y[i]);

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m + 1);
    Eigen::VectorXd pi(n), w(n);
    Eigen::MatrixXd info(m + 1, m + 1);
    bool converged = false;

    for (int iter = 0; iter < config.fit_max_iterations; ++iter) {
        Eigen::VectorXd eta = X * beta;
        for (std::size_t i = 0; i < n; ++i) {
            double p = 1.0 / (1.0 + std::exp(-eta(i)));
            p = clamp_prob(p);
            pi(i) = p;
            w(i) = p * (1.0 - p);
        }
        info.noalias() = X.transpose() * w.asDiagonal() * X;
        Eigen::VectorXd score = X.transpose() * (yv - pi);

        Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
        if (!lu.isInvertible()) {
            // at beta = 0 the weights are uniform, so a singular system means
            // collinear predictors; later on it indicates separation
            if (iter == 0) throw FitError("singular matrix");
            break;
        }
        Eigen::VectorXd delta = lu.solve(score);
        beta += delta;
        if (delta.cwiseAbs().maxCoeff() < config.fit_tolerance) {
            converged = true;
            break;
        }
    }

    Eigen::VectorXd eta = X * beta;
    model.fitted_probs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        model.fitted_probs[i] = clamp_prob(1.0 / (1.0 + std::exp(-eta(i))));
    }
    model.intercept = beta(0);
    model.coefficients.assign(beta.data() + 1, beta.data() + m + 1);
    model.log_likelihood = bernoulli_loglik(y, model.fitted_probs);
    model.aic = 2.0 * static_cast<double>(m + 1) - 2.0 * model.log_likelihood;
    model.converged = converged;

    for (std::size_t i = 0; i < n; ++i) {
        w(i) = model.fitted_probs[i] * (1.0 - model.fitted_probs[i]);
    }
    info.noalias() = X.transpose() * w.asDiagonal() * X;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
    model.coef_std_errors.resize(m + 1);
    if (lu.isInvertible()) {
        Eigen::MatrixXd cov = lu.inverse();
        for (std::size_t j = 0; j <= m; ++j) {
            double v = cov(j, j);
            model.coef_std_errors[j] = v > 0.0 ? std::sqrt(v) : std::numeric_limits<double>::quiet_NaN();
        }
    } else {
        std::fill(model.coef_std_errors.begin(), model.coef_std_errors.end(),
                  std::numeric_limits<double>::quiet_NaN());
    }
    return model;
}

TestResult lr_test(const FittedModel& nested, const FittedModel& full) {
    for (const std::string& name : nested.variable_names) {
        if (!full.contains(name)) throw ValidationError("models are not nested");
    }
    std::ptrdiff_t df = static_cast<std::ptrdiff_t>(full.n_variables()) -
                        static_cast<std::ptrdiff_t>(nested.n_variables());
    if (df <= 0) throw ValidationError("likelihood-ratio test needs positive df");

    TestResult r;
    r.statistic = std::max(0.0, 2.0 * (full.log_likelihood - nested.log_likelihood));
    r.p_value = chi_squared_sf(r.statistic, static_cast<double>(df));
    r.direction = r.statistic > 0.0 ? Direction::SecondBetter : Direction::None;
    return r;
}

std::map<std::string, double> wald_pvalues(const FittedModel& model) {
    std::map<std::string, double> out;
    for (std::size_t j = 0; j < model.n_variables(); ++j) {
        double se = model.coef_std_errors[j + 1];
        if (!(se > 0.0) || !std::isfinite(se)) {
            throw FitError("invalid standard error for '" + model.variable_names[j] + "'");
        }
        out[model.variable_names[j]] = normal_two_sided_p(model.coefficients[j] / se);
    }
    return out;
}

std::map<std::string, double> vif(const Dataset& data,
                                  const std::vector<std::string>& variables) {
    const std::size_t m = variables.size();
    const std::size_t n = data.n_obs();
    std::map<std::string, double> out;
    if (m <= 1) {
        for (const auto& name : variables) out[name] = 1.0;
        return out;
    }

    Eigen::MatrixXd Z(n, m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::vector<double>& col = data.variable(variables[j]).values;
        double mean = 0.0;
        for (double x : col) mean += x;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Z(i, j) = col[i] - mean;
            ss += Z(i, j) * Z(i, j);
        }
        if (ss <= 0.0) throw ValidationError("zero-variance variable '" + variables[j] + "'");
        Z.col(j) /= std::sqrt(ss);
    }

    // VIF_j = 1/(1 - R_j^2) from regressing column j on the others
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
        Eigen::MatrixXd others(n, m - 1);
        std::size_t k = 0;
        for (std::size_t l = 0; l < m; ++l) {
            if (l != j) others.col(k++) = Z.col(l);
        }
        Eigen::VectorXd resid = Z.col(j) - others * others.colPivHouseholderQr().solve(Z.col(j));
        double rss = resid.squaredNorm();  // total SS is 1 after normalization
        out[variables[j]] = rss < 1e-12 ? inf : std::min(1.0 / rss, inf);
    }
    for (auto& [name, v] : out) {
        (void)name;
        if (v < 1.0) v = std::max(v, 1.0 - 1e-10);
    }
    return out;
}

}  // namespace csslr
