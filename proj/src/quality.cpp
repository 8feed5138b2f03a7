#include "csslr/quality.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "csslr/errors.hpp"
#include "csslr/stats.hpp"

namespace csslr {

namespace {

void check_labels(std::span<const int> labels) {
    bool any0 = false, any1 = false;
    for (int v : labels) {
        if (v == 0) any0 = true;
        else any1 = true;
    }
    if (!any0 || !any1) throw ValidationError("single-class labels");
}

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b) throw ValidationError("length mismatch");
}

struct Placements {
    double auc = 0.0;
    std::vector<double> bad;   // placement of each bad among the goods
    std::vector<double> good;  // placement of each good among the bads
};

// Midrank placement components of the Mann-Whitney AUC; mean of either
// component vector equals the AUC.
Placements placements(std::span<const double> scores, std::span<const int> labels) {
    std::vector<double> goods, bads;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        (labels[i] ? bads : goods).push_back(scores[i]);
    }
    std::vector<double> goods_sorted = goods, bads_sorted = bads;
    std::sort(goods_sorted.begin(), goods_sorted.end());
    std::sort(bads_sorted.begin(), bads_sorted.end());
    const double n0 = static_cast<double>(goods.size());
    const double n1 = static_cast<double>(bads.size());

    Placements p;
    p.bad.reserve(bads.size());
    p.good.reserve(goods.size());
    double sum = 0.0;
    for (double s : bads) {
        auto lo = std::lower_bound(goods_sorted.begin(), goods_sorted.end(), s);
        auto hi = std::upper_bound(lo, goods_sorted.end(), s);
        double below = static_cast<double>(lo - goods_sorted.begin());
        double ties = static_cast<double>(hi - lo);
        double v = (below + 0.5 * ties) / n0;
        p.bad.push_back(v);
        sum += v;
    }
    p.auc = sum / n1;
    for (double s : goods) {
        auto lo = std::lower_bound(bads_sorted.begin(), bads_sorted.end(), s);
        auto hi = std::upper_bound(lo, bads_sorted.end(), s);
        double above = static_cast<double>(bads_sorted.end() - hi);
        double ties = static_cast<double>(hi - lo);
        p.good.push_back((above + 0.5 * ties) / n1);
    }
    return p;
}

double covariance(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
    return s / static_cast<double>(n - 1);
}

}  // namespace

double auc(std::span<const double> scores, std::span<const int> labels) {
    check_lengths(scores.size(), labels.size());
    check_labels(labels);
    return placements(scores, labels).auc;
}

double brier(std::span<const double> probs, std::span<const int> labels) {
    check_lengths(probs.size(), labels.size());
    double s = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double d = probs[i] - static_cast<double>(labels[i]);
        s += d * d;
    }
    return s / static_cast<double>(probs.size());
}

TestResult delong_test(std::span<const double> probs_a, std::span<const double> probs_b,
                       std::span<const int> labels) {
    check_lengths(probs_a.size(), labels.size());
    check_lengths(probs_b.size(), labels.size());
    check_labels(labels);

    Placements pa = placements(probs_a, labels);
    Placements pb = placements(probs_b, labels);
    const double n1 = static_cast<double>(pa.bad.size());
    const double n0 = static_cast<double>(pa.good.size());

    double s10 = covariance(pa.bad, pa.bad) + covariance(pb.bad, pb.bad) -
                 2.0 * covariance(pa.bad, pb.bad);
    double s01 = covariance(pa.good, pa.good) + covariance(pb.good, pb.good) -
                 2.0 * covariance(pa.good, pb.good);
    double var_diff = s10 / n1 + s01 / n0;

    TestResult r;
    if (var_diff < 1e-14) {
        r.degenerate = true;
        return r;
    }
    r.statistic = (pa.auc - pb.auc) / std::sqrt(var_diff);
    r.p_value = normal_two_sided_p(r.statistic);
    if (pa.auc > pb.auc) r.direction = Direction::FirstBetter;
    else if (pa.auc < pb.auc) r.direction = Direction::SecondBetter;
    return r;
}

TestResult spiegelhalter_test(std::span<const double> probs, std::span<const int> labels) {
    check_lengths(probs.size(), labels.size());
    double num = 0.0, den2 = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double p = probs[i];
        double one_minus_2p = 1.0 - 2.0 * p;
        num += (static_cast<double>(labels[i]) - p) * one_minus_2p;
        den2 += one_minus_2p * one_minus_2p * p * (1.0 - p);
    }
    TestResult r;
    double den = std::sqrt(den2);
    if (den < 1e-12) {
        r.degenerate = true;
        return r;
    }
    r.statistic = num / den;
    r.p_value = normal_two_sided_p(r.statistic);
    return r;
}

TestResult redelmeier_test(std::span<const double> probs_a, std::span<const double> probs_b,
                           std::span<const int> labels) {
    check_lengths(probs_a.size(), labels.size());
    check_lengths(probs_b.size(), labels.size());
    double num = 0.0, den2 = 0.0, mse_diff = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        double pa = probs_a[i], pb = probs_b[i];
        double y = static_cast<double>(labels[i]);
        double d = (pa - pb) * (pa + pb - 2.0 * y);
        num += d;
        mse_diff += d;
        // null: E[I_i] = pooled probability (pa + pb) / 2
        double pooled = 0.5 * (pa + pb);
        den2 += 4.0 * (pa - pb) * (pa - pb) * pooled * (1.0 - pooled);
    }
    TestResult r;
    double den = std::sqrt(den2);
    if (den < 1e-12) {
        r.degenerate = true;
        return r;
    }
    r.statistic = num / den;
    r.p_value = normal_two_sided_p(r.statistic);
    if (mse_diff < 0.0) r.direction = Direction::FirstBetter;
    else if (mse_diff > 0.0) r.direction = Direction::SecondBetter;
    return r;
}

}  // namespace csslr
