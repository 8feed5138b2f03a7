#pragma once

#include <span>

#include "csslr/glm.hpp"

namespace csslr {

// Mann-Whitney AUC with ties counted one half. Scores are oriented so a
// larger score means more likely bad (label 1).
double auc(std::span<const double> scores, std::span<const int> labels);

// Mean squared error between predicted probabilities and outcomes (Brier score).
double brier(std::span<const double> probs, std::span<const int> labels);

// Paired DeLong test on the AUC difference of two score vectors evaluated on
// the same observations. direction = FirstBetter iff AUC_a > AUC_b.
TestResult delong_test(std::span<const double> probs_a, std::span<const double> probs_b,
                       std::span<const int> labels);

// Z-test of the Brier score against its expected value under perfect
// calibration.
TestResult spiegelhalter_test(std::span<const double> probs, std::span<const int> labels);

// Paired test on the Brier score difference of two probability vectors.
// direction = FirstBetter iff MSE_a < MSE_b.
TestResult redelmeier_test(std::span<const double> probs_a, std::span<const double> probs_b,
                           std::span<const int> labels);

}  // namespace csslr
