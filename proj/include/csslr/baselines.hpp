#pragma once

#include "csslr/config.hpp"
#include "csslr/dataset.hpp"
#include "csslr/glm.hpp"

namespace csslr {

// Both-direction stepwise selection minimizing AIC: starting from the
// constant model, repeatedly apply the single add or drop move with the
// lowest resulting AIC until no move reduces it.
FittedModel select_aic(const Dataset& data, int max_steps = 100);

// Forward selection on Wald coefficient p-values (add smallest p below
// alpha), purging included variables whose p-value rises to alpha or above
// after each addition.
FittedModel select_pvalue(const Dataset& data, double alpha = 0.05, int max_steps = 100);

}  // namespace csslr
