#pragma once

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace csslr {

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

// two-sided p-value of a standard normal statistic
inline double normal_two_sided_p(double z) {
    return std::erfc(std::fabs(z) * 0.7071067811865475244);
}

// upper tail of the chi-square distribution with df degrees of freedom
inline double chi_squared_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace csslr
