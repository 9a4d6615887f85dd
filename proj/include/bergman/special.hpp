#pragma once

// Thin wrappers around <cmath> gamma routines. All moment closed forms are
// evaluated in log space first so large parameters (egg exponents near zero,
// high degree caps) cannot overflow intermediate Gamma values.

#include <cmath>
#include <stdexcept>

namespace bergman {

inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma: requires x > 0");
    return std::lgamma(x);
}

inline double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("log_beta: requires a, b > 0");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

}  // namespace bergman
