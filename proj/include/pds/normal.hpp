#pragma once

namespace pds {

/// Standard normal CDF via erfc; absolute error well below 1e-15.
double normal_cdf(double x);

/// Upper-tail probability 1 - Phi(x), accurate in the far tail.
double normal_sf(double x);

/// Inverse of normal_cdf for p in (0, 1) (Wichura's AS241, ~1e-16 relative).
/// Returns -inf / +inf at 0 / 1; throws InputError outside [0, 1].
double normal_quantile(double p);

/// Two-sided critical value z with 1 - Phi(z) = alpha / 2.
double two_sided_critical(double alpha);

}  // namespace pds
