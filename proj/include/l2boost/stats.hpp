#pragma once

namespace l2boost {

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile; requires 0 < p < 1.
double normal_quantile(double p);

// Two-sided p-value for a standard-normal test statistic.
double two_sided_p_value(double z);

}  // namespace l2boost
