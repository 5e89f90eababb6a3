#include "l2boost/stats.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>

namespace l2boost {

namespace {
const boost::math::normal_distribution<double> kStdNormal(0.0, 1.0);
}

double normal_cdf(double x) { return boost::math::cdf(kStdNormal, x); }

double normal_quantile(double p) { return boost::math::quantile(kStdNormal, p); }

double two_sided_p_value(double z) {
  return 2.0 * boost::math::cdf(kStdNormal, -std::abs(z));
}

}  // namespace l2boost
