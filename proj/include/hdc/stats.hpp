#pragma once

#include <cstddef>
#include <vector>

namespace hdc {

/// Box-plot statistics with Tukey hinges: the lower and upper halves both
/// include the median when the sample count is odd. Whiskers are the most
/// extreme samples within 1.5 IQR of the hinges.
struct BoxStats {
  std::size_t count = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double lo_whisker = 0;
  double hi_whisker = 0;
};

/// Throws InvalidArgument on an empty sample.
BoxStats box_stats(std::vector<double> samples);

double median(std::vector<double> samples);

}  // namespace hdc
