#include "hdc/stats.hpp"

#include <algorithm>
#include <span>

#include "hdc/error.hpp"

namespace hdc {

namespace {

double sorted_median(std::span<const double> s) {
  const std::size_t n = s.size();
  return n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

}  // namespace

double median(std::vector<double> samples) {
  if (samples.empty()) throw InvalidArgument("median of an empty sample");
  std::sort(samples.begin(), samples.end());
  return sorted_median(samples);
}

BoxStats box_stats(std::vector<double> samples) {
  if (samples.empty()) throw InvalidArgument("box statistics of an empty sample");
  std::sort(samples.begin(), samples.end());
  const std::span<const double> s(samples);
  const std::size_t n = s.size();
  const std::size_t half = (n + 1) / 2;

  BoxStats b;
  b.count = n;
  b.median = sorted_median(s);
  b.q1 = sorted_median(s.first(half));
  b.q3 = sorted_median(s.last(half));
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.lo_whisker = *std::lower_bound(s.begin(), s.end(), lo_fence);
  b.hi_whisker = *std::prev(std::upper_bound(s.begin(), s.end(), hi_fence));
  return b;
}

}  // namespace hdc
