#pragma once

#include <cstddef>

namespace branchlens {

// Welford streaming mean / sample standard deviation (n - 1 denominator).
class RunningStats {
public:
  void add(double x);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  // 0 for fewer than two samples.
  double sample_stddev() const;

private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace branchlens
