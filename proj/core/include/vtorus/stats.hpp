#pragma once

#include <span>
#include <vector>

namespace vtorus {

struct MeanSE {
  double mean = 0.0;
  double se = 0.0;  ///< sample standard deviation / sqrt(n)
};

/// Two-pass mean and standard error, summed in index order.
MeanSE mean_se(std::span<const double> x);

double sample_variance(std::span<const double> x);
double sample_covariance(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// distribution for the p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// P(K > x) for the Kolmogorov distribution.
double kolmogorov_survival(double x);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double r2 = 0.0;
  double residual_sd = 0.0;
  std::size_t n = 0;
  /// Two-sided 95% band on the slope from Student's t with n-2 dof.
  double band_lo = 0.0;
  double band_hi = 0.0;
};

/// Ordinary least squares y = a + b x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Two-sided Student t quantile for the given confidence (e.g. 0.95).
double student_t_quantile(double confidence, double dof);

}  // namespace vtorus
