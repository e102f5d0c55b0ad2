#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtorus/index_set.hpp"
#include "vtorus/trend.hpp"

namespace vtorus {

enum class SpectrumForm { Parametric, White, Tabulated };

std::string_view to_string(SpectrumForm f);

/// Fourier coefficients gamma_n of a spatial covariance on the d-torus.
///
/// Parametric: gamma_n = c (1+|n|^2)^-beta. White: gamma_n = c.
/// Tabulated: explicit entries with |n|_inf <= n_max; missing entries are 0.
class CovarianceSpectrum {
 public:
  static CovarianceSpectrum parametric(int d, double c, double beta);
  static CovarianceSpectrum white(int d, double c);
  static CovarianceSpectrum tabulated(int d, std::map<std::vector<int>, double> entries);

  int d() const noexcept { return d_; }
  SpectrumForm form() const noexcept { return form_; }
  double c() const noexcept { return c_; }
  double beta() const noexcept { return beta_; }
  /// Largest |n|_inf among the tabulated entries (0 otherwise).
  int n_max() const noexcept { return n_max_; }
  const std::map<std::vector<int>, double>& table() const noexcept { return table_; }

  /// gamma_n depends on |n|^2 only (parametric and white forms).
  bool radial() const noexcept { return form_ != SpectrumForm::Tabulated; }
  double gamma_radial(long n_abs2) const;
  double gamma(std::span<const int> n) const;
  /// Short label for reports, e.g. "parametric(c=1,beta=1)".
  std::string describe() const;

 private:
  CovarianceSpectrum() = default;

  int d_ = 1;
  SpectrumForm form_ = SpectrumForm::White;
  double c_ = 1.0;
  double beta_ = 0.0;
  int n_max_ = 0;
  std::map<std::vector<int>, double> table_;
};

/// Rows n_1..n_d, gamma with a header; d is the column count minus one.
CovarianceSpectrum load_spectrum_csv(const std::filesystem::path& path);

struct SpectrumViolation {
  std::string kind;  ///< "negativity", "symmetry", "slow-increase"
  std::vector<int> n;
  double value = 0.0;
  std::string message;
};

struct SpectrumValidation {
  bool valid = true;
  std::vector<SpectrumViolation> violations;
  /// r with sum gamma_n/(1+|n|^r) finite.
  std::optional<double> witness_r;
  std::string witness_method;
};

SpectrumValidation validate_spectrum(const CovarianceSpectrum& spec);

struct RegularitySums {
  double alpha = 0.0;
  std::vector<int> truncations;
  std::vector<double> partial_sums;
  IncrementTrend trend;
};

/// S_N = sum_{|n|_inf <= N} gamma_n (1+|n|^2)^alpha for each truncation N,
/// classified by the dyadic increment test. Truncations must increase and
/// cover at least three dyadic levels.
RegularitySums regularity_partial_sums(const CovarianceSpectrum& spec, double alpha,
                                       const std::vector<int>& truncations,
                                       const TrendOptions& opts = {});

/// 2 (beta - alpha) > d.
bool parametric_regularity_decision(int d, double alpha, double beta);

/// (xi_0^2 + 2 sum (1+|n|^2)^alpha (xi1_n^2 + xi2_n^2))^{1/2} over the members
/// of `set`. Throws InvalidArgument on a size mismatch.
double sobolev_norm(const IndexSet& set, double xi0, std::span<const double> xi1,
                    std::span<const double> xi2, double alpha);

/// N = 1, 2, 4, ..., 2^levels.
std::vector<int> dyadic_truncations(int levels);

}  // namespace vtorus
