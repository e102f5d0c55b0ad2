#pragma once

#include <string>
#include <vector>

#include "vtorus/kernel.hpp"

namespace vtorus {

struct UniquenessOptions {
  int d = 1;  ///< lattice dimension; |n|^2 ranges over sums of d squares
  /// Use the closed-form 1/b~ for builtins; false forces quadrature.
  bool closed_form = true;
  LaplaceOptions laplace{};
  unsigned threads = 0;
};

struct UniquenessViolation {
  int k = 0;
  long n_abs2 = 0;
  double distance = 0.0;
};

struct UniquenessReport {
  std::string kernel_id;
  int d = 1;
  int k_max = 0;
  int n_max = 0;
  double tol = 0.0;
  std::vector<long> n_abs2_values;  ///< achievable |n|^2 with |n|_inf <= n_max
  double min_distance = 0.0;        ///< min over the window of |1/b~(ik) + |n|^2|
  int argmin_k = 0;
  long argmin_n_abs2 = 0;
  std::vector<UniquenessViolation> violations;
  /// Verdict over the scanned window only.
  bool holds = false;
  bool closed_form = false;
  /// Closed forms only: |Im 1/b~(ik)| -> inf, so no violation exists past the window.
  bool asymptotically_clear = false;
  std::string asymptotic_note;
  /// k where the transform could not be evaluated (reported, not scanned).
  std::vector<int> unresolved_k;
  std::vector<std::string> unresolved_reason;
};

/// Sorted distinct values of |n|^2 over the cube |n|_inf <= n_max in Z^d.
std::vector<long> achievable_norms(int d, int n_max);

/// Scans k in [-k_max, k_max] and achievable |n|^2 for 1/b~(ik) = -|n|^2.
/// For One and Linear the k = 0 value is the limit 1/b~(0) = 0.
UniquenessReport check_uniqueness_condition(const Kernel& kernel, int k_max, int n_max, double tol,
                                            const UniquenessOptions& opts = {});

}  // namespace vtorus
