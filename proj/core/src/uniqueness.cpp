#include "vtorus/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "parallel.hpp"
#include "vtorus/error.hpp"

namespace vtorus {

std::vector<long> achievable_norms(int d, int n_max) {
  if (d < 1) throw InvalidArgument("achievable_norms: d must be >= 1");
  if (n_max < 0) throw InvalidArgument("achievable_norms: n_max must be >= 0");
  const long top = static_cast<long>(d) * n_max * n_max;
  std::vector<char> reach(static_cast<std::size_t>(top) + 1, 0);
  reach[0] = 1;
  for (int dim = 0; dim < d; ++dim) {
    std::vector<char> next(reach.size(), 0);
    for (long m = 0; m <= top; ++m) {
      if (!reach[static_cast<std::size_t>(m)]) continue;
      for (long k = 0; k <= n_max && m + k * k <= top; ++k) next[static_cast<std::size_t>(m + k * k)] = 1;
    }
    reach.swap(next);
  }
  std::vector<long> out;
  for (long m = 0; m <= top; ++m) {
    if (reach[static_cast<std::size_t>(m)]) out.push_back(m);
  }
  return out;
}

UniquenessReport check_uniqueness_condition(const Kernel& kernel, int k_max, int n_max, double tol,
                                            const UniquenessOptions& opts) {
  if (k_max < 0) throw InvalidArgument("uniqueness: k_max must be >= 0");
  if (!(tol >= 0.0)) throw InvalidArgument("uniqueness: tol must be >= 0");
  UniquenessReport rep;
  rep.kernel_id = kernel.id();
  rep.d = opts.d;
  rep.k_max = k_max;
  rep.n_max = n_max;
  rep.tol = tol;
  rep.n_abs2_values = achievable_norms(opts.d, n_max);
  rep.closed_form = opts.closed_form && kernel.is_builtin();

  const std::size_t nk = 2 * static_cast<std::size_t>(k_max) + 1;
  std::vector<std::complex<double>> z(nk);
  std::vector<std::string> failure(nk);
  detail::parallel_for(nk, opts.threads, [&](std::size_t i) {
    const int k = static_cast<int>(i) - k_max;
    const std::complex<double> lambda(0.0, static_cast<double>(k));
    try {
      if (rep.closed_form) {
        z[i] = reciprocal_laplace_closed_form(kernel, lambda);
      } else {
        const auto v = laplace_transform_numeric(kernel, lambda, opts.laplace).value;
        if (v == 0.0) throw NumericalFailure("transform vanishes");
        z[i] = 1.0 / v;
      }
    } catch (const Error& e) {
      failure[i] = e.what();
    }
  });

  rep.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nk; ++i) {
    const int k = static_cast<int>(i) - k_max;
    if (!failure[i].empty()) {
      rep.unresolved_k.push_back(k);
      rep.unresolved_reason.push_back(failure[i]);
      continue;
    }
    for (long m : rep.n_abs2_values) {
      const double dist = std::abs(z[i] + static_cast<double>(m));
      if (dist < rep.min_distance) {
        rep.min_distance = dist;
        rep.argmin_k = k;
        rep.argmin_n_abs2 = m;
      }
      if (dist < tol) rep.violations.push_back({k, m, dist});
    }
  }
  rep.holds = rep.violations.empty();

  if (rep.closed_form) {
    switch (kernel.kind()) {
      case KernelKind::One:
      case KernelKind::Exp:
        rep.asymptotically_clear = true;
        rep.asymptotic_note = "Im 1/b~(ik) = k, so |1/b~(ik)| -> inf off the real axis";
        break;
      case KernelKind::TExp:
        rep.asymptotically_clear = true;
        rep.asymptotic_note = "Im 1/b~(ik) = 2k, so |1/b~(ik)| -> inf off the real axis";
        break;
      case KernelKind::Linear:
        rep.asymptotic_note =
            "1/b~(ik) = -k^2 is real and negative; every k with k^2 = |n|^2 is a violation";
        break;
      default: break;
    }
  } else {
    rep.asymptotic_note = "numerical transform: no statement beyond the scanned window";
  }
  rep.asymptotic_note += "; analytic extension of b~ to a sector around the imaginary axis is assumed, not checked";
  return rep;
}

}  // namespace vtorus
