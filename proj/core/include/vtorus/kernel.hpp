#pragma once

#include <complex>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vtorus {

enum class KernelKind { One, Linear, Exp, TExp, Tabulated, Evaluable };

std::string_view to_string(KernelKind kind);

using LaplaceFn = std::function<std::complex<double>(std::complex<double>)>;

/// Memory kernel b on [0, inf).
///
/// Builtins carry closed-form Laplace transforms and resolvents:
///   One   b(t) = 1        1/lambda
///   Linear b(t) = t       1/lambda^2
///   Exp   b(t) = e^-t     1/(1+lambda)
///   TExp  b(t) = t e^-t   1/(1+lambda)^2
/// Tabulated kernels interpolate linearly between uniform samples and refuse
/// to extrapolate past the last sample.
class Kernel {
 public:
  static Kernel one();
  static Kernel linear();
  static Kernel exp();
  static Kernel texp();
  /// Builtin by name: "one", "linear", "exp", "texp".
  static Kernel builtin(std::string_view name);

  static Kernel tabulated(std::vector<double> samples, double step, bool integrable,
                          std::string id = "tabulated");
  static Kernel evaluable(std::function<double(double)> fn, bool integrable,
                          std::string id = "evaluable",
                          std::optional<LaplaceFn> laplace = std::nullopt);

  KernelKind kind() const noexcept { return kind_; }
  bool is_builtin() const noexcept;
  bool integrable() const noexcept { return integrable_; }
  bool has_analytic_laplace() const noexcept;
  const std::string& id() const noexcept { return id_; }

  /// Largest t at which the kernel may be evaluated (infinite except Tabulated).
  double horizon() const noexcept;
  double at_zero() const { return (*this)(0.0); }

  double operator()(double t) const;

  /// Tabulated step and samples; empty for other kinds.
  double table_step() const noexcept { return step_; }
  const std::vector<double>& table() const noexcept { return samples_; }

  const std::optional<LaplaceFn>& user_laplace() const noexcept { return laplace_; }

 private:
  Kernel(KernelKind kind, bool integrable, std::string id);

  KernelKind kind_;
  bool integrable_;
  std::string id_;
  std::vector<double> samples_;
  double step_ = 0.0;
  std::function<double(double)> fn_;
  std::optional<LaplaceFn> laplace_;
};

double eval_kernel(const Kernel& kernel, double t);

struct LaplaceValue {
  std::complex<double> value;
  double error = 0.0;         ///< quadrature error estimate; 0 for closed forms
  bool closed_form = false;
};

struct LaplaceOptions {
  double rel_tol = 1e-13;
  double tail_tol = 1e-14;
  double max_horizon = 1e4;
};

/// Laplace transform of b at lambda; closed form when available.
/// Throws AssumptionViolation where the transform diverges.
LaplaceValue laplace_transform(const Kernel& kernel, std::complex<double> lambda,
                               const LaplaceOptions& opts = {});

/// Quadrature route only, ignores any closed form. Used as a cross-check.
LaplaceValue laplace_transform_numeric(const Kernel& kernel, std::complex<double> lambda,
                                       const LaplaceOptions& opts = {});

/// 1/b~(lambda) in closed form for builtins. Defined at lambda = 0 for One and
/// Linear through the limit (lambda and lambda^2). Throws for other kinds.
std::complex<double> reciprocal_laplace_closed_form(const Kernel& kernel,
                                                    std::complex<double> lambda);

/// Exact resolvent r(t, mu) for builtins and real mu.
/// For Linear/TExp the sinh(sqrt(mu) t)/sqrt(mu) factor becomes
/// sin(sqrt(-mu) t)/sqrt(-mu) for mu < 0 and t at mu = 0.
double resolvent_closed_form(const Kernel& kernel, double mu, double t);

/// Two-column CSV (t, b) with a header row; t must start at 0 and be
/// strictly increasing with uniform spacing.
Kernel load_kernel_csv(const std::filesystem::path& path, bool integrable);

}  // namespace vtorus
