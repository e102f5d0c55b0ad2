#include "vtorus/kernel.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "vtorus/error.hpp"
#include "vtorus/io.hpp"
#include "vtorus/quadrature.hpp"

namespace vtorus {

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::One: return "one";
    case KernelKind::Linear: return "linear";
    case KernelKind::Exp: return "exp";
    case KernelKind::TExp: return "texp";
    case KernelKind::Tabulated: return "tabulated";
    case KernelKind::Evaluable: return "evaluable";
  }
  return "unknown";
}

Kernel::Kernel(KernelKind kind, bool integrable, std::string id)
    : kind_(kind), integrable_(integrable), id_(std::move(id)) {}

Kernel Kernel::one() { return Kernel(KernelKind::One, false, "one"); }
Kernel Kernel::linear() { return Kernel(KernelKind::Linear, false, "linear"); }
Kernel Kernel::exp() { return Kernel(KernelKind::Exp, true, "exp"); }
Kernel Kernel::texp() { return Kernel(KernelKind::TExp, true, "texp"); }

Kernel Kernel::builtin(std::string_view name) {
  if (name == "one") return one();
  if (name == "linear") return linear();
  if (name == "exp") return exp();
  if (name == "texp") return texp();
  throw InvalidArgument("unknown builtin kernel '" + std::string(name) +
                        "' (expected one, linear, exp, texp)");
}

Kernel Kernel::tabulated(std::vector<double> samples, double step, bool integrable,
                         std::string id) {
  if (samples.size() < 2) throw InvalidArgument("tabulated kernel needs at least two samples");
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidArgument("tabulated kernel step must be positive");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw InvalidArgument("tabulated kernel has a non-finite sample");
  }
  Kernel k(KernelKind::Tabulated, integrable, std::move(id));
  k.samples_ = std::move(samples);
  k.step_ = step;
  return k;
}

Kernel Kernel::evaluable(std::function<double(double)> fn, bool integrable, std::string id,
                         std::optional<LaplaceFn> laplace) {
  if (!fn) throw InvalidArgument("evaluable kernel needs a callable");
  Kernel k(KernelKind::Evaluable, integrable, std::move(id));
  k.fn_ = std::move(fn);
  k.laplace_ = std::move(laplace);
  return k;
}

bool Kernel::is_builtin() const noexcept {
  return kind_ == KernelKind::One || kind_ == KernelKind::Linear || kind_ == KernelKind::Exp ||
         kind_ == KernelKind::TExp;
}

bool Kernel::has_analytic_laplace() const noexcept {
  return is_builtin() || laplace_.has_value();
}

double Kernel::horizon() const noexcept {
  if (kind_ == KernelKind::Tabulated) return step_ * static_cast<double>(samples_.size() - 1);
  return std::numeric_limits<double>::infinity();
}

double Kernel::operator()(double t) const {
  if (!(t >= 0.0)) {
    throw InvalidArgument("kernel evaluated at negative or NaN time");
  }
  switch (kind_) {
    case KernelKind::One: return 1.0;
    case KernelKind::Linear: return t;
    case KernelKind::Exp: return std::exp(-t);
    case KernelKind::TExp: return t * std::exp(-t);
    case KernelKind::Evaluable: return fn_(t);
    case KernelKind::Tabulated: {
      const double x = t / step_;
      const auto last = samples_.size() - 1;
      // a few ulps of slack so that j*dt grids hit the final sample
      if (x > static_cast<double>(last) * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "tabulated kernel '" << id_ << "' evaluated at t=" << t
            << " beyond its horizon " << horizon();
        throw InvalidArgument(msg.str());
      }
      const auto i = std::min(static_cast<std::size_t>(x), last);
      if (i == last) return samples_[last];
      const double w = x - static_cast<double>(i);
      return (1.0 - w) * samples_[i] + w * samples_[i + 1];
    }
  }
  return 0.0;
}

double eval_kernel(const Kernel& kernel, double t) { return kernel(t); }

namespace {

void require_convergent(const Kernel& k, std::complex<double> lambda) {
  const double re = lambda.real();
  switch (k.kind()) {
    case KernelKind::One:
    case KernelKind::Linear:
      if (!(re > 0.0)) {
        std::ostringstream msg;
        msg << "Laplace transform of b=" << k.id() << " diverges at lambda=" << lambda
            << " (requires Re lambda > 0)";
        throw AssumptionViolation(msg.str());
      }
      break;
    case KernelKind::Exp:
    case KernelKind::TExp:
      if (!(re > -1.0)) {
        std::ostringstream msg;
        msg << "Laplace transform of b=" << k.id() << " diverges at lambda=" << lambda
            << " (requires Re lambda > -1)";
        throw AssumptionViolation(msg.str());
      }
      break;
    case KernelKind::Tabulated:
      break;  // finite support: always a finite integral
    case KernelKind::Evaluable:
      if (re < 0.0 || (re == 0.0 && !k.integrable())) {
        std::ostringstream msg;
        msg << "Laplace transform of '" << k.id() << "' at lambda=" << lambda
            << " is not known to converge";
        throw AssumptionViolation(msg.str());
      }
      break;
  }
}

std::complex<double> closed_form_laplace(const Kernel& k, std::complex<double> lambda) {
  switch (k.kind()) {
    case KernelKind::One: return 1.0 / lambda;
    case KernelKind::Linear: return 1.0 / (lambda * lambda);
    case KernelKind::Exp: return 1.0 / (1.0 + lambda);
    case KernelKind::TExp: return 1.0 / ((1.0 + lambda) * (1.0 + lambda));
    case KernelKind::Evaluable: return (*k.user_laplace())(lambda);
    case KernelKind::Tabulated: break;
  }
  throw InvalidArgument("kernel has no closed-form Laplace transform");
}

double intrinsic_decay(const Kernel& k) {
  switch (k.kind()) {
    case KernelKind::Exp:
    case KernelKind::TExp: return 1.0;
    default: return 0.0;
  }
}

}  // namespace

LaplaceValue laplace_transform(const Kernel& kernel, std::complex<double> lambda,
                               const LaplaceOptions& opts) {
  require_convergent(kernel, lambda);
  if (kernel.has_analytic_laplace()) {
    return {closed_form_laplace(kernel, lambda), 0.0, true};
  }
  return laplace_transform_numeric(kernel, lambda, opts);
}

LaplaceValue laplace_transform_numeric(const Kernel& kernel, std::complex<double> lambda,
                                       const LaplaceOptions& opts) {
  require_convergent(kernel, lambda);
  const double re = lambda.real();
  const double im = lambda.imag();
  auto part = [&](bool imag_part) {
    return [&kernel, re, im, imag_part](double t) {
      const double env = std::exp(-re * t) * kernel(t);
      return imag_part ? -env * std::sin(im * t) : env * std::cos(im * t);
    };
  };

  LaplaceValue out;
  if (kernel.kind() == KernelKind::Tabulated) {
    const double h = kernel.horizon();
    QuadOptions q;
    q.rel_tol = opts.rel_tol;
    // linear interpolation has kinks at every sample; align panels with them
    q.panels = static_cast<int>(kernel.table().size() - 1);
    const auto a = integrate(part(false), 0.0, h, q);
    const auto b = integrate(part(true), 0.0, h, q);
    out.value = {a.value, b.value};
    out.error = a.error + b.error;
    return out;
  }

  const double decay = re + intrinsic_decay(kernel);
  TailOptions t;
  t.chunk = decay > 0.0 ? std::min(4.0 / decay, 8.0) : 1.0;
  t.panels_per_chunk = 1 + static_cast<int>(std::ceil(t.chunk * std::abs(im) / 3.0));
  t.tail_tol = opts.tail_tol;
  t.rel_tol = opts.rel_tol;
  t.max_horizon = opts.max_horizon;
  const auto a = integrate_to_infinity(part(false), t);
  const auto b = integrate_to_infinity(part(true), t);
  out.value = {a.value, b.value};
  out.error = a.error + b.error;
  return out;
}

std::complex<double> reciprocal_laplace_closed_form(const Kernel& kernel,
                                                    std::complex<double> lambda) {
  switch (kernel.kind()) {
    case KernelKind::One: return lambda;
    case KernelKind::Linear: return lambda * lambda;
    case KernelKind::Exp: return 1.0 + lambda;
    case KernelKind::TExp: return (1.0 + lambda) * (1.0 + lambda);
    default: break;
  }
  throw InvalidArgument("reciprocal Laplace transform in closed form needs a builtin kernel");
}

namespace {

// sinh(sqrt(mu) t)/sqrt(mu) continued to real mu of either sign.
double sinh_ratio(double mu, double t) {
  if (mu == 0.0) return t;
  if (mu < 0.0) {
    const double w = std::sqrt(-mu);
    return std::sin(w * t) / w;
  }
  const double w = std::sqrt(mu);
  return std::sinh(w * t) / w;
}

}  // namespace

double resolvent_closed_form(const Kernel& kernel, double mu, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("resolvent evaluated at negative time");
  switch (kernel.kind()) {
    case KernelKind::One: return std::exp(mu * t);
    case KernelKind::Exp: return std::exp((mu - 1.0) * t);
    case KernelKind::Linear: return sinh_ratio(mu, t);
    case KernelKind::TExp: return std::exp(-t) * sinh_ratio(mu, t);
    default: break;
  }
  throw InvalidArgument("closed-form resolvent requires a builtin kernel, got '" + kernel.id() +
                        "'");
}

Kernel load_kernel_csv(const std::filesystem::path& path, bool integrable) {
  const auto table = read_csv(path);
  if (table.header.size() != 2) {
    throw InvalidArgument("kernel CSV " + path.string() + " must have exactly two columns (t, b)");
  }
  if (table.rows.size() < 2) {
    throw InvalidArgument("kernel CSV " + path.string() + " needs at least two data rows");
  }
  std::vector<double> samples;
  samples.reserve(table.rows.size());
  const double step = table.rows[1][0] - table.rows[0][0];
  if (table.rows[0][0] != 0.0) {
    throw InvalidArgument("kernel CSV " + path.string() + ": first t must be 0");
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double t = table.rows[i][0];
    if (i > 0 && !(t > table.rows[i - 1][0])) {
      throw InvalidArgument("kernel CSV " + path.string() + ": t not strictly increasing at row " +
                            std::to_string(i + 1));
    }
    if (std::abs(t - step * static_cast<double>(i)) > 1e-9 * std::max(1.0, t)) {
      throw InvalidArgument("kernel CSV " + path.string() + ": t not uniformly spaced at row " +
                            std::to_string(i + 1));
    }
    samples.push_back(table.rows[i][1]);
  }
  return Kernel::tabulated(std::move(samples), step, integrable, path.filename().string());
}

}  // namespace vtorus
