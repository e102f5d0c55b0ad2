#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

namespace {

// sinh(sqrt(mu) t) / sqrt(mu) for real mu of either sign.
double sinhc(double mu, double t) {
  if (mu > 0) return std::sinh(std::sqrt(mu) * t) / std::sqrt(mu);
  if (mu < 0) return std::sin(std::sqrt(-mu) * t) / std::sqrt(-mu);
  return t;
}

}  // namespace

double resolvent(const std::string& kernel, double mu, double t) {
  if (kernel == "one") return std::exp(mu * t);        // 1/(lambda - mu)
  if (kernel == "linear") return sinhc(mu, t);         // 1/(lambda^2 - mu)
  if (kernel == "exp") return std::exp((mu - 1.0) * t);  // 1/(1 + lambda - mu)
  if (kernel == "texp") return std::exp(-t) * sinhc(mu, t);  // 1/((1+lambda)^2 - mu)
  throw std::invalid_argument("oracle::resolvent: " + kernel);
}

double squared_integral(const std::string& kernel, double m) {
  if (kernel == "exp") return 1.0 / (2.0 * (1.0 + m));
  // int e^{-2s} sin^2(w s)/w^2 ds = 1/(4 (1 + w^2)), w^2 = m; at m = 0, int s^2 e^{-2s} = 1/4.
  if (kernel == "texp") return 1.0 / (4.0 * (1.0 + m));
  throw std::invalid_argument("oracle::squared_integral: " + kernel);
}

double exp_autocovariance(double m, double h) {
  return std::exp(-(1.0 + m) * h) / (2.0 * (1.0 + m));
}

double gd_term_bessel(int d, double rho2, double c) {
  const double nu = 1.0 - 0.5 * d;
  const double b = rho2 / c;
  return std::pow(4.0 * std::numbers::pi, -0.5 * d) * 2.0 * std::pow(b, 0.5 * nu) *
         std::cyl_bessel_k(std::abs(nu), 2.0 * std::sqrt(b));
}

double gd_term_simpson(int d, double rho2, double c) {
  auto f = [&](double u) {
    const double t = std::exp(u);
    return t * std::pow(4.0 * std::numbers::pi * t, -0.5 * d) * std::exp(-t - rho2 / (c * t));
  };
  return simpson(f, -60.0, 10.0, 200000);
}

double gd_bessel(int d, const std::vector<double>& x, double c, int cut) {
  double sum = 0.0;
  for (const auto& n : cube(d, cut)) {
    double rho2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const double y = x[static_cast<std::size_t>(i)] + 2.0 * std::numbers::pi * n[i];
      rho2 += y * y;
    }
    sum += gd_term_bessel(d, rho2, c);
  }
  return sum;
}

double pairing_series(int d, int N, const std::function<double(long)>& gamma, double c) {
  double sum = 0.0;
  for (const auto& n : cube(d, N)) {
    double w = 1.0;
    long n2 = 0;
    for (int v : n) {
      w *= 1.0 - std::abs(v) / (N + 1.0);
      n2 += static_cast<long>(v) * v;
    }
    sum += w * gamma(n2) * std::pow(c / 4.0, 0.5 * d) / (1.0 + c * n2 / 4.0);
  }
  return sum;
}

double cube_sum(int d, int N, const std::function<double(long)>& gamma, double alpha) {
  double sum = 0.0;
  for (const auto& n : cube(d, N)) {
    long n2 = 0;
    for (int v : n) n2 += static_cast<long>(v) * v;
    sum += gamma(n2) * std::pow(1.0 + n2, alpha);
  }
  return sum;
}

std::vector<std::vector<int>> cube(int d, int N) {
  std::vector<std::vector<int>> out;
  std::vector<int> n(static_cast<std::size_t>(d), -N);
  while (true) {
    out.push_back(n);
    int k = d - 1;
    while (k >= 0 && n[k] == N) n[k--] = -N;
    if (k < 0) break;
    ++n[k];
  }
  return out;
}

}  // namespace oracle
