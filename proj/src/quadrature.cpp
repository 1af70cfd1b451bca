#include "rbcs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "rbcs/special.hpp"

namespace rbcs {
namespace {

constexpr int kNewtonSteps = 4;
constexpr double kMomentTolerance = 1e-10;

Eigen::VectorXd jacobi_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void require_points(int n, const char* rule) {
  if (n < 1) {
    throw Error(Errc::out_of_range, std::string(rule) + " needs at least one node");
  }
}

}  // namespace

GaussRule gauss_laguerre(int n) {
  require_points(n, "gauss_laguerre");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) off(k - 1) = k;
  const Eigen::VectorXd guess = jacobi_eigenvalues(diag, off);

  GaussRule rule;
  for (int i = 0; i < n; ++i) {
    double t = guess(i);
    for (int step = 0; step < kNewtonSteps; ++step) {
      const auto l = laguerre_functions(n, t);
      // At a zero of l_n its derivative is -n l_{n-1} / t; away from it the
      // full expression keeps Newton well defined.
      const double deriv = n * (l[n] - l[n - 1]) / t - 0.5 * l[n];
      t -= l[n] / deriv;
    }
    const auto l = laguerre_functions(n + 1, t);
    const double denom = (n + 1.0) * l[n + 1];
    const double scaled = t / (denom * denom);
    rule.nodes.push_back(t);
    rule.scaled_weights.push_back(scaled);
    rule.weights.push_back(scaled * std::exp(-t));
  }
  return rule;
}

GaussRule gauss_hermite(int n) {
  require_points(n, "gauss_hermite");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(0.5 * k);
  const Eigen::VectorXd guess = jacobi_eigenvalues(diag, off);

  GaussRule rule;
  for (int i = 0; i < n; ++i) {
    double x = guess(i);
    for (int step = 0; step < kNewtonSteps; ++step) {
      const auto psi = hermite_functions(n, x);
      const double prev = n > 0 ? psi[n - 1] : 0.0;
      const double deriv = std::sqrt(2.0 * n) * prev - x * psi[n];
      x -= psi[n] / deriv;
    }
    const auto psi = hermite_functions(n, x);
    const double scaled = 1.0 / (n * psi[n - 1] * psi[n - 1]);
    rule.nodes.push_back(x);
    rule.scaled_weights.push_back(scaled);
    rule.weights.push_back(scaled * std::exp(-x * x));
  }
  return rule;
}

double laguerre_moment(const GaussRule& rule, int k) {
  if (k < 0) throw Error(Errc::out_of_range, "negative moment order");
  const double log_kfact = std::lgamma(k + 1.0);
  double sum = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    sum += rule.scaled_weights[i] * std::exp(k * std::log(t) - t - log_kfact);
  }
  return sum;
}

QuadratureScheme::QuadratureScheme(GaussRule radial, int angular_count)
    : radial_(std::move(radial)), angular_count_(angular_count) {
  if (radial_.size() < 1 || angular_count_ < 1) {
    throw Error(Errc::out_of_range, "quadrature needs at least one radial and one angular node");
  }
}

Complex QuadratureScheme::node(int index) const {
  const int i = index / angular_count_;
  const int j = index % angular_count_;
  const double theta = 2.0 * std::numbers::pi * j / angular_count_;
  return std::polar(std::sqrt(radial_.nodes[i]), theta);
}

double QuadratureScheme::weight(int index) const {
  return radial_.scaled_weights[index / angular_count_] / angular_count_;
}

bool QuadratureScheme::resolves(int dim) const {
  return radial_count() >= dim && angular_count_ >= 2 * dim;
}

QuadratureScheme make_quadrature(int dim, int radial_count, int angular_count) {
  if (radial_count < dim || angular_count < 2 * dim) {
    std::ostringstream os;
    os << "dim " << dim << " needs radial_count >= " << dim << " and angular_count >= "
       << 2 * dim << ", got " << radial_count << " and " << angular_count;
    throw Error(Errc::under_resolved, os.str());
  }
  QuadratureScheme scheme(gauss_laguerre(radial_count), angular_count);
  for (int k = 0; k <= dim; ++k) {
    const double moment = laguerre_moment(scheme.radial(), k);
    if (std::abs(moment - 1.0) > kMomentTolerance) {
      std::ostringstream os;
      os << "factorial moment k=" << k << " is off by " << std::abs(moment - 1.0);
      throw Error(Errc::under_resolved, os.str());
    }
  }
  return scheme;
}

Complex angular_mean(int angular_count, int n) {
  Complex sum(0.0);
  for (int j = 0; j < angular_count; ++j) {
    const long long turn = ((static_cast<long long>(n) * j) % angular_count + angular_count) %
                           angular_count;
    sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(turn) / angular_count);
  }
  return sum / static_cast<double>(angular_count);
}

}  // namespace rbcs
