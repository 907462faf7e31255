#include "ballspec/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ballspec {

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-angle initial guess, Newton on P_n
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

QuadratureGrid::QuadratureGrid(const BallDomain& domain, const GridSpec& spec)
    : domain_(domain), spec_(spec) {
  if (domain.radius <= 0.0)
    throw std::invalid_argument("QuadratureGrid: radius must be positive");
  if (spec.n_r < 1 || spec.n_theta < 1 || spec.n_phi < 1)
    throw std::invalid_argument("QuadratureGrid: counts must be positive");

  std::vector<double> x, w;
  gauss_legendre(spec.n_r, x, w);
  r_.resize(spec.n_r);
  wr_.resize(spec.n_r);
  const double R = domain.radius;
  for (int i = 0; i < spec.n_r; ++i) {
    const double r = 0.5 * R * (x[i] + 1.0);
    r_[i] = r;
    wr_[i] = 0.5 * R * w[i] * r * r;
  }

  gauss_legendre(spec.n_theta, x, w);
  theta_.resize(spec.n_theta);
  wtheta_.resize(spec.n_theta);
  for (int i = 0; i < spec.n_theta; ++i) {
    // nodes in cos(theta), descending theta as x ascends; ordering is
    // irrelevant for sums
    theta_[i] = std::acos(x[i]);
    wtheta_[i] = w[i];
  }

  phi_.resize(spec.n_phi);
  for (int i = 0; i < spec.n_phi; ++i)
    phi_[i] = 2.0 * kPi * i / spec.n_phi;
  wphi_ = 2.0 * kPi / spec.n_phi;
}

double QuadratureGrid::total_weight() const {
  double sr = 0.0, st = 0.0;
  for (double w : wr_) sr += w;
  for (double w : wtheta_) st += w;
  return sr * st * wphi_ * spec_.n_phi;
}

QuadratureGrid QuadratureGrid::refined() const {
  GridSpec s{2 * spec_.n_r, 2 * spec_.n_theta, 2 * spec_.n_phi};
  return QuadratureGrid(domain_, s);
}

VectorField field_from_cartesian(std::function<Vec3(const Vec3&)> f) {
  return [f = std::move(f)](const SphericalPoint& p) {
    const Vec3 u = f(to_cartesian_point(p));
    return to_spherical_frame(
        SphericalVector{u.x, u.y, u.z, Frame::cartesian}, p);
  };
}

double inner_product(const VectorField& f, const VectorField& g,
                     const QuadratureGrid& grid) {
  double sum = 0.0;
  for (size_t i = 0; i < grid.r_nodes().size(); ++i) {
    const double r = grid.r_nodes()[i];
    double shell = 0.0;
    for (size_t j = 0; j < grid.theta_nodes().size(); ++j) {
      const double th = grid.theta_nodes()[j];
      double ring = 0.0;
      for (double ph : grid.phi_nodes()) {
        const SphericalPoint p{r, th, ph};
        const SphericalVector a = f(p);
        const SphericalVector b = g(p);
        ring += a.u_r * b.u_r + a.u_theta * b.u_theta + a.u_phi * b.u_phi;
      }
      shell += grid.theta_weights()[j] * ring;
    }
    sum += grid.r_weights()[i] * shell;
  }
  return sum * grid.phi_weight();
}

double inner_product_scalar(const ScalarField& f, const ScalarField& g,
                            const QuadratureGrid& grid) {
  double sum = 0.0;
  for (size_t i = 0; i < grid.r_nodes().size(); ++i) {
    const double r = grid.r_nodes()[i];
    double shell = 0.0;
    for (size_t j = 0; j < grid.theta_nodes().size(); ++j) {
      const double th = grid.theta_nodes()[j];
      double ring = 0.0;
      for (double ph : grid.phi_nodes()) {
        const SphericalPoint p{r, th, ph};
        ring += f(p) * g(p);
      }
      shell += grid.theta_weights()[j] * ring;
    }
    sum += grid.r_weights()[i] * shell;
  }
  return sum * grid.phi_weight();
}

double l2_norm(const VectorField& f, const QuadratureGrid& grid) {
  return std::sqrt(inner_product(f, f, grid));
}

}  // namespace ballspec
