#pragma once

// Product quadrature on the ball: Gauss-Legendre in r (mapped to (0, R) with
// the r^2 Jacobian folded into the weights), Gauss-Legendre in cos(theta),
// uniform trapezoidal rule in phi. Realizes the L2 inner product
// (u, v) = int_B u . v dx used throughout.

#include <functional>
#include <vector>

#include "ballspec/core.hpp"

namespace ballspec {

/// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

struct GridSpec {
  int n_r = 48;
  int n_theta = 48;
  int n_phi = 64;
};

class QuadratureGrid {
 public:
  QuadratureGrid(const BallDomain& domain, const GridSpec& spec = {});

  const BallDomain& domain() const { return domain_; }
  const GridSpec& spec() const { return spec_; }

  const std::vector<double>& r_nodes() const { return r_; }
  const std::vector<double>& r_weights() const { return wr_; }  // incl. r^2
  const std::vector<double>& theta_nodes() const { return theta_; }
  const std::vector<double>& theta_weights() const { return wtheta_; }
  const std::vector<double>& phi_nodes() const { return phi_; }
  double phi_weight() const { return wphi_; }

  /// Sum of all product weights; equals the ball volume 4 pi R^3 / 3.
  double total_weight() const;

  /// Grid refined by doubling every count.
  QuadratureGrid refined() const;

 private:
  BallDomain domain_;
  GridSpec spec_;
  std::vector<double> r_, wr_, theta_, wtheta_, phi_;
  double wphi_;
};

using ScalarField = std::function<double(const SphericalPoint&)>;
/// Field callback returning spherical-frame components at a grid node.
using VectorField = std::function<SphericalVector(const SphericalPoint&)>;

/// Wrap a cartesian-in/cartesian-out field as a spherical-frame callback.
VectorField field_from_cartesian(std::function<Vec3(const Vec3&)> f);

/// Quadrature of f . g over the ball (both fields in the spherical frame;
/// frame choice cancels since the rotation is orthogonal).
double inner_product(const VectorField& f, const VectorField& g,
                     const QuadratureGrid& grid);

double inner_product_scalar(const ScalarField& f, const ScalarField& g,
                            const QuadratureGrid& grid);

/// Quadrature L2 norm of a field.
double l2_norm(const VectorField& f, const QuadratureGrid& grid);

}  // namespace ballspec
