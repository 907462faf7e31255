#pragma once

// Independent finite-difference differential operators on cartesian fields
// and the residual reports validating the analytic eigenfields numerically:
// eigen-equation residuals, annihilator residuals (div of curl fields, rot of
// graddiv fields), boundary flux, norm defect, and the symmetry defect
// |(Au, v) - (u, Av)| of the self-adjoint extensions.

#include <cstdint>
#include <functional>
#include <vector>

#include "ballspec/core.hpp"
#include "ballspec/eigenbasis.hpp"
#include "ballspec/quadrature.hpp"

namespace ballspec {

using CartesianField = std::function<Vec3(const Vec3&)>;
using CartesianScalar = std::function<double(const Vec3&)>;

/// Second-order central-difference curl. The stencil must stay inside the
/// ball: |p| + h <= R, else StencilError.
Vec3 fd_curl(const CartesianField& f, const Vec3& p, double h,
             const BallDomain& domain);

/// Second-order central-difference divergence.
double fd_div(const CartesianField& f, const Vec3& p, double h,
              const BallDomain& domain);

/// Second-order central-difference gradient of a scalar.
Vec3 fd_grad(const CartesianScalar& f, const Vec3& p, double h,
             const BallDomain& domain);

/// grad(div f) from one level of mixed second-difference stencils (still
/// O(h^2); stencil extent 2h).
Vec3 fd_graddiv(const CartesianField& f, const Vec3& p, double h,
                const BallDomain& domain);

/// Scalar 7-point Laplacian, O(h^2).
double fd_laplacian(const CartesianScalar& f, const Vec3& p, double h,
                    const BallDomain& domain);

struct ResidualReport {
  double eigen_residual = 0.0;  // eigen-equation defect, relative sup-norm
  double div_residual = 0.0;    // annihilator defect (div for curl, rot for graddiv)
  double boundary_flux = 0.0;   // max |n.u| over boundary samples
  double gram_defect = 0.0;     // |quadrature norm^2 - 1| for the record
  // provenance
  MultiIndex index;
  double h = 0.0;
  std::uint64_t seed = 0;
  int sample_budget = 0;
  int boundary_samples = 0;
  int fd_order = 2;
};

struct VerifyConfig {
  int sample_budget = 200;
  double h = 0.02;           // in units of R
  std::uint64_t seed = 20240901;
  int boundary_samples = 64;
  /// 2: plain central differences (halving h divides residuals by ~4).
  /// 4: Richardson combination of the order-2 stencils at h and h/2.
  int fd_order = 2;
};

/// Residuals of the eigen-equation and side conditions for one normalized
/// record, at `sample_budget` seeded interior points. Residual norms are
/// relative sup-norms over the sample set: the numerator sup |defect| is
/// divided by the defect's derivative scale, sup |u| times |lambda| (curl) or
/// |mu| resp. nu (graddiv); points where |u| < 1e-8 * sup|u| are skipped.
/// Reports, never throws on large residuals.
ResidualReport verify_eigenpair(const EigenRecord& rec, const BallDomain& domain,
                                const VerifyConfig& config = {});

/// |(Au, v) - (u, Av)| by quadrature, A applied analytically through the
/// supplied images (for eigenfields: the lambda-scaled fields themselves).
double verify_adjointness(const VectorField& u, const VectorField& au,
                          const VectorField& v, const VectorField& av,
                          const QuadratureGrid& grid);

/// Convenience: symmetry defect of the pair's own self-adjoint operator
/// (curl records: S = rot; graddiv records: N_d), both fields normalized.
double verify_adjointness(const EigenRecord& a, const EigenRecord& b,
                          const BallDomain& domain, const QuadratureGrid& grid);

/// Gram matrix (row-major) of the given records under ball quadrature.
std::vector<double> gram_matrix(const std::vector<EigenRecord>& recs,
                                const BallDomain& domain,
                                const QuadratureGrid& grid);

/// max |Gram - I| entry.
double gram_defect(const std::vector<double>& gram, int size);

/// Seeded uniform samples in the ball of radius `radius_cap`.
std::vector<Vec3> sample_interior_points(int count, double radius_cap,
                                         std::uint64_t seed);

}  // namespace ballspec
