#pragma once

// Eigenvalue/eigenfield families of curl and grad-div on the ball.
//
// Curl: for each degree n >= 1, radial index m and |k| <= n the eigenvalues
// are +-rho_{n,m}/R (rho_{n,m} the zeros of psi_n) with multiplicity 2n+1.
// In spherical components the eigenfield with eigenvalue lambda is
//     u_r              = c * psi_n(lambda r) / (lambda r) * S(theta, phi)
//     u_phi + i u_theta = c * Phi_n(lambda r) / (lambda r) * (H S)(theta, phi)
// where S is a (real or complex) degree-n spherical harmonic and H the
// tangential operator from specfun. Grad-div: eigenvalues -(alpha_{n,m}/R)^2
// (alpha_{n,m} the zeros of psi'_n, n >= 0), eigenfields are gradients of
// g = c psi_n(nu r) S:
//     v_r              = c * nu * psi'_n(nu r) * S
//     v_phi + i v_theta = c * psi_n(nu r) / r * (H S).
//
// The stored basis is real: k >= 0 addresses the cos(k phi) branch, k < 0
// the sin(|k| phi) branch, each with unit-norm angular factor.

#include <functional>
#include <vector>

#include "ballspec/core.hpp"
#include "ballspec/quadrature.hpp"
#include "ballspec/specfun.hpp"

namespace ballspec {

/// All admissible indices for one operator up to (n_max, m_max), sorted by
/// |eigenvalue| ascending with (n, m, k, sign) lexicographic tie-break.
/// Curl emits both branch signs; graddiv starts at n = 0 (k = 0 there).
std::vector<MultiIndex> enumerate_indices(OperatorKind op, int n_max, int m_max,
                                          const BallDomain& domain);

/// Union of both families in one |eigenvalue|-sorted list (graddiv first on
/// an exact tie).
std::vector<MultiIndex> enumerate_mixed(int n_max, int m_max,
                                        const BallDomain& domain);

double curl_eigenvalue(const MultiIndex& idx, const BallDomain& domain);
double graddiv_eigenvalue(const MultiIndex& idx, const BallDomain& domain);
double eigenvalue_of(const MultiIndex& idx, const BallDomain& domain);

void validate_index(const MultiIndex& idx);

/// Record with eigenvalue filled in and unit amplitude (not yet normalized).
EigenRecord make_record(const MultiIndex& idx, const BallDomain& domain);

SphericalVector eval_curl_field(const EigenRecord& rec, const BallDomain& domain,
                                const SphericalPoint& p);
SphericalVector eval_graddiv_field(const EigenRecord& rec,
                                   const BallDomain& domain,
                                   const SphericalPoint& p);
/// Scalar potential g with field = grad g (graddiv records only).
double eval_graddiv_potential(const EigenRecord& rec, const BallDomain& domain,
                              const SphericalPoint& p);
SphericalVector eval_field(const EigenRecord& rec, const BallDomain& domain,
                           const SphericalPoint& p);

/// Closed-form axisymmetric curl eigenfield for (n, m, k) = (1, 1, 0), + branch,
/// with rho = rho_{1,1}/R and x = rho r:
///   u_r   = 2 (sin x - x cos x)/x^3 * cos(theta)
///   u_th  =   (sin x - x cos x - x^2 sin x)/x^3 * sin(theta)
///   u_phi =   (sin x - x cos x)/x^2 * sin(theta)
/// Fast path and independent cross-check for eval_curl_field.
SphericalVector eval_axisym_110(const SphericalPoint& p, double rho);

/// Complex scalar pair (v, w) = (r u_r, u_phi + i u_theta) of the curl
/// eigenfield built on the complex harmonic Y_n^k; the pair solves
///   (d_r - i lambda)(r w) = H v / r,   K w = lambda v - i d_r(r v)/r.
struct ComplexTangentialPair {
  Complex v;
  Complex w;
};
ComplexTangentialPair eval_curl_complex_vw(const EigenRecord& rec,
                                           const BallDomain& domain,
                                           const SphericalPoint& p);

/// Amplitude c > 0 making the field unit L2(ball) norm under `grid`, and the
/// orientation sign making u_r positive at the reference sample (first point
/// of a fixed coarse lattice where the angular factor and the radial profile
/// attain their maximum modulus). With check_refinement, recomputes on the
/// doubled grid and throws ResolutionError if c moves by more than 1e-7
/// relatively.
EigenRecord normalize(const EigenRecord& rec, const BallDomain& domain,
                      const QuadratureGrid& grid, bool check_refinement = false);

/// Same amplitude from the separable form: the angular integrals are exactly
/// 1 and n(n+1), leaving a one-dimensional radial quadrature.
EigenRecord normalize_radial(const EigenRecord& rec, const BallDomain& domain,
                             int n_r = 64);

/// Field as a callback in the spherical frame (for quadrature).
VectorField spherical_field(const EigenRecord& rec, const BallDomain& domain);

/// Field as a cartesian-in/cartesian-out callback (for finite differences
/// and tracing). Points with x = y = 0 use the phi = 0 frame convention.
std::function<Vec3(const Vec3&)> cartesian_field(const EigenRecord& rec,
                                                 const BallDomain& domain);

}  // namespace ballspec
