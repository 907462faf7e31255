#pragma once

// Scalar special functions: the spherical Bessel function psi_n (first kind),
// its derivative, their positive zeros rho_{n,m} and alpha_{n,m}, complex
// spherical harmonics Y_n^k with the angular operators H and K, and the
// oscillatory line integral Phi_n that carries the tangential radial profile
// of the curl eigenfields.

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "ballspec/core.hpp"

namespace ballspec {

using Complex = std::complex<double>;

/// Highest order accepted by psi/psi_prime and the zero tables.
inline constexpr int kMaxOrder = 24;

/// psi_n(z) = (-z)^n (d/(z dz))^n (sin z / z), the spherical Bessel function
/// of the first kind. Below |z| < 0.01*(2n+1) a four-term power series is
/// used; the closed forms serve n <= 2 and a Miller-style downward recurrence
/// the rest. Equals sqrt(pi/2z) * J_{n+1/2}(z) for z > 0.
double psi(int n, double z);

/// d psi_n / dz, via psi_{n-1} - (n+1)/z * psi_n (series near zero).
double psi_prime(int n, double z);

/// Table of positive zeros of psi_n or psi'_n, filled on demand by a sign
/// scan (step pi/8) + bisection + Newton polish, so no zero is skipped.
/// Immutable once built for a given (n, m) range; rebuilding is idempotent.
class ZeroTable {
 public:
  enum class Kind { function_zero, derivative_zero };

  explicit ZeroTable(Kind kind, double tolerance = 1e-12)
      : kind_(kind), tolerance_(tolerance) {}

  /// m-th positive zero (m >= 1) of psi_n (function_zero) or psi'_n
  /// (derivative_zero; z = 0 never indexed). Extends the table as needed.
  double zero(int n, int m);

  Kind kind() const { return kind_; }
  double tolerance() const { return tolerance_; }

  /// All currently tabulated entries, ordered by (n, m).
  std::map<std::pair<int, int>, double> entries() const;

 private:
  Kind kind_;
  double tolerance_;
  std::vector<std::vector<double>> zeros_;  // zeros_[n][m-1]
  void extend(int n, int m);
};

/// rho_{n,m}: m-th positive zero of psi_n. Process-wide cache, thread-safe.
double bessel_zero(int n, int m);

/// alpha_{n,m}: m-th positive zero of psi'_n (z = 0 excluded).
double bessel_prime_zero(int n, int m);

/// Snapshot of the process-wide zero cache for CSV export; ensures the table
/// is filled up to (n_max, m_max) first.
std::map<std::pair<int, int>, double> zero_table_snapshot(ZeroTable::Kind kind,
                                                          int n_max, int m_max);

/// Complex spherical harmonic Y_n^k(theta, phi) = Pbar_n^k(cos theta) e^{ik phi},
/// unit L2 norm on the sphere, Condon-Shortley phase. Y_0^0 = 1/sqrt(4 pi).
Complex sph_harmonic(int n, int k, double theta, double phi);

/// H Y_n^k where H = (1/sin theta) d_phi + i d_theta. The 1/sin(theta)
/// singularity cancels analytically; evaluation is regular at both poles.
Complex h_apply(int n, int k, double theta, double phi);

/// Scalar sample with its angular partial derivatives, for K.
struct SphereScalarSample {
  Complex value{};
  Complex d_theta{};
  Complex d_phi{};
};

/// K w = (1/sin theta)(d_theta(sin theta * w) + i d_phi w), from supplied
/// closed-form partials. Throws PoleError at theta in {0, pi}.
Complex k_apply(const SphereScalarSample& w, double theta);

/// Same, with the partials taken by five-point central differences of `w`.
Complex k_apply(const std::function<Complex(double, double)>& w, double theta,
                double phi, double step = 1e-3);

/// Phi_n(lambda r) = int_0^r exp(i lambda (r - t)) psi_n(lambda t) / t dt,
/// n >= 1. Quadrature route: the t -> 0 piece (up to min(r, 1/|lambda|)) is
/// integrated term-by-term from the series of psi_n, the oscillatory
/// remainder by adaptive Gauss-Legendre refinement. Absolute error <= 1e-10.
Complex phi_integral(int n, double lambda, double r);

/// Closed form of the same function of x = lambda r:
///   Phi_n(x) = [ (psi_n(x) + x psi'_n(x)) + i x psi_n(x) ] / (n (n + 1)),
/// the unique solution of Phi' = psi_n(x)/x + i Phi with Phi(0) = 0.
/// Fast path used by the eigenfield evaluators; cross-checked against
/// phi_integral in the tests. At zeros of psi_n the imaginary part vanishes.
Complex phi_tangential(int n, double x);

/// Phi_n(x)/x with the removable limit at x = 0 (1/3 for n = 1, 0 above).
Complex phi_tangential_over_x(int n, double x);

/// psi_n(x)/x with the removable limit at x = 0.
double psi_over_x(int n, double x);

// ---------------------------------------------------------------------------
// Real-harmonic building blocks shared by the eigenfield evaluators.

/// Normalized associated Legendre values Pbar_n^k(cos theta) for 0 <= k <= n
/// <= n_max (Condon-Shortley phase, unit sphere norm with the e^{ik phi}
/// factor), together with tau = d Pbar/d theta and pi_k = k Pbar / sin theta.
/// Both tau and pi_k are evaluated through their regular pole limits.
class AngularTable {
 public:
  AngularTable(int n_max, double theta);

  double p(int n, int k) const { return p_[slot(n, k)]; }
  double tau(int n, int k) const { return tau_[slot(n, k)]; }
  double pi_k(int n, int k) const { return pi_[slot(n, k)]; }
  int n_max() const { return n_max_; }

 private:
  int n_max_;
  std::vector<double> p_, tau_, pi_;
  int slot(int n, int k) const { return n * (n + 1) / 2 + k; }
};

}  // namespace ballspec
