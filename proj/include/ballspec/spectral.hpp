#pragma once

// Coefficient-space realization of the Helmholtz-Weyl decomposition
// L2(ball) = A0 (+) V0 and of the self-adjoint extensions N_d (of grad div,
// acting on the potential class) and S (of curl, acting on the vortex class)
// on truncated eigenbases. Both operators are diagonal there:
//   N_d^p: a_j -> (-nu_j^2)^p a_j,   S^p: b_j^{+-} -> (+-lambda_j)^p b_j^{+-},
// which makes powers, inverses, resolvents and the Sobolev-scale and dual
// norms exact coefficient maps. On the ball the harmonic subspaces of both
// classes are empty, so the decomposition needs no extra summands and the
// solve_* solutions are unique as stated.

#include <memory>
#include <vector>

#include "ballspec/ballcalc.hpp"
#include "ballspec/core.hpp"
#include "ballspec/eigenbasis.hpp"
#include "ballspec/quadrature.hpp"

namespace ballspec {

/// Harmonic subspaces A_H, B_H are empty on the ball; kept as an explicit
/// capability seam for general-domain extensions.
inline constexpr bool kHarmonicSubspacesEmpty = true;
inline constexpr int harmonic_subspace_dimension(OperatorKind) { return 0; }

struct Truncation {
  int n_max = 4;
  int m_max = 4;
};

/// Normalized eigenbasis of both families within a truncation, with batched
/// evaluation sharing the Legendre/Bessel tables across records.
class BasisSet {
 public:
  BasisSet(const Truncation& trunc, const BallDomain& domain);

  const Truncation& truncation() const { return trunc_; }
  const BallDomain& domain() const { return domain_; }
  const std::vector<EigenRecord>& graddiv_records() const { return graddiv_; }
  const std::vector<EigenRecord>& curl_records() const { return curl_; }

  /// Values of every basis field at p, graddiv block then curl block,
  /// in enumerate order.
  void eval_all(const SphericalPoint& p, std::vector<SphericalVector>& out) const;

 private:
  Truncation trunc_;
  BallDomain domain_;
  std::vector<EigenRecord> graddiv_, curl_;
};

struct SpectralCoefficients {
  Truncation trunc;
  BallDomain domain;
  std::vector<MultiIndex> a_indices;  // graddiv family, enumerate order
  std::vector<double> a;
  std::vector<MultiIndex> b_indices;  // curl family, enumerate order
  std::vector<double> b;

  double a_norm2() const;
  double b_norm2() const;
  bool a_is_zero(double tol = 0.0) const;
  bool b_is_zero(double tol = 0.0) const;
};

/// Zero coefficient set over the truncation's enumerated indices.
SpectralCoefficients zero_coefficients(const Truncation& trunc,
                                       const BallDomain& domain);

struct AnalyzeOptions {
  /// Re-run on the doubled grid and raise ResolutionError if any coefficient
  /// moves by more than this (<= 0 disables the check).
  double refinement_check = -1.0;
  /// Coefficients with |value| below this are stored as exact zeros.
  double clip = 1e-14;
};

/// Coefficients (f, q_j) for every enumerated index of both families, by
/// ball quadrature against the shared basis.
SpectralCoefficients analyze(const VectorField& f, const BasisSet& basis,
                             const QuadratureGrid& grid,
                             const AnalyzeOptions& opts = {});

/// Pointwise partial sum of the expansion.
VectorField synthesize(const SpectralCoefficients& c,
                       std::shared_ptr<const BasisSet> basis);

/// L2-norm of (f - synthesize(c)) over the grid.
double reconstruction_error(const VectorField& f, const SpectralCoefficients& c,
                            const BasisSet& basis, const QuadratureGrid& grid);

/// Projections onto the potential (A) and vortex (V) subspaces: zero the
/// complementary block. Idempotent and complementary.
SpectralCoefficients project_A(SpectralCoefficients c);
SpectralCoefficients project_V(SpectralCoefficients c);

/// N_d^p on the potential block: a_j -> (-nu_j^2)^p a_j, p >= 1.
/// Nonzero curl block -> SubspaceError.
SpectralCoefficients apply_Nd(SpectralCoefficients c, int power);
/// N_d^{-p}: a_j -> (-nu_j^2)^{-p} a_j.
SpectralCoefficients apply_Nd_inverse(SpectralCoefficients c, int power);

/// S^p on the vortex block: b_j -> (+-lambda_j)^p b_j.
/// Nonzero graddiv block -> SubspaceError.
SpectralCoefficients apply_S(SpectralCoefficients c, int power);
SpectralCoefficients apply_S_inverse(SpectralCoefficients c, int power);

/// (N_d + shift I)^{-1}: a_j -> a_j / (-nu_j^2 + shift). A shift within
/// 1e-10 relative (or 1e-12 absolute) of a spectrum point raises
/// SpectrumCollisionError naming the offending index.
SpectralCoefficients resolvent_Nd(SpectralCoefficients c, double shift);

enum class Scale { A, W };

struct ScaleNorm {
  Scale scale = Scale::A;
  int order = 0;
  double value = 0.0;
};

/// Weighted-l2 norm of the matching block:
///   A-scale, order 2k:  value^2 = sum nu_j^{4k} a_j^2  (negative order gives
///   the dual norm M_{|2k|});  W-scale, order m: value^2 = sum lambda_j^{2m} b_j^2.
ScaleNorm scale_norm(const SpectralCoefficients& c, Scale scale, int order);

struct SolveReport {
  SpectralCoefficients solution;
  ScaleNorm rhs_dual_norm;      // M_{2k}(v) resp. W-scale dual norm
  double roundtrip_residual = 0.0;  // max coefficient defect of A^{2k} u - v
};

/// Solve (grad div)^{2k} u = v on the truncated potential class: u = N_d^{-2k} v.
/// On a finite truncation every v is admissible (M_{2k} finite); the report
/// carries M_{2k}(v) so its growth can be watched under refinement.
SolveReport solve_graddiv_power(const SpectralCoefficients& v, int k);

/// Solve rot^{2m} u = v on the truncated vortex class: u = S^{-2m} v.
SolveReport solve_curl_power(const SpectralCoefficients& v, int m);

}  // namespace ballspec
