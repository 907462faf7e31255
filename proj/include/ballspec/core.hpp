#pragma once

// Core domain types shared by every module: multi-indices addressing
// eigenfields of curl and grad-div on a ball, spherical/cartesian points
// and vectors, and the error types raised by the library.

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

namespace ballspec {

inline constexpr double kPi = 3.14159265358979323846;

enum class OperatorKind { curl, graddiv };

enum class BranchSign { plus, minus };  // curl spectrum comes in +/- pairs

inline const char* to_string(OperatorKind op) {
  return op == OperatorKind::curl ? "curl" : "graddiv";
}
inline const char* to_string(BranchSign s) {
  return s == BranchSign::plus ? "+" : "-";
}

/// Addresses one eigenfield: degree n, radial zero index m >= 1, azimuthal
/// order k with |k| <= n. For the real-valued basis, k >= 0 selects the
/// cos(k*phi) branch and k < 0 the sin(|k|*phi) branch. `sign` is meaningful
/// for curl only (the +/- eigenvalue pair) and is fixed to plus for graddiv.
struct MultiIndex {
  int n = 1;
  int m = 1;
  int k = 0;
  OperatorKind op = OperatorKind::curl;
  BranchSign sign = BranchSign::plus;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Lexicographic (n, m, k, sign) order used to break eigenvalue ties.
inline bool lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.n != b.n) return a.n < b.n;
  if (a.m != b.m) return a.m < b.m;
  if (a.k != b.k) return a.k < b.k;
  return static_cast<int>(a.sign) < static_cast<int>(b.sign);
}

std::string to_string(const MultiIndex& idx);

struct BallDomain {
  double radius = 1.0;
};

struct SphericalPoint {
  double r = 0.0;      // [0, R]
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2*pi)
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};
inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

enum class Frame { spherical, cartesian };

/// One vector sample. In the spherical frame the slots hold (u_r, u_theta,
/// u_phi); after conversion they hold (u_x, u_y, u_z).
struct SphericalVector {
  double u_r = 0.0;
  double u_theta = 0.0;
  double u_phi = 0.0;
  Frame frame = Frame::spherical;
};

/// Eigenfield with its eigenvalue and normalization. `c` is the positive
/// amplitude making the field unit-norm in L2(ball); `orientation` (+-1)
/// fixes the overall sign so the radial component is positive at the
/// reference sample point (deterministic basis).
struct EigenRecord {
  MultiIndex index;
  double eigenvalue = 0.0;
  double c = 1.0;
  int orientation = 1;
};

SphericalPoint to_spherical(const Vec3& p);
Vec3 to_cartesian_point(const SphericalPoint& p);

/// Frame rotation of a spherical-frame vector at point p. Norm-preserving.
/// At the poles (theta in {0, pi}) the frame is fixed by the phi = 0
/// convention, so the map stays single-valued.
SphericalVector to_cartesian(const SphericalVector& v, const SphericalPoint& p);

/// Inverse rotation; to_spherical_frame(to_cartesian(v, p), p) == v to 1e-14
/// away from the poles.
SphericalVector to_spherical_frame(const SphericalVector& v,
                                   const SphericalPoint& p);

// ---------------------------------------------------------------------------
// Errors

/// Requested order/index outside the supported table capacity.
class OrderRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// |k| > n or an index excluded from a family (e.g. curl with n = 0).
class IndexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation applied to a record of the wrong operator kind.
class KindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficients outside the operator's subspace (e.g. curl part nonzero
/// where grad-div acts).
class SubspaceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Resolvent shift collides with a spectrum point; carries the offender.
class SpectrumCollisionError : public std::domain_error {
 public:
  SpectrumCollisionError(const std::string& what, MultiIndex offender)
      : std::domain_error(what), offending(offender) {}
  MultiIndex offending;
};

/// Quadrature too coarse: result unstable under grid refinement.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-difference stencil would leave the ball.
class StencilError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation exactly at a coordinate pole where the formula is singular.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ballspec
