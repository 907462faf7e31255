#include "ballspec/core.hpp"

#include <algorithm>
#include <sstream>

namespace ballspec {

std::string to_string(const MultiIndex& idx) {
  std::ostringstream os;
  os << to_string(idx.op) << "(" << idx.n << "," << idx.m << "," << idx.k;
  if (idx.op == OperatorKind::curl) os << "," << to_string(idx.sign);
  os << ")";
  return os.str();
}

SphericalPoint to_spherical(const Vec3& p) {
  SphericalPoint s;
  s.r = p.norm();
  if (s.r == 0.0) return {0.0, 0.0, 0.0};
  s.theta = std::acos(std::clamp(p.z / s.r, -1.0, 1.0));
  s.phi = std::atan2(p.y, p.x);
  if (s.phi < 0.0) s.phi += 2.0 * kPi;
  return s;
}

Vec3 to_cartesian_point(const SphericalPoint& p) {
  const double st = std::sin(p.theta);
  return {p.r * st * std::cos(p.phi), p.r * st * std::sin(p.phi),
          p.r * std::cos(p.theta)};
}

SphericalVector to_cartesian(const SphericalVector& v, const SphericalPoint& p) {
  if (v.frame != Frame::spherical)
    throw KindError("to_cartesian: vector already in cartesian frame");
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  // columns are the unit vectors i_r, i_theta, i_phi
  SphericalVector out;
  out.u_r = v.u_r * st * cp + v.u_theta * ct * cp - v.u_phi * sp;      // x
  out.u_theta = v.u_r * st * sp + v.u_theta * ct * sp + v.u_phi * cp;  // y
  out.u_phi = v.u_r * ct - v.u_theta * st;                             // z
  out.frame = Frame::cartesian;
  return out;
}

SphericalVector to_spherical_frame(const SphericalVector& v,
                                   const SphericalPoint& p) {
  if (v.frame != Frame::cartesian)
    throw KindError("to_spherical_frame: vector already in spherical frame");
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  const double x = v.u_r, y = v.u_theta, z = v.u_phi;  // cartesian slots
  SphericalVector out;
  out.u_r = x * st * cp + y * st * sp + z * ct;
  out.u_theta = x * ct * cp + y * ct * sp - z * st;
  out.u_phi = -x * sp + y * cp;
  out.frame = Frame::spherical;
  return out;
}

}  // namespace ballspec
