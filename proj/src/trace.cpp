#include "ballspec/trace.hpp"

#include <cmath>
#include <stdexcept>

namespace ballspec {

double flux_function(const EigenRecord& rec, const BallDomain& domain,
                     const Vec3& p) {
  const SphericalPoint sp = to_spherical(p);
  const SphericalVector u = eval_field(rec, domain, sp);
  return sp.r * std::sin(sp.theta) * u.u_phi / rec.eigenvalue;
}

std::vector<Trace> trace_field_lines(const TraceConfig& config,
                                     const BallDomain& domain) {
  if (config.step <= 0.0)
    throw std::invalid_argument("trace: step must be positive");
  for (const Vec3& s : config.seeds)
    if (s.norm() >= domain.radius)
      throw std::invalid_argument("trace: seed point outside the open ball");

  EigenRecord rec = normalize_radial(make_record(config.index, domain), domain);
  const auto field = cartesian_field(rec, domain);

  std::vector<Trace> traces;
  traces.reserve(config.seeds.size());
  int id = 0;
  for (const Vec3& seed : config.seeds) {
    Trace tr;
    tr.id = id++;
    tr.stop = StopReason::max_steps;
    Vec3 x = seed;
    double s = 0.0;
    tr.points.push_back({s, x});
    tr.psi_initial = flux_function(rec, domain, x);

    const double h = config.step;
    for (int step = 0; step < config.max_steps; ++step) {
      // unit-speed RK4; a stage with |u| below the floor ends the trace
      bool stagnant = false;
      auto dir = [&](const Vec3& q) {
        const Vec3 u = field(q);
        const double n = u.norm();
        if (n < config.speed_floor) {
          stagnant = true;
          return Vec3{};
        }
        return u * (1.0 / n);
      };
      const Vec3 k1 = dir(x);
      const Vec3 k2 = dir(x + 0.5 * h * k1);
      const Vec3 k3 = dir(x + 0.5 * h * k2);
      const Vec3 k4 = dir(x + h * k3);
      if (stagnant) {
        tr.stop = StopReason::stagnation;
        break;
      }
      x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      s += h;
      if (x.norm() >= domain.radius) {
        tr.stop = StopReason::left_ball;
        break;
      }
      tr.points.push_back({s, x});
      const double drift = std::abs(flux_function(rec, domain, x) - tr.psi_initial);
      tr.psi_max_drift = std::max(tr.psi_max_drift, drift);
    }
    tr.psi_relative_drift = std::abs(tr.psi_initial) > 1e-12
                                ? tr.psi_max_drift / std::abs(tr.psi_initial)
                                : tr.psi_max_drift;
    traces.push_back(std::move(tr));
  }
  return traces;
}

}  // namespace ballspec
