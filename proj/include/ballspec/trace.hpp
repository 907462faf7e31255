#pragma once

// Field-line tracing with classical RK4 at unit speed (dx/ds = u/|u|) and
// conservation diagnostics of the axisymmetric flux function
// Psi = r sin(theta) u_phi / lambda, constant along field lines of an
// axisymmetric Beltrami field.

#include <cstdint>
#include <vector>

#include "ballspec/ballcalc.hpp"
#include "ballspec/core.hpp"
#include "ballspec/eigenbasis.hpp"

namespace ballspec {

struct TraceConfig {
  std::vector<Vec3> seeds;
  double step = 1e-3;     // arc length per RK4 step
  int max_steps = 10000;
  MultiIndex index{1, 1, 0, OperatorKind::curl, BranchSign::plus};
  double speed_floor = 1e-10;  // stop when |u| drops below
};

enum class StopReason { max_steps, left_ball, stagnation };

struct TracePoint {
  double s = 0.0;  // arc length
  Vec3 x;
};

struct Trace {
  int id = 0;
  std::vector<TracePoint> points;
  StopReason stop = StopReason::max_steps;
  // flux-function conservation along the polyline
  double psi_initial = 0.0;
  double psi_max_drift = 0.0;      // max |Psi - Psi_0|
  double psi_relative_drift = 0.0; // drift / |Psi_0| (absolute drift if Psi_0 ~ 0)
};

/// Flux function Psi(p) of the record's field: r sin(theta) u_phi / lambda.
double flux_function(const EigenRecord& rec, const BallDomain& domain,
                     const Vec3& p);

std::vector<Trace> trace_field_lines(const TraceConfig& config,
                                     const BallDomain& domain);

}  // namespace ballspec
