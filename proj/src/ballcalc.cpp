#include "ballspec/ballcalc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ballspec {

namespace {

void check_stencil(const Vec3& p, double extent, const BallDomain& domain,
                   const char* who) {
  if (p.norm() + extent > domain.radius)
    throw StencilError(std::string(who) + ": stencil leaves the ball");
}

Vec3 unit(int i) {
  Vec3 e;
  (&e.x)[i] = 1.0;
  return e;
}

double comp(const Vec3& v, int i) { return (&v.x)[i]; }

}  // namespace

Vec3 fd_curl(const CartesianField& f, const Vec3& p, double h,
             const BallDomain& domain) {
  check_stencil(p, h, domain, "fd_curl");
  Vec3 d[3];
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = unit(i) * h;
    d[i] = (f(p + e) - f(p - e)) * (1.0 / (2.0 * h));
  }
  return {d[1].z - d[2].y, d[2].x - d[0].z, d[0].y - d[1].x};
}

double fd_div(const CartesianField& f, const Vec3& p, double h,
              const BallDomain& domain) {
  check_stencil(p, h, domain, "fd_div");
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = unit(i) * h;
    s += (comp(f(p + e), i) - comp(f(p - e), i)) / (2.0 * h);
  }
  return s;
}

Vec3 fd_grad(const CartesianScalar& f, const Vec3& p, double h,
             const BallDomain& domain) {
  check_stencil(p, h, domain, "fd_grad");
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = unit(i) * h;
    (&g.x)[i] = (f(p + e) - f(p - e)) / (2.0 * h);
  }
  return g;
}

Vec3 fd_graddiv(const CartesianField& f, const Vec3& p, double h,
                const BallDomain& domain) {
  check_stencil(p, 2.0 * h, domain, "fd_graddiv");
  // (grad div f)_i = sum_j d_i d_j f_j with mixed central stencils
  Vec3 out;
  const double fii = 1.0 / (h * h);
  const double fij = 1.0 / (4.0 * h * h);
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        const Vec3 e = unit(i) * h;
        s += (comp(f(p + e), i) - 2.0 * comp(f(p), i) + comp(f(p - e), i)) *
             fii;
      } else {
        const Vec3 ei = unit(i) * h, ej = unit(j) * h;
        s += (comp(f(p + ei + ej), j) - comp(f(p + ei - ej), j) -
              comp(f(p - ei + ej), j) + comp(f(p - ei - ej), j)) *
             fij;
      }
    }
    (&out.x)[i] = s;
  }
  return out;
}

double fd_laplacian(const CartesianScalar& f, const Vec3& p, double h,
                    const BallDomain& domain) {
  check_stencil(p, h, domain, "fd_laplacian");
  double s = -6.0 * f(p);
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = unit(i) * h;
    s += f(p + e) + f(p - e);
  }
  return s / (h * h);
}

std::vector<Vec3> sample_interior_points(int count, double radius_cap,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-radius_cap, radius_cap);
  std::vector<Vec3> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    const Vec3 p{uni(rng), uni(rng), uni(rng)};
    if (p.norm() < radius_cap) out.push_back(p);
  }
  return out;
}

ResidualReport verify_eigenpair(const EigenRecord& rec, const BallDomain& domain,
                                const VerifyConfig& config) {
  if (config.fd_order != 2 && config.fd_order != 4)
    throw std::invalid_argument("verify_eigenpair: fd_order must be 2 or 4");
  if (config.sample_budget < 1 || config.h <= 0.0)
    throw std::invalid_argument("verify_eigenpair: bad sampling config");
  const double R = domain.radius;
  const double h = config.h * R;
  const double margin = 2.0 * h + 0.01 * R;
  const auto field = cartesian_field(rec, domain);
  const auto points =
      sample_interior_points(config.sample_budget, R - margin, config.seed);

  auto curl_at = [&](const Vec3& p) {
    if (config.fd_order == 4) {
      const Vec3 c1 = fd_curl(field, p, h, domain);
      const Vec3 c2 = fd_curl(field, p, 0.5 * h, domain);
      return (4.0 * c2 - c1) * (1.0 / 3.0);
    }
    return fd_curl(field, p, h, domain);
  };
  auto div_at = [&](const Vec3& p) {
    if (config.fd_order == 4)
      return (4.0 * fd_div(field, p, 0.5 * h, domain) -
              fd_div(field, p, h, domain)) /
             3.0;
    return fd_div(field, p, h, domain);
  };
  auto graddiv_at = [&](const Vec3& p) {
    if (config.fd_order == 4) {
      const Vec3 g1 = fd_graddiv(field, p, h, domain);
      const Vec3 g2 = fd_graddiv(field, p, 0.5 * h, domain);
      return (4.0 * g2 - g1) * (1.0 / 3.0);
    }
    return fd_graddiv(field, p, h, domain);
  };

  double sup_u = 0.0;
  std::vector<double> mag(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    mag[i] = field(points[i]).norm();
    sup_u = std::max(sup_u, mag[i]);
  }
  const double guard = 1e-8 * sup_u;

  double sup_eigen = 0.0, sup_annihilator = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (mag[i] < guard) continue;  // nodal surface, nothing to compare against
    const Vec3 p = points[i];
    const Vec3 u = field(p);
    if (rec.index.op == OperatorKind::curl) {
      const double lambda = rec.eigenvalue;
      sup_eigen = std::max(sup_eigen, (curl_at(p) - lambda * u).norm());
      sup_annihilator = std::max(sup_annihilator, std::abs(div_at(p)));
    } else {
      const double mu = rec.eigenvalue;
      sup_eigen = std::max(sup_eigen, (graddiv_at(p) - mu * u).norm());
      sup_annihilator = std::max(sup_annihilator, curl_at(p).norm());
    }
  }

  ResidualReport rep;
  rep.index = rec.index;
  rep.h = config.h;
  rep.seed = config.seed;
  rep.sample_budget = config.sample_budget;
  rep.boundary_samples = config.boundary_samples;
  rep.fd_order = config.fd_order;

  const double nu = std::sqrt(std::abs(rec.eigenvalue));
  if (rec.index.op == OperatorKind::curl) {
    const double scale = std::abs(rec.eigenvalue) * sup_u;
    rep.eigen_residual = sup_eigen / scale;
    rep.div_residual = sup_annihilator / scale;
  } else {
    rep.eigen_residual = sup_eigen / (std::abs(rec.eigenvalue) * sup_u);
    rep.div_residual = sup_annihilator / (nu * sup_u);
  }

  // boundary flux: |n.u| on a seeded spherical sample of the boundary
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double flux = 0.0;
  for (int i = 0; i < config.boundary_samples; ++i) {
    const double ct = 2.0 * u01(rng) - 1.0;
    const double theta = std::acos(ct);
    const double phi = 2.0 * kPi * u01(rng);
    const SphericalVector v =
        eval_field(rec, domain, SphericalPoint{R, theta, phi});
    flux = std::max(flux, std::abs(v.u_r));
  }
  rep.boundary_flux = flux;

  // norm defect via the separable radial quadrature
  const EigenRecord renorm = normalize_radial(rec, domain);
  const double norm2 = (rec.c / renorm.c) * (rec.c / renorm.c);
  rep.gram_defect = std::abs(norm2 - 1.0);
  return rep;
}

double verify_adjointness(const VectorField& u, const VectorField& au,
                          const VectorField& v, const VectorField& av,
                          const QuadratureGrid& grid) {
  return std::abs(inner_product(au, v, grid) - inner_product(u, av, grid));
}

double verify_adjointness(const EigenRecord& a, const EigenRecord& b,
                          const BallDomain& domain, const QuadratureGrid& grid) {
  auto scaled = [&](const EigenRecord& r) {
    return [r, domain](const SphericalPoint& p) {
      SphericalVector v = eval_field(r, domain, p);
      v.u_r *= r.eigenvalue;
      v.u_theta *= r.eigenvalue;
      v.u_phi *= r.eigenvalue;
      return v;
    };
  };
  // A u is lambda u for an eigenfield of its own operator; when the kinds
  // differ, A annihilates the other field (rot grad = 0, grad div rot = 0).
  VectorField fu = spherical_field(a, domain);
  VectorField fv = spherical_field(b, domain);
  auto zero = [](const SphericalPoint&) { return SphericalVector{}; };
  VectorField au = scaled(a);
  VectorField av = scaled(b);
  if (a.index.op != b.index.op) {
    // test the graddiv extension: it maps the curl field to zero
    if (a.index.op == OperatorKind::curl) au = zero;
    if (b.index.op == OperatorKind::curl) av = zero;
  }
  return verify_adjointness(fu, au, fv, av, grid);
}

std::vector<double> gram_matrix(const std::vector<EigenRecord>& recs,
                                const BallDomain& domain,
                                const QuadratureGrid& grid) {
  const int n = static_cast<int>(recs.size());
  std::vector<double> gram(n * n, 0.0);
  std::vector<SphericalVector> vals(n);
  for (size_t i = 0; i < grid.r_nodes().size(); ++i) {
    const double r = grid.r_nodes()[i];
    for (size_t j = 0; j < grid.theta_nodes().size(); ++j) {
      const double th = grid.theta_nodes()[j];
      const double w_rt = grid.r_weights()[i] * grid.theta_weights()[j];
      for (double ph : grid.phi_nodes()) {
        const SphericalPoint p{r, th, ph};
        for (int a = 0; a < n; ++a) vals[a] = eval_field(recs[a], domain, p);
        for (int a = 0; a < n; ++a)
          for (int b = a; b < n; ++b)
            gram[a * n + b] += w_rt * (vals[a].u_r * vals[b].u_r +
                                       vals[a].u_theta * vals[b].u_theta +
                                       vals[a].u_phi * vals[b].u_phi);
      }
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (b >= a)
        gram[a * n + b] *= grid.phi_weight();
      else
        gram[a * n + b] = gram[b * n + a];
    }
  return gram;
}

double gram_defect(const std::vector<double>& gram, int size) {
  double defect = 0.0;
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      const double target = (a == b) ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(gram[a * size + b] - target));
    }
  return defect;
}

}  // namespace ballspec
