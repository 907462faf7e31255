#include "ballspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ballspec {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

// Radial profile pair of one (op, n, m, sign) family at a fixed radius.
struct RadialPair {
  double f_r = 0.0;
  Complex f_t{};
};

RadialPair radial_pair(const MultiIndex& idx, const BallDomain& domain,
                       double r) {
  RadialPair out;
  if (idx.op == OperatorKind::curl) {
    const double x = curl_eigenvalue(idx, domain) * r;
    out.f_r = psi_over_x(idx.n, x);
    out.f_t = phi_tangential_over_x(idx.n, x);
  } else {
    const double nu = bessel_prime_zero(idx.n, idx.m) / domain.radius;
    out.f_r = nu * psi_prime(idx.n, nu * r);
    out.f_t = Complex(nu * psi_over_x(idx.n, nu * r), 0.0);
  }
  return out;
}

SphericalVector assemble_from_tables(const EigenRecord& rec,
                                     const RadialPair& rad,
                                     const AngularTable& tab, double cos_kphi,
                                     double sin_kphi) {
  const int ka = std::abs(rec.index.k);
  const double p = tab.p(rec.index.n, ka);
  const double tau = tab.tau(rec.index.n, ka);
  const double pik = tab.pi_k(rec.index.n, ka);
  const double amp = rec.c * rec.orientation;
  double s;
  Complex hs;
  if (rec.index.k == 0) {
    s = p;
    hs = Complex(0.0, tau);
  } else if (rec.index.k > 0) {
    s = kSqrt2 * p * cos_kphi;
    hs = kSqrt2 * Complex(-pik * sin_kphi, tau * cos_kphi);
  } else {
    s = kSqrt2 * p * sin_kphi;
    hs = kSqrt2 * Complex(pik * cos_kphi, tau * sin_kphi);
  }
  SphericalVector u;
  u.u_r = amp * rad.f_r * s;
  const Complex w = amp * rad.f_t * hs;
  u.u_phi = w.real();
  u.u_theta = w.imag();
  return u;
}

// key for the radial cache: sign bit | op bit | n | m
int radial_key(const MultiIndex& idx) {
  const int s = (idx.op == OperatorKind::curl && idx.sign == BranchSign::minus)
                    ? 1
                    : 0;
  const int o = idx.op == OperatorKind::curl ? 1 : 0;
  return ((idx.n * 512 + idx.m) * 2 + o) * 2 + s;
}

}  // namespace

BasisSet::BasisSet(const Truncation& trunc, const BallDomain& domain)
    : trunc_(trunc), domain_(domain) {
  for (const MultiIndex& idx :
       enumerate_indices(OperatorKind::graddiv, trunc.n_max, trunc.m_max,
                         domain))
    graddiv_.push_back(normalize_radial(make_record(idx, domain), domain));
  for (const MultiIndex& idx : enumerate_indices(OperatorKind::curl,
                                                 trunc.n_max, trunc.m_max,
                                                 domain))
    curl_.push_back(normalize_radial(make_record(idx, domain), domain));
}

void BasisSet::eval_all(const SphericalPoint& p,
                        std::vector<SphericalVector>& out) const {
  out.resize(graddiv_.size() + curl_.size());
  AngularTable tab(trunc_.n_max, p.theta);
  std::vector<double> cosk(trunc_.n_max + 1), sink(trunc_.n_max + 1);
  for (int k = 0; k <= trunc_.n_max; ++k) {
    cosk[k] = std::cos(k * p.phi);
    sink[k] = std::sin(k * p.phi);
  }
  std::unordered_map<int, RadialPair> cache;
  cache.reserve(2 * (trunc_.n_max + 1) * trunc_.m_max);
  auto rad = [&](const MultiIndex& idx) -> const RadialPair& {
    auto [it, fresh] = cache.try_emplace(radial_key(idx));
    if (fresh) it->second = radial_pair(idx, domain_, p.r);
    return it->second;
  };
  size_t slot = 0;
  for (const EigenRecord& rec : graddiv_)
    out[slot++] = assemble_from_tables(rec, rad(rec.index), tab,
                                       cosk[std::abs(rec.index.k)],
                                       sink[std::abs(rec.index.k)]);
  for (const EigenRecord& rec : curl_)
    out[slot++] = assemble_from_tables(rec, rad(rec.index), tab,
                                       cosk[std::abs(rec.index.k)],
                                       sink[std::abs(rec.index.k)]);
}

double SpectralCoefficients::a_norm2() const {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}
double SpectralCoefficients::b_norm2() const {
  double s = 0.0;
  for (double v : b) s += v * v;
  return s;
}
bool SpectralCoefficients::a_is_zero(double tol) const {
  return std::all_of(a.begin(), a.end(),
                     [tol](double v) { return std::abs(v) <= tol; });
}
bool SpectralCoefficients::b_is_zero(double tol) const {
  return std::all_of(b.begin(), b.end(),
                     [tol](double v) { return std::abs(v) <= tol; });
}

SpectralCoefficients zero_coefficients(const Truncation& trunc,
                                       const BallDomain& domain) {
  SpectralCoefficients c;
  c.trunc = trunc;
  c.domain = domain;
  c.a_indices =
      enumerate_indices(OperatorKind::graddiv, trunc.n_max, trunc.m_max, domain);
  c.b_indices =
      enumerate_indices(OperatorKind::curl, trunc.n_max, trunc.m_max, domain);
  c.a.assign(c.a_indices.size(), 0.0);
  c.b.assign(c.b_indices.size(), 0.0);
  return c;
}

namespace {

SpectralCoefficients analyze_once(const VectorField& f, const BasisSet& basis,
                                  const QuadratureGrid& grid) {
  SpectralCoefficients c = zero_coefficients(basis.truncation(), basis.domain());
  std::vector<SphericalVector> vals;
  const size_t na = c.a.size();
  for (size_t i = 0; i < grid.r_nodes().size(); ++i) {
    for (size_t j = 0; j < grid.theta_nodes().size(); ++j) {
      const double w_rt = grid.r_weights()[i] * grid.theta_weights()[j];
      for (double ph : grid.phi_nodes()) {
        const SphericalPoint p{grid.r_nodes()[i], grid.theta_nodes()[j], ph};
        const SphericalVector fv = f(p);
        basis.eval_all(p, vals);
        for (size_t s = 0; s < vals.size(); ++s) {
          const double dot = fv.u_r * vals[s].u_r +
                             fv.u_theta * vals[s].u_theta +
                             fv.u_phi * vals[s].u_phi;
          if (s < na)
            c.a[s] += w_rt * dot;
          else
            c.b[s - na] += w_rt * dot;
        }
      }
    }
  }
  for (double& v : c.a) v *= grid.phi_weight();
  for (double& v : c.b) v *= grid.phi_weight();
  return c;
}

}  // namespace

SpectralCoefficients analyze(const VectorField& f, const BasisSet& basis,
                             const QuadratureGrid& grid,
                             const AnalyzeOptions& opts) {
  SpectralCoefficients c = analyze_once(f, basis, grid);
  if (opts.refinement_check > 0.0) {
    const SpectralCoefficients fine = analyze_once(f, basis, grid.refined());
    double delta = 0.0;
    for (size_t i = 0; i < c.a.size(); ++i)
      delta = std::max(delta, std::abs(c.a[i] - fine.a[i]));
    for (size_t i = 0; i < c.b.size(); ++i)
      delta = std::max(delta, std::abs(c.b[i] - fine.b[i]));
    if (delta > opts.refinement_check)
      throw ResolutionError(
          "analyze: coefficients moved by " + std::to_string(delta) +
          " under grid refinement; the quadrature grid is too coarse");
    c = fine;
  }
  if (opts.clip > 0.0) {
    for (double& v : c.a)
      if (std::abs(v) < opts.clip) v = 0.0;
    for (double& v : c.b)
      if (std::abs(v) < opts.clip) v = 0.0;
  }
  return c;
}

VectorField synthesize(const SpectralCoefficients& c,
                       std::shared_ptr<const BasisSet> basis) {
  return [c, basis](const SphericalPoint& p) {
    std::vector<SphericalVector> vals;
    basis->eval_all(p, vals);
    SphericalVector out;
    const size_t na = c.a.size();
    for (size_t s = 0; s < vals.size(); ++s) {
      const double w = s < na ? c.a[s] : c.b[s - na];
      out.u_r += w * vals[s].u_r;
      out.u_theta += w * vals[s].u_theta;
      out.u_phi += w * vals[s].u_phi;
    }
    return out;
  };
}

double reconstruction_error(const VectorField& f, const SpectralCoefficients& c,
                            const BasisSet& basis, const QuadratureGrid& grid) {
  std::vector<SphericalVector> vals;
  const size_t na = c.a.size();
  double sum = 0.0;
  for (size_t i = 0; i < grid.r_nodes().size(); ++i)
    for (size_t j = 0; j < grid.theta_nodes().size(); ++j) {
      const double w_rt = grid.r_weights()[i] * grid.theta_weights()[j];
      for (double ph : grid.phi_nodes()) {
        const SphericalPoint p{grid.r_nodes()[i], grid.theta_nodes()[j], ph};
        SphericalVector d = f(p);
        basis.eval_all(p, vals);
        for (size_t s = 0; s < vals.size(); ++s) {
          const double w = s < na ? c.a[s] : c.b[s - na];
          d.u_r -= w * vals[s].u_r;
          d.u_theta -= w * vals[s].u_theta;
          d.u_phi -= w * vals[s].u_phi;
        }
        sum += w_rt * (d.u_r * d.u_r + d.u_theta * d.u_theta + d.u_phi * d.u_phi);
      }
    }
  return std::sqrt(sum * grid.phi_weight());
}

SpectralCoefficients project_A(SpectralCoefficients c) {
  std::fill(c.b.begin(), c.b.end(), 0.0);
  return c;
}

SpectralCoefficients project_V(SpectralCoefficients c) {
  std::fill(c.a.begin(), c.a.end(), 0.0);
  return c;
}

namespace {

void require_potential(const SpectralCoefficients& c, const char* who) {
  if (!c.b_is_zero())
    throw SubspaceError(std::string(who) +
                        ": curl-part coefficients must be zero (the operator "
                        "acts on the potential class); project first");
}

void require_vortex(const SpectralCoefficients& c, const char* who) {
  if (!c.a_is_zero())
    throw SubspaceError(std::string(who) +
                        ": graddiv-part coefficients must be zero (the "
                        "operator acts on the vortex class); project first");
}

double nu_of(const MultiIndex& idx, const BallDomain& domain) {
  return bessel_prime_zero(idx.n, idx.m) / domain.radius;
}

}  // namespace

SpectralCoefficients apply_Nd(SpectralCoefficients c, int power) {
  if (power < 1) throw std::invalid_argument("apply_Nd: power must be >= 1");
  require_potential(c, "apply_Nd");
  for (size_t i = 0; i < c.a.size(); ++i) {
    const double nu = nu_of(c.a_indices[i], c.domain);
    c.a[i] *= std::pow(-nu * nu, power);
  }
  return c;
}

SpectralCoefficients apply_Nd_inverse(SpectralCoefficients c, int power) {
  if (power < 1)
    throw std::invalid_argument("apply_Nd_inverse: power must be >= 1");
  require_potential(c, "apply_Nd_inverse");
  for (size_t i = 0; i < c.a.size(); ++i) {
    const double nu = nu_of(c.a_indices[i], c.domain);
    c.a[i] *= std::pow(-nu * nu, -power);
  }
  return c;
}

SpectralCoefficients apply_S(SpectralCoefficients c, int power) {
  if (power < 1) throw std::invalid_argument("apply_S: power must be >= 1");
  require_vortex(c, "apply_S");
  for (size_t i = 0; i < c.b.size(); ++i)
    c.b[i] *= std::pow(curl_eigenvalue(c.b_indices[i], c.domain), power);
  return c;
}

SpectralCoefficients apply_S_inverse(SpectralCoefficients c, int power) {
  if (power < 1)
    throw std::invalid_argument("apply_S_inverse: power must be >= 1");
  require_vortex(c, "apply_S_inverse");
  for (size_t i = 0; i < c.b.size(); ++i)
    c.b[i] *= std::pow(curl_eigenvalue(c.b_indices[i], c.domain), -power);
  return c;
}

SpectralCoefficients resolvent_Nd(SpectralCoefficients c, double shift) {
  require_potential(c, "resolvent_Nd");
  const double tol = std::max(1e-10 * std::abs(shift), 1e-12);
  // admissibility: the shift must keep its distance from the spectrum
  // {-nu_j^2} of the extension, and the diagonal denominators must not
  // degenerate either
  for (size_t i = 0; i < c.a.size(); ++i) {
    const double nu = nu_of(c.a_indices[i], c.domain);
    if (std::abs(shift - (-nu * nu)) < tol ||
        std::abs(-nu * nu + shift) < tol)
      throw SpectrumCollisionError(
          "resolvent_Nd: shift " + std::to_string(shift) +
              " collides with the spectrum at " + to_string(c.a_indices[i]) +
              " (eigenvalue " + std::to_string(-nu * nu) + ")",
          c.a_indices[i]);
  }
  for (size_t i = 0; i < c.a.size(); ++i) {
    const double nu = nu_of(c.a_indices[i], c.domain);
    c.a[i] /= -nu * nu + shift;
  }
  return c;
}

ScaleNorm scale_norm(const SpectralCoefficients& c, Scale scale, int order) {
  ScaleNorm out;
  out.scale = scale;
  out.order = order;
  double sum = 0.0;
  if (scale == Scale::A) {
    for (size_t i = 0; i < c.a.size(); ++i) {
      const double nu = nu_of(c.a_indices[i], c.domain);
      sum += std::pow(nu, 2.0 * order) * c.a[i] * c.a[i];
    }
  } else {
    for (size_t i = 0; i < c.b.size(); ++i) {
      const double lam =
          std::abs(curl_eigenvalue(c.b_indices[i], c.domain));
      sum += std::pow(lam, 2.0 * order) * c.b[i] * c.b[i];
    }
  }
  out.value = std::sqrt(sum);
  return out;
}

SolveReport solve_graddiv_power(const SpectralCoefficients& v, int k) {
  if (k < 1)
    throw std::invalid_argument("solve_graddiv_power: k must be >= 1");
  require_potential(v, "solve_graddiv_power");
  SolveReport rep;
  rep.solution = apply_Nd_inverse(v, 2 * k);
  rep.rhs_dual_norm = scale_norm(v, Scale::A, -2 * k);
  const SpectralCoefficients back = apply_Nd(rep.solution, 2 * k);
  double defect = 0.0;
  for (size_t i = 0; i < v.a.size(); ++i)
    defect = std::max(defect, std::abs(back.a[i] - v.a[i]));
  rep.roundtrip_residual = defect;
  return rep;
}

SolveReport solve_curl_power(const SpectralCoefficients& v, int m) {
  if (m < 1) throw std::invalid_argument("solve_curl_power: m must be >= 1");
  require_vortex(v, "solve_curl_power");
  SolveReport rep;
  rep.solution = apply_S_inverse(v, 2 * m);
  rep.rhs_dual_norm = scale_norm(v, Scale::W, -2 * m);
  const SpectralCoefficients back = apply_S(rep.solution, 2 * m);
  double defect = 0.0;
  for (size_t i = 0; i < v.b.size(); ++i)
    defect = std::max(defect, std::abs(back.b[i] - v.b[i]));
  rep.roundtrip_residual = defect;
  return rep;
}

}  // namespace ballspec
