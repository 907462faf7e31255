#include "ballspec/eigenbasis.hpp"

#include <algorithm>
#include <cmath>

namespace ballspec {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

struct RealHarmonic {
  double s = 0.0;   // S(theta, phi), unit sphere norm
  Complex hs{};     // (H S)(theta, phi)
};

// Real degree-n harmonic for signed azimuthal order k (k >= 0: cosine branch,
// k < 0: sine branch) and its H image assembled from the Legendre table.
RealHarmonic real_harmonic(const AngularTable& tab, int n, int k, double phi) {
  const int ka = std::abs(k);
  const double p = tab.p(n, ka);
  const double tau = tab.tau(n, ka);
  const double pik = tab.pi_k(n, ka);
  RealHarmonic out;
  if (k == 0) {
    out.s = p;
    out.hs = Complex(0.0, tau);
    return out;
  }
  const double c = std::cos(ka * phi), s = std::sin(ka * phi);
  if (k > 0) {
    out.s = kSqrt2 * p * c;
    out.hs = kSqrt2 * Complex(-pik * s, tau * c);
  } else {
    out.s = kSqrt2 * p * s;
    out.hs = kSqrt2 * Complex(pik * c, tau * s);
  }
  return out;
}

void require_kind(const EigenRecord& rec, OperatorKind op, const char* who) {
  if (rec.index.op != op)
    throw KindError(std::string(who) + ": record is " +
                    to_string(rec.index.op) + ", expected " + to_string(op));
}

SphericalVector assemble(double f_r, Complex f_t, const RealHarmonic& h) {
  SphericalVector u;
  u.u_r = f_r * h.s;
  const Complex w = f_t * h.hs;  // u_phi + i u_theta
  u.u_phi = w.real();
  u.u_theta = w.imag();
  u.frame = Frame::spherical;
  return u;
}

}  // namespace

void validate_index(const MultiIndex& idx) {
  if (idx.m < 1) throw IndexError("multi-index: m must be >= 1");
  if (std::abs(idx.k) > idx.n) throw IndexError("multi-index: |k| > n");
  if (idx.op == OperatorKind::curl && idx.n < 1)
    throw IndexError(
        "multi-index: curl family starts at n = 1 (the (0,m,0) slot carries "
        "zero amplitude)");
  if (idx.op == OperatorKind::graddiv && idx.n < 0)
    throw IndexError("multi-index: n must be >= 0");
}

namespace {
void require_positive_radius(const BallDomain& domain) {
  if (!(domain.radius > 0.0))
    throw std::invalid_argument("ball radius must be positive");
}
}  // namespace

double curl_eigenvalue(const MultiIndex& idx, const BallDomain& domain) {
  if (idx.op != OperatorKind::curl)
    throw KindError("curl_eigenvalue: index is not a curl index");
  validate_index(idx);
  require_positive_radius(domain);
  const double rho = bessel_zero(idx.n, idx.m);
  return (idx.sign == BranchSign::plus ? rho : -rho) / domain.radius;
}

double graddiv_eigenvalue(const MultiIndex& idx, const BallDomain& domain) {
  if (idx.op != OperatorKind::graddiv)
    throw KindError("graddiv_eigenvalue: index is not a graddiv index");
  validate_index(idx);
  require_positive_radius(domain);
  const double nu = bessel_prime_zero(idx.n, idx.m) / domain.radius;
  return -nu * nu;
}

double eigenvalue_of(const MultiIndex& idx, const BallDomain& domain) {
  return idx.op == OperatorKind::curl ? curl_eigenvalue(idx, domain)
                                      : graddiv_eigenvalue(idx, domain);
}

std::vector<MultiIndex> enumerate_indices(OperatorKind op, int n_max, int m_max,
                                          const BallDomain& domain) {
  const int n0 = op == OperatorKind::curl ? 1 : 0;
  if (n_max < n0 || m_max < 1)
    throw std::invalid_argument("enumerate: range too small for the family");
  std::vector<MultiIndex> out;
  for (int n = n0; n <= n_max; ++n)
    for (int m = 1; m <= m_max; ++m)
      for (int k = -n; k <= n; ++k) {
        if (op == OperatorKind::curl) {
          out.push_back({n, m, k, op, BranchSign::plus});
          out.push_back({n, m, k, op, BranchSign::minus});
        } else {
          out.push_back({n, m, k, op, BranchSign::plus});
        }
      }
  std::stable_sort(out.begin(), out.end(),
                   [&](const MultiIndex& a, const MultiIndex& b) {
                     const double ea = std::abs(eigenvalue_of(a, domain));
                     const double eb = std::abs(eigenvalue_of(b, domain));
                     if (ea != eb) return ea < eb;
                     return lex_less(a, b);
                   });
  return out;
}

std::vector<MultiIndex> enumerate_mixed(int n_max, int m_max,
                                        const BallDomain& domain) {
  std::vector<MultiIndex> out = enumerate_indices(OperatorKind::graddiv, n_max,
                                                  m_max, domain);
  std::vector<MultiIndex> curl =
      enumerate_indices(OperatorKind::curl, n_max, m_max, domain);
  out.insert(out.end(), curl.begin(), curl.end());
  std::stable_sort(out.begin(), out.end(),
                   [&](const MultiIndex& a, const MultiIndex& b) {
                     const double ea = std::abs(eigenvalue_of(a, domain));
                     const double eb = std::abs(eigenvalue_of(b, domain));
                     if (ea != eb) return ea < eb;
                     if (a.op != b.op) return a.op == OperatorKind::graddiv;
                     return lex_less(a, b);
                   });
  return out;
}

EigenRecord make_record(const MultiIndex& idx, const BallDomain& domain) {
  validate_index(idx);
  return {idx, eigenvalue_of(idx, domain), 1.0, 1};
}

SphericalVector eval_curl_field(const EigenRecord& rec, const BallDomain& domain,
                                const SphericalPoint& p) {
  require_kind(rec, OperatorKind::curl, "eval_curl_field");
  validate_index(rec.index);
  const double amp = rec.c * rec.orientation;
  const double lambda = curl_eigenvalue(rec.index, domain);
  const double x = lambda * p.r;
  const double f_r = amp * psi_over_x(rec.index.n, x);
  const Complex f_t = amp * phi_tangential_over_x(rec.index.n, x);
  AngularTable tab(rec.index.n, p.theta);
  return assemble(f_r, f_t, real_harmonic(tab, rec.index.n, rec.index.k, p.phi));
}

SphericalVector eval_graddiv_field(const EigenRecord& rec,
                                   const BallDomain& domain,
                                   const SphericalPoint& p) {
  require_kind(rec, OperatorKind::graddiv, "eval_graddiv_field");
  validate_index(rec.index);
  const double amp = rec.c * rec.orientation;
  const double nu = bessel_prime_zero(rec.index.n, rec.index.m) / domain.radius;
  const double f_r = amp * nu * psi_prime(rec.index.n, nu * p.r);
  // psi_n(nu r)/r, with the removable limit at r = 0
  const double f_t = amp * nu * psi_over_x(rec.index.n, nu * p.r);
  AngularTable tab(rec.index.n, p.theta);
  return assemble(f_r, Complex(f_t, 0.0),
                  real_harmonic(tab, rec.index.n, rec.index.k, p.phi));
}

double eval_graddiv_potential(const EigenRecord& rec, const BallDomain& domain,
                              const SphericalPoint& p) {
  require_kind(rec, OperatorKind::graddiv, "eval_graddiv_potential");
  const double amp = rec.c * rec.orientation;
  const double nu = bessel_prime_zero(rec.index.n, rec.index.m) / domain.radius;
  AngularTable tab(rec.index.n, p.theta);
  return amp * psi(rec.index.n, nu * p.r) *
         real_harmonic(tab, rec.index.n, rec.index.k, p.phi).s;
}

SphericalVector eval_field(const EigenRecord& rec, const BallDomain& domain,
                           const SphericalPoint& p) {
  return rec.index.op == OperatorKind::curl ? eval_curl_field(rec, domain, p)
                                            : eval_graddiv_field(rec, domain, p);
}

SphericalVector eval_axisym_110(const SphericalPoint& p, double rho) {
  const double x = rho * p.r;
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  double s3, sx_over_x;  // (sin x - x cos x)/x^3 and sin(x)/x
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    s3 = 1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0;
    sx_over_x = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  } else {
    s3 = (std::sin(x) - x * std::cos(x)) / (x * x * x);
    sx_over_x = std::sin(x) / x;
  }
  SphericalVector u;
  u.u_r = 2.0 * s3 * ct;
  u.u_theta = (s3 - sx_over_x) * st;
  u.u_phi = s3 * x * st;
  u.frame = Frame::spherical;
  return u;
}

ComplexTangentialPair eval_curl_complex_vw(const EigenRecord& rec,
                                           const BallDomain& domain,
                                           const SphericalPoint& p) {
  require_kind(rec, OperatorKind::curl, "eval_curl_complex_vw");
  const double amp = rec.c * rec.orientation;
  const double lambda = curl_eigenvalue(rec.index, domain);
  const double x = lambda * p.r;
  ComplexTangentialPair out;
  out.v = amp / lambda * psi(rec.index.n, x) *
          sph_harmonic(rec.index.n, rec.index.k, p.theta, p.phi);
  out.w = amp * phi_tangential_over_x(rec.index.n, x) *
          h_apply(rec.index.n, rec.index.k, p.theta, p.phi);
  return out;
}

namespace {

// Deterministic reference sample fixing the basis orientation: first lattice
// point maximizing |S|, first radial lattice point maximizing |radial profile|.
struct ReferenceSample {
  double radial_value = 0.0;  // radial profile at r*
  double angular_value = 0.0; // S at (theta*, phi*)
};

ReferenceSample reference_sample(const EigenRecord& rec,
                                 const BallDomain& domain) {
  const MultiIndex& idx = rec.index;
  ReferenceSample ref;
  double best = -1.0;
  for (int j = 0; j < 64; ++j) {
    const double theta = kPi * (j + 0.5) / 64.0;
    AngularTable tab(idx.n, theta);
    for (int l = 0; l < 128; ++l) {
      const double phi = 2.0 * kPi * l / 128.0;
      const double s = real_harmonic(tab, idx.n, idx.k, phi).s;
      if (std::abs(s) > best * (1.0 + 1e-12)) {
        best = std::abs(s);
        ref.angular_value = s;
      }
    }
  }
  auto radial = [&](double r) {
    if (idx.op == OperatorKind::curl)
      return psi_over_x(idx.n, curl_eigenvalue(idx, domain) * r);
    const double nu = bessel_prime_zero(idx.n, idx.m) / domain.radius;
    return nu * psi_prime(idx.n, nu * r);
  };
  best = -1.0;
  for (int i = 0; i < 32; ++i) {
    const double r = domain.radius * (i + 0.5) / 32.0;
    const double f = radial(r);
    if (std::abs(f) > best * (1.0 + 1e-12)) {
      best = std::abs(f);
      ref.radial_value = f;
    }
  }
  return ref;
}

int orientation_for(const EigenRecord& rec, const BallDomain& domain) {
  const ReferenceSample ref = reference_sample(rec, domain);
  return (ref.radial_value * ref.angular_value >= 0.0) ? 1 : -1;
}

}  // namespace

EigenRecord normalize(const EigenRecord& rec, const BallDomain& domain,
                      const QuadratureGrid& grid, bool check_refinement) {
  EigenRecord unit = rec;
  unit.c = 1.0;
  unit.orientation = 1;
  const double norm = l2_norm(spherical_field(unit, domain), grid);
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw ResolutionError("normalize: quadrature norm not positive");
  EigenRecord out = rec;
  out.c = 1.0 / norm;
  out.orientation = orientation_for(rec, domain);
  if (check_refinement) {
    const double norm2 = l2_norm(spherical_field(unit, domain), grid.refined());
    if (std::abs(norm2 - norm) > 1e-7 * norm)
      throw ResolutionError(
          "normalize: norm unstable under grid refinement; increase the grid");
  }
  return out;
}

EigenRecord normalize_radial(const EigenRecord& rec, const BallDomain& domain,
                             int n_r) {
  const MultiIndex& idx = rec.index;
  validate_index(idx);
  std::vector<double> x, w;
  gauss_legendre(n_r, x, w);
  const double R = domain.radius;
  const double nn1 = idx.n * (idx.n + 1.0);
  double sum = 0.0;
  for (int i = 0; i < n_r; ++i) {
    const double r = 0.5 * R * (x[i] + 1.0);
    const double wr = 0.5 * R * w[i] * r * r;
    double fr, ft2;
    if (idx.op == OperatorKind::curl) {
      const double xx = curl_eigenvalue(idx, domain) * r;
      fr = psi_over_x(idx.n, xx);
      ft2 = std::norm(phi_tangential_over_x(idx.n, xx));
    } else {
      const double nu = bessel_prime_zero(idx.n, idx.m) / R;
      fr = nu * psi_prime(idx.n, nu * r);
      const double ft = nu * psi_over_x(idx.n, nu * r);
      ft2 = ft * ft;
    }
    sum += wr * (fr * fr + nn1 * ft2);
  }
  EigenRecord out = rec;
  out.c = 1.0 / std::sqrt(sum);
  out.orientation = orientation_for(rec, domain);
  return out;
}

VectorField spherical_field(const EigenRecord& rec, const BallDomain& domain) {
  return [rec, domain](const SphericalPoint& p) {
    return eval_field(rec, domain, p);
  };
}

std::function<Vec3(const Vec3&)> cartesian_field(const EigenRecord& rec,
                                                 const BallDomain& domain) {
  return [rec, domain](const Vec3& q) {
    const SphericalPoint p = to_spherical(q);
    const SphericalVector v = to_cartesian(eval_field(rec, domain, p), p);
    return Vec3{v.u_r, v.u_theta, v.u_phi};
  };
}

}  // namespace ballspec
