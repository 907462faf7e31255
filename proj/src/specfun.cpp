#include "ballspec/specfun.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>

namespace ballspec {

namespace {

void check_order(int n) {
  if (n < 0 || n > kMaxOrder)
    throw OrderRangeError("psi: order n=" + std::to_string(n) +
                          " outside supported range [0, " +
                          std::to_string(kMaxOrder) + "]");
}

double double_factorial_odd(int n) {  // (2n+1)!!
  double f = 1.0;
  for (int k = 3; k <= 2 * n + 1; k += 2) f *= k;
  return f;
}

// Power series psi_n(z) = sum_j (-1)^j z^{n+2j} / (2^j j! (2n+2j+1)!!),
// summed to `terms` terms.
double psi_series(int n, double z, int terms) {
  const double z2h = 0.5 * z * z;
  double term = std::pow(z, n) / double_factorial_odd(n);
  double sum = term;
  for (int j = 1; j < terms; ++j) {
    term *= -z2h / (j * (2.0 * n + 2.0 * j + 1.0));
    sum += term;
  }
  return sum;
}

double psi_prime_series(int n, double z, int terms) {
  // termwise derivative of the series above
  if (z == 0.0) return (n == 1) ? 1.0 / 3.0 : 0.0;
  const double z2h = 0.5 * z * z;
  double term = std::pow(z, n) / double_factorial_odd(n);  // z^{n+2j} part
  double sum = n * term / z;
  for (int j = 1; j < terms; ++j) {
    term *= -z2h / (j * (2.0 * n + 2.0 * j + 1.0));
    sum += (n + 2.0 * j) * term / z;
  }
  return sum;
}

// Downward (Miller) recurrence, normalized against psi_0 or psi_1.
double psi_downward(int n, double z) {
  const int start = std::max(n, static_cast<int>(z)) + 32;
  double fp = 0.0;          // f_{k+1}
  double fc = 1e-300;       // f_k
  double fn = 0.0;          // value at order n (unnormalized)
  for (int k = start; k >= 0; --k) {
    const double fm = (2.0 * k + 3.0) / z * fc - fp;
    fp = fc;
    fc = fm;
    if (k == n) fn = fc;
    if (std::abs(fc) > 1e250) {  // rescale to avoid overflow
      fc *= 1e-250;
      fp *= 1e-250;
      fn *= 1e-250;
    }
  }
  // fc = f_0, fp = f_1; normalize with whichever reference is larger
  const double j0 = std::sin(z) / z;
  const double j1 = std::sin(z) / (z * z) - std::cos(z) / z;
  if (std::abs(fc) >= std::abs(fp)) return fn * (j0 / fc);
  return fn * (j1 / fp);
}

}  // namespace

double psi(int n, double z) {
  check_order(n);
  if (!std::isfinite(z)) throw std::invalid_argument("psi: non-finite argument");
  // parity: psi_n(-z) = (-1)^n psi_n(z)
  double sgn = 1.0;
  if (z < 0.0) {
    z = -z;
    if (n & 1) sgn = -1.0;
  }
  if (z < 1e-2 * (2.0 * n + 1.0)) return sgn * psi_series(n, z, 4);
  switch (n) {
    case 0:
      return sgn * std::sin(z) / z;
    case 1:
      return sgn * (std::sin(z) / (z * z) - std::cos(z) / z);
    case 2:
      return sgn * ((3.0 / (z * z * z) - 1.0 / z) * std::sin(z) -
                    3.0 * std::cos(z) / (z * z));
    default:
      break;
  }
  if (z > n + 1.5) {
    // forward recurrence is stable once z exceeds the order
    double jm = std::sin(z) / z;
    double jc = std::sin(z) / (z * z) - std::cos(z) / z;
    for (int k = 1; k < n; ++k) {
      const double jn = (2.0 * k + 1.0) / z * jc - jm;
      jm = jc;
      jc = jn;
    }
    return sgn * jc;
  }
  return sgn * psi_downward(n, z);
}

double psi_prime(int n, double z) {
  check_order(n);
  if (!std::isfinite(z))
    throw std::invalid_argument("psi_prime: non-finite argument");
  double sgn = 1.0;  // psi'_n(-z) = (-1)^{n+1} psi'_n(z)
  if (z < 0.0) {
    z = -z;
    if (!(n & 1)) sgn = -1.0;
  }
  if (z < 1e-2 * (2.0 * n + 1.0)) return sgn * psi_prime_series(n, z, 4);
  if (n == 0) return -sgn * psi(1, z);
  return sgn * (psi(n - 1, z) - (n + 1.0) / z * psi(n, z));
}

double psi_over_x(int n, double x) {
  check_order(n);
  double sgn = 1.0;  // even function of x for odd n, odd for even n
  if (x < 0.0) {
    x = -x;
    if (!(n & 1)) sgn = -1.0;
  }
  if (x < 1e-2 * (2.0 * n + 1.0)) {
    if (x == 0.0)
      return (n == 1) ? sgn / 3.0 : 0.0;
    return sgn * psi_series(n, x, 4) / x;
  }
  return sgn * psi(n, x) / x;
}

// ---------------------------------------------------------------------------
// Zero tables

namespace {

double eval_target(ZeroTable::Kind kind, int n, double z) {
  return kind == ZeroTable::Kind::function_zero ? psi(n, z) : psi_prime(n, z);
}

double eval_target_deriv(ZeroTable::Kind kind, int n, double z) {
  if (kind == ZeroTable::Kind::function_zero) return psi_prime(n, z);
  // psi''_n from the spherical Bessel equation
  return -2.0 / z * psi_prime(n, z) - (1.0 - n * (n + 1.0) / (z * z)) * psi(n, z);
}

}  // namespace

void ZeroTable::extend(int n, int m) {
  if (n >= static_cast<int>(zeros_.size())) zeros_.resize(n + 1);
  auto& row = zeros_[n];
  if (static_cast<int>(row.size()) >= m) return;

  const double step = kPi / 8.0;
  // restart strictly past the last stored root: at the root itself the
  // residual sign is roundoff noise; consecutive zeros are > pi/2 apart
  double z = row.empty() ? 0.05 : row.back() + 0.05;
  double f = eval_target(kind_, n, z);
  while (static_cast<int>(row.size()) < m) {
    double z1 = z + step;
    double f1 = eval_target(kind_, n, z1);
    if (f == 0.0) {  // landed exactly on a zero (never in practice)
      row.push_back(z);
      z = z1;
      f = f1;
      continue;
    }
    if (f * f1 < 0.0) {
      // bracketed: bisection, then Newton polish
      double a = z, b = z1, fa = f;
      for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = eval_target(kind_, n, mid);
        if (fa * fm <= 0.0) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      double root = 0.5 * (a + b);
      for (int it = 0; it < 3; ++it) {
        const double fr = eval_target(kind_, n, root);
        const double dr = eval_target_deriv(kind_, n, root);
        if (dr == 0.0) break;
        const double next = root - fr / dr;
        if (next > a - (b - a) && next < b + (b - a)) root = next;
      }
      assert(std::abs(eval_target(kind_, n, root)) <= tolerance_ ||
             std::abs(eval_target(kind_, n, root)) <=
                 1e-12 * std::abs(eval_target_deriv(kind_, n, root)));
      row.push_back(root);
    }
    z = z1;
    f = f1;
  }
}

double ZeroTable::zero(int n, int m) {
  check_order(n);
  if (m < 1 || m > 512)
    throw OrderRangeError("zero table: index m=" + std::to_string(m) +
                          " outside capacity");
  extend(n, m);
  return zeros_[n][m - 1];
}

std::map<std::pair<int, int>, double> ZeroTable::entries() const {
  std::map<std::pair<int, int>, double> out;
  for (int n = 0; n < static_cast<int>(zeros_.size()); ++n)
    for (int m = 1; m <= static_cast<int>(zeros_[n].size()); ++m)
      out[{n, m}] = zeros_[n][m - 1];
  return out;
}

namespace {
std::mutex zero_mutex;
ZeroTable& function_zeros() {
  static ZeroTable t(ZeroTable::Kind::function_zero);
  return t;
}
ZeroTable& derivative_zeros() {
  static ZeroTable t(ZeroTable::Kind::derivative_zero);
  return t;
}
}  // namespace

double bessel_zero(int n, int m) {
  std::lock_guard<std::mutex> lock(zero_mutex);
  return function_zeros().zero(n, m);
}

double bessel_prime_zero(int n, int m) {
  std::lock_guard<std::mutex> lock(zero_mutex);
  return derivative_zeros().zero(n, m);
}

std::map<std::pair<int, int>, double> zero_table_snapshot(ZeroTable::Kind kind,
                                                          int n_max, int m_max) {
  std::lock_guard<std::mutex> lock(zero_mutex);
  ZeroTable& t = kind == ZeroTable::Kind::function_zero ? function_zeros()
                                                        : derivative_zeros();
  std::map<std::pair<int, int>, double> out;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 1; m <= m_max; ++m) out[{n, m}] = t.zero(n, m);
  return out;
}

// ---------------------------------------------------------------------------
// Spherical harmonics and the angular operators

AngularTable::AngularTable(int n_max, double theta) : n_max_(n_max) {
  check_order(n_max);
  const int count = (n_max + 1) * (n_max + 2) / 2;
  p_.assign(count, 0.0);
  tau_.assign(count, 0.0);
  pi_.assign(count, 0.0);

  const double x = std::cos(theta);
  const double s = std::sin(theta);

  if (std::abs(s) < 1e-9) {
    // exact pole limits: Pbar_n^k ~ C_{nk} sin^k(theta)
    const bool north = x > 0.0;
    for (int n = 0; n <= n_max; ++n) {
      const double p0 = std::sqrt((2.0 * n + 1.0) / (4.0 * kPi));
      p_[slot(n, 0)] = north ? p0 : (n & 1 ? -p0 : p0);
      if (n >= 1) {
        const double c1 =
            -0.5 * std::sqrt((2.0 * n + 1.0) * n * (n + 1.0) / (4.0 * kPi));
        const double cp = north ? c1 : ((n & 1) ? c1 : -c1);  // (-1)^{n+1} c1
        tau_[slot(n, 1)] = north ? cp : -cp;
        pi_[slot(n, 1)] = cp;
      }
    }
    return;
  }

  // diagonal recurrence for Pbar_k^k, then upward in n
  p_[slot(0, 0)] = std::sqrt(1.0 / (4.0 * kPi));
  for (int k = 1; k <= n_max; ++k)
    p_[slot(k, k)] =
        -std::sqrt(1.0 + 0.5 / k) * s * p_[slot(k - 1, k - 1)];
  for (int k = 0; k < n_max; ++k) {
    p_[slot(k + 1, k)] = std::sqrt(2.0 * k + 3.0) * x * p_[slot(k, k)];
    for (int n = k + 2; n <= n_max; ++n) {
      const double a = std::sqrt((4.0 * n * n - 1.0) / (n * n - k * k));
      const double b =
          std::sqrt(((n - 1.0) * (n - 1.0) - k * k) / (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
      p_[slot(n, k)] = a * (x * p_[slot(n - 1, k)] - b * p_[slot(n - 2, k)]);
    }
  }

  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      pi_[slot(n, k)] = k * p_[slot(n, k)] / s;
      double num = n * x * p_[slot(n, k)];
      if (n > 0 && k < n) {
        const double a =
            std::sqrt((static_cast<double>(n) * n - k * k) * (2.0 * n + 1.0) /
                      (2.0 * n - 1.0));
        num -= a * p_[slot(n - 1, k)];
      } else if (n > 0 && k == n) {
        // Pbar_{n-1}^n = 0; nothing to subtract
      }
      tau_[slot(n, k)] = num / s;
    }
  }
}

Complex sph_harmonic(int n, int k, double theta, double phi) {
  check_order(n);
  if (std::abs(k) > n)
    throw IndexError("sph_harmonic: |k| > n");
  AngularTable tab(n, theta);
  const int ka = std::abs(k);
  double pv = tab.p(n, ka);
  if (k < 0 && (ka & 1)) pv = -pv;  // Y_n^{-k} = (-1)^k conj(Y_n^k)
  return pv * std::polar(1.0, k * phi);
}

Complex h_apply(int n, int k, double theta, double phi) {
  check_order(n);
  if (std::abs(k) > n) throw IndexError("h_apply: |k| > n");
  AngularTable tab(n, theta);
  const int ka = std::abs(k);
  double tau = tab.tau(n, ka);
  double pik = tab.pi_k(n, ka);
  if (k < 0) {
    const double par = (ka & 1) ? -1.0 : 1.0;
    tau *= par;
    pik *= -par;
  }
  // H Y = i (k Pbar / sin theta + d Pbar / d theta) e^{ik phi}
  return Complex(0.0, 1.0) * (pik + tau) * std::polar(1.0, k * phi);
}

Complex k_apply(const SphereScalarSample& w, double theta) {
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-12)
    throw PoleError("k_apply: evaluation at a coordinate pole");
  const double c = std::cos(theta);
  return (c / s) * w.value + w.d_theta + Complex(0.0, 1.0) / s * w.d_phi;
}

Complex k_apply(const std::function<Complex(double, double)>& w, double theta,
                double phi, double step) {
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-12)
    throw PoleError("k_apply: evaluation at a coordinate pole");
  auto d5 = [&](auto f) {
    return (f(-2.0) - 8.0 * f(-1.0) + 8.0 * f(1.0) - f(2.0)) / (12.0 * step);
  };
  SphereScalarSample sample;
  sample.value = w(theta, phi);
  sample.d_theta = d5([&](double q) { return w(theta + q * step, phi); });
  sample.d_phi = d5([&](double q) { return w(theta, phi + q * step); });
  return k_apply(sample, theta);
}

// ---------------------------------------------------------------------------
// The tangential line integral Phi_n

Complex phi_tangential(int n, double x) {
  if (n < 1)
    throw OrderRangeError("phi_tangential: order n must be >= 1");
  check_order(n);
  const double denom = n * (n + 1.0);
  if (std::abs(x) < 1e-2 * (2.0 * n + 1.0)) {
    // series of psi and psi' keeps the small-x evaluation exact
    const double jn = psi_series(n, std::abs(x), 6);
    const double jp = psi_prime_series(n, std::abs(x), 6);
    const double ax = std::abs(x);
    Complex v((jn + ax * jp) / denom, ax * jn / denom);
    if (x < 0.0) {  // Phi_n(-x) = (-1)^n conj(Phi_n(x))
      v = std::conj(v);
      if (n & 1) v = -v;
    }
    return v;
  }
  const double jn = psi(n, x);
  const double jp = psi_prime(n, x);
  return Complex((jn + x * jp) / denom, x * jn / denom);
}

Complex phi_tangential_over_x(int n, double x) {
  if (n < 1)
    throw OrderRangeError("phi_tangential_over_x: order n must be >= 1");
  check_order(n);
  if (std::abs(x) < 1e-2 * (2.0 * n + 1.0)) {
    // Phi_n(x)/x = [ (psi_n/x + psi'_n) + i psi_n ] / (n(n+1)); the real part
    // tends to (n+1)/(n(n+1)(2n+1)!!) x^{n-1}, the imaginary part to 0.
    const double denom = n * (n + 1.0);
    double sgn_even = 1.0, sgn_odd = 1.0;  // parity of x^{n-1} resp. x^n
    double ax = std::abs(x);
    if (x < 0.0) {
      sgn_even = (n & 1) ? 1.0 : -1.0;   // (psi_n/x + psi'_n) has parity n-1
      sgn_odd = (n & 1) ? -1.0 : 1.0;    // psi_n has parity n
    }
    double re, im;
    if (ax == 0.0) {
      re = (n == 1) ? 1.0 / 3.0 : 0.0;
      im = 0.0;
    } else {
      re = (psi_series(n, ax, 6) / ax + psi_prime_series(n, ax, 6)) / denom;
      im = psi_series(n, ax, 6) / denom;
    }
    // note Im[Phi/x] = psi_n(x)/1 ... / (n(n+1)) carries x*psi/x = psi
    return Complex(sgn_even * re, sgn_odd * im);
  }
  return phi_tangential(n, x) / x;
}

namespace {

// int_0^T t^p e^{-i lambda t} dt by the ascending series in (-i lambda T),
// valid (and fast) for |lambda T| <= 1.
Complex power_exp_moment(int p, double lambda, double T) {
  const Complex il(0.0, -lambda);
  Complex term = std::pow(T, p + 1) / (p + 1.0);
  Complex sum = term;
  for (int q = 1; q < 40; ++q) {
    term *= il * T * (static_cast<double>(p + q) / q) / (p + q + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// 15-point Gauss-Legendre on [a, b]
Complex gl15(const std::function<Complex(double)>& f, double a, double b) {
  static const double xk[8] = {0.0,
                               0.2011940939974345,
                               0.3941513470775634,
                               0.5709721726085388,
                               0.7244177313601701,
                               0.8482065834104272,
                               0.9372733924007060,
                               0.9879925180204854};
  static const double wk[8] = {0.2025782419255613, 0.1984314853271116,
                               0.1861610000155622, 0.1662692058169939,
                               0.1395706779261543, 0.1071592204671719,
                               0.0703660474881081, 0.0307532419961173};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Complex sum = wk[0] * f(mid);
  for (int i = 1; i < 8; ++i)
    sum += wk[i] * (f(mid + half * xk[i]) + f(mid - half * xk[i]));
  return half * sum;
}

Complex adaptive_gl(const std::function<Complex(double)>& f, double a, double b,
                    double tol, int depth) {
  const Complex whole = gl15(f, a, b);
  const double mid = 0.5 * (a + b);
  const Complex split = gl15(f, a, mid) + gl15(f, mid, b);
  if (std::abs(whole - split) <= tol || depth >= 24) return split;
  return adaptive_gl(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive_gl(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

Complex phi_integral(int n, double lambda, double r) {
  if (n < 1)
    throw OrderRangeError(
        "phi_integral: order n must be >= 1 (the n = 0 slot is not part of "
        "the curl family)");
  check_order(n);
  if (lambda == 0.0)
    throw std::invalid_argument("phi_integral: lambda must be nonzero");
  if (r <= 0.0) throw std::invalid_argument("phi_integral: r must be positive");

  const double t0 = std::min(r, 1.0 / std::abs(lambda));

  // left piece: term-by-term integration of the series of psi_n
  //   psi_n(lambda t)/t = sum_j c_j t^{n+2j-1},
  //   c_j = (-1)^j lambda^{n+2j} / (2^j j! (2n+2j+1)!!)
  Complex left(0.0, 0.0);
  {
    double c = std::pow(lambda, n) / double_factorial_odd(n);
    for (int j = 0; j < 40; ++j) {
      const Complex contrib = c * power_exp_moment(n + 2 * j - 1, lambda, t0);
      left += contrib;
      if (std::abs(contrib) < 1e-18 * (1.0 + std::abs(left)) && j > 2) break;
      c *= -0.5 * lambda * lambda / ((j + 1.0) * (2.0 * n + 2.0 * j + 3.0));
    }
    left *= std::polar(1.0, lambda * r);  // e^{i lambda r} prefactor
  }

  // right piece: adaptive refinement on the oscillatory remainder
  Complex right(0.0, 0.0);
  if (t0 < r) {
    auto f = [&](double t) {
      return std::polar(1.0, lambda * (r - t)) * psi(n, lambda * t) / t;
    };
    right = adaptive_gl(f, t0, r, 1e-13, 0);
  }
  return left + right;
}

}  // namespace ballspec
