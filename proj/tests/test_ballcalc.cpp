#include "doctest.h"

#include <cmath>
#include <vector>

#include "ballspec/ballcalc.hpp"
#include "ballspec/eigenbasis.hpp"
#include "ballspec/quadrature.hpp"

using namespace ballspec;

namespace {
const BallDomain kUnit{1.0};
}

TEST_CASE("quadrature grid: weights positive, sum to the ball volume, no "
          "nodes on poles or center") {
  for (double R : {1.0, 2.5}) {
    const QuadratureGrid grid(BallDomain{R});
    const double volume = 4.0 * kPi * R * R * R / 3.0;
    CHECK(std::abs(grid.total_weight() - volume) <= 1e-12 * volume);
    for (double w : grid.r_weights()) CHECK(w > 0.0);
    for (double w : grid.theta_weights()) CHECK(w > 0.0);
    for (double r : grid.r_nodes()) {
      CHECK(r > 0.0);
      CHECK(r < R);
    }
    for (double th : grid.theta_nodes()) CHECK(std::sin(th) > 1e-3);
  }
}

TEST_CASE("radial rule: exact for integrands of degree 2 N_r - 1 including "
          "the Jacobian") {
  const int n_r = 10;
  const QuadratureGrid grid(kUnit, {n_r, 4, 4});
  // the weights carry r^2, so p + 2 <= 2 n_r - 1 is the exactness window
  for (int p : {0, 5, 2 * n_r - 3}) {
    double got = 0.0;
    for (size_t i = 0; i < grid.r_nodes().size(); ++i)
      got += grid.r_weights()[i] * std::pow(grid.r_nodes()[i], p);
    const double expected = 1.0 / (p + 3.0);  // int_0^1 r^p r^2 dr
    CHECK(std::abs(got - expected) <= 1e-14);
  }
  // one degree above the window the rule is no longer exact
  double got = 0.0;
  for (size_t i = 0; i < grid.r_nodes().size(); ++i)
    got += grid.r_weights()[i] * std::pow(grid.r_nodes()[i], 2 * n_r - 1);
  CHECK(std::abs(got - 1.0 / (2 * n_r + 2.0)) > 1e-14);
}

TEST_CASE("inner_product: volume, orthogonality, normalization") {
  const QuadratureGrid grid(kUnit);
  const VectorField ez = [](const SphericalPoint& p) {
    // constant cartesian unit vector expressed in the spherical frame
    return SphericalVector{std::cos(p.theta), -std::sin(p.theta), 0.0,
                           Frame::spherical};
  };
  const double volume = 4.0 * kPi / 3.0;
  CHECK(std::abs(inner_product(ez, ez, grid) - volume) <= 1e-10 * volume);

  const EigenRecord qa = normalize_radial(
      make_record({1, 1, 0, OperatorKind::graddiv, BranchSign::plus}, kUnit),
      kUnit);
  const EigenRecord qb = normalize_radial(
      make_record({1, 1, 0, OperatorKind::curl, BranchSign::plus}, kUnit),
      kUnit);
  const EigenRecord qc = normalize_radial(
      make_record({1, 1, 0, OperatorKind::curl, BranchSign::minus}, kUnit),
      kUnit);
  CHECK(std::abs(inner_product(spherical_field(qa, kUnit),
                               spherical_field(qb, kUnit), grid)) <= 1e-6);
  CHECK(std::abs(inner_product(spherical_field(qb, kUnit),
                               spherical_field(qc, kUnit), grid)) <= 1e-6);
  CHECK(inner_product(spherical_field(qb, kUnit), spherical_field(qb, kUnit),
                      grid) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("fd_curl: exact on linear fields, annihilates gradients") {
  auto rotation = [](const Vec3& q) { return Vec3{-q.y, q.x, 0.0}; };
  auto gradient = [](const Vec3& q) { return 2.0 * q; };  // grad |x|^2
  const Vec3 p{0.2, -0.1, 0.3};
  const Vec3 c = fd_curl(rotation, p, 0.02, kUnit);
  CHECK(std::abs(c.x) <= 1e-10);
  CHECK(std::abs(c.y) <= 1e-10);
  CHECK(c.z == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fd_curl(gradient, p, 0.02, kUnit).norm() <= 1e-10);
  CHECK(std::abs(fd_div(gradient, p, 0.02, kUnit) - 6.0) <= 1e-9);

  auto identity = [](const Vec3& q) { return q; };
  CHECK(fd_div(identity, p, 0.02, kUnit) == doctest::Approx(3.0).epsilon(1e-10));

  CHECK_THROWS_AS(fd_curl(rotation, Vec3{0.99, 0.0, 0.0}, 0.02, kUnit),
                  StencilError);
}

TEST_CASE("fd_grad of the eigen potential matches the analytic field") {
  const EigenRecord rec = normalize_radial(
      make_record({1, 1, 0, OperatorKind::graddiv, BranchSign::plus}, kUnit),
      kUnit);
  auto g = [&](const Vec3& q) {
    return eval_graddiv_potential(rec, kUnit, to_spherical(q));
  };
  const auto field = cartesian_field(rec, kUnit);
  for (const Vec3& p : sample_interior_points(20, 0.9, 99)) {
    const Vec3 grad = fd_grad(g, p, 5e-4, kUnit);
    CHECK((grad - field(p)).norm() <= 1e-6);
  }
}

TEST_CASE("laplacian identity: grad div - rot rot equals the vector laplacian "
          "on a polynomial field") {
  auto f = [](const Vec3& q) {
    return Vec3{q.x * q.x * q.y, q.y * q.y * q.z, q.z * q.z * q.x};
  };
  const double h = 0.02;
  for (const Vec3& p : sample_interior_points(10, 0.8, 17)) {
    const Vec3 gd = fd_graddiv(f, p, h, kUnit);
    auto rot = [&](const Vec3& q) { return fd_curl(f, q, h, kUnit); };
    const Vec3 rr = fd_curl(rot, p, h, kUnit);
    const Vec3 lap{2.0 * p.y, 2.0 * p.z, 2.0 * p.x};  // componentwise laplacian
    CHECK((gd - rr - lap).norm() <= 1e-6);
  }
}

TEST_CASE("the differential operators annihilate each other") {
  // rot(grad h) = 0 for h = x^2 y^2 z, grad div(rot G) = 0 for a cubic G
  auto grad_h = [](const Vec3& q) {
    return Vec3{2.0 * q.x * q.y * q.y * q.z, 2.0 * q.x * q.x * q.y * q.z,
                q.x * q.x * q.y * q.y};
  };
  auto rot_g = [](const Vec3& q) {
    // rot of G = (y^2 z^2, 0, x^2 y), analytically divergence-free
    return Vec3{q.x * q.x, 2.0 * q.y * q.y * q.z - 2.0 * q.x * q.y,
                -2.0 * q.y * q.z * q.z};
  };
  for (const Vec3& p : sample_interior_points(10, 0.8, 23)) {
    CHECK(fd_curl(grad_h, p, 0.01, kUnit).norm() <= 1e-9);
    CHECK(fd_graddiv(rot_g, p, 0.01, kUnit).norm() <= 1e-9);
    CHECK(std::abs(fd_div(rot_g, p, 0.01, kUnit)) <= 1e-9);
  }
}

TEST_CASE("verify_eigenpair: curl (1,1,0) within tolerance at the default "
          "step") {
  const EigenRecord rec = normalize_radial(
      make_record({1, 1, 0, OperatorKind::curl, BranchSign::plus}, kUnit),
      kUnit);
  const ResidualReport rep = verify_eigenpair(rec, kUnit);
  CHECK(rep.eigen_residual <= 1e-3);
  CHECK(rep.div_residual <= 1e-3);
  CHECK(rep.boundary_flux <= 1e-10);
  CHECK(rep.gram_defect <= 1e-6);
  CHECK(rep.fd_order == 2);
}

TEST_CASE("verify_eigenpair: graddiv (0,1,0) rot-free within tolerance") {
  const EigenRecord rec = normalize_radial(
      make_record({0, 1, 0, OperatorKind::graddiv, BranchSign::plus}, kUnit),
      kUnit);
  const ResidualReport rep = verify_eigenpair(rec, kUnit);
  CHECK(rep.eigen_residual <= 1e-3);
  CHECK(rep.div_residual <= 1e-3);  // rot residual for this family
  CHECK(rep.boundary_flux <= 1e-10);
}

TEST_CASE("verify_eigenpair: halving h shows second-order convergence") {
  const EigenRecord rec = normalize_radial(
      make_record({2, 1, 1, OperatorKind::curl, BranchSign::plus}, kUnit),
      kUnit);
  VerifyConfig coarse, fine;
  coarse.h = 0.02;
  fine.h = 0.01;
  const double r1 = verify_eigenpair(rec, kUnit, coarse).eigen_residual;
  const double r2 = verify_eigenpair(rec, kUnit, fine).eigen_residual;
  CHECK(r1 / r2 >= 3.0);
  CHECK(r1 / r2 <= 5.5);
}

TEST_CASE("verify_eigenpair: Richardson order raises accuracy at the same "
          "base step") {
  const EigenRecord rec = normalize_radial(
      make_record({3, 3, 2, OperatorKind::curl, BranchSign::minus}, kUnit),
      kUnit);
  VerifyConfig plain, rich;
  rich.fd_order = 4;
  const ResidualReport rp = verify_eigenpair(rec, kUnit, plain);
  const ResidualReport rr = verify_eigenpair(rec, kUnit, rich);
  CHECK(rr.eigen_residual < 0.05 * rp.eigen_residual);
  CHECK(rr.eigen_residual <= 1e-3);
}

TEST_CASE("verify_adjointness: eigenfield pairs are symmetric to quadrature "
          "accuracy") {
  const QuadratureGrid grid(kUnit, {32, 32, 48});
  const EigenRecord u = normalize_radial(
      make_record({1, 1, 0, OperatorKind::curl, BranchSign::plus}, kUnit),
      kUnit);
  const EigenRecord v = normalize_radial(
      make_record({2, 1, 1, OperatorKind::curl, BranchSign::minus}, kUnit),
      kUnit);
  const EigenRecord w = normalize_radial(
      make_record({1, 1, 0, OperatorKind::graddiv, BranchSign::plus}, kUnit),
      kUnit);
  CHECK(verify_adjointness(u, v, kUnit, grid) <= 1e-6);
  CHECK(verify_adjointness(u, u, kUnit, grid) == 0.0);  // symmetric by formula
  CHECK(verify_adjointness(u, w, kUnit, grid) <= 1e-6);
}

TEST_CASE("interior sampling is deterministic for a fixed seed") {
  const auto a = sample_interior_points(50, 0.9, 1234);
  const auto b = sample_interior_points(50, 0.9, 1234);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].norm() < 0.9);
  }
}
