#include "doctest.h"

#include <cmath>
#include <random>

#include "cvx/multipliers.hpp"
#include "cvx/spectral_field.hpp"
#include "test_util.hpp"

using namespace cvx;
using namespace cvx::testutil;

TEST_CASE("transform: zero field and single mode") {
  Grid3 g(16);
  TimeGrid tg(1);
  SpectralScalarField f(g, tg);
  auto phys = transform_to_physical(f);
  for (double v : phys[0]) CHECK(v == 0.0);

  f.set_mode(0, Vector3i(1, 0, 0), Complex(0.5, 0.0));
  phys = transform_to_physical(f);
  for (int i1 = 0; i1 < g.n; ++i1) {
    double want = std::cos(xcoord(g, i1));
    CHECK(std::abs(phys[0][g.phys_index(i1, 3, 7)] - want) < 1e-14);
  }
}

TEST_CASE("transform: random Hermitian round trip") {
  Grid3 g(24);
  TimeGrid tg(2);
  std::mt19937_64 rng(7);
  auto f = random_scalar(g, tg, 9, rng);
  auto phys = transform_to_physical(f);
  auto back = transform_to_spectral(g, tg, phys);
  double scale = slice::max_coeff(f.slices[0]);
  CHECK(max_slice_diff(f, back) / scale < 1e-13);
  CHECK(slice::hermitian_defect(g, f.slices[0]) < 1e-14);
}

TEST_CASE("derivative: exact single modes") {
  Grid3 g(16);
  TimeGrid tg(1);
  auto f = sample_scalar(
      g, tg, [](const Vector3d& x, double) { return std::sin(x[0]); });
  auto d = derivative(f, 1);
  auto want = sample_scalar(
      g, tg, [](const Vector3d& x, double) { return std::cos(x[0]); });
  CHECK(max_slice_diff(d, want) < 1e-14);

  auto c = sample_scalar(g, tg, [](const Vector3d&, double) { return 3.7; });
  auto dc = derivative(c, 2);
  CHECK(slice::max_coeff(dc.slices[0]) == 0.0);
}

TEST_CASE("derivative: product mode against symbolic oracle") {
  Grid3 g(24);
  TimeGrid tg(1);
  auto f = sample_scalar(g, tg, [](const Vector3d& x, double) {
    return std::sin(3 * x[1]) * std::cos(2 * x[2]);
  });
  auto d = derivative(f, 2);
  auto want = sample_scalar(g, tg, [](const Vector3d& x, double) {
    return 3 * std::cos(3 * x[1]) * std::cos(2 * x[2]);
  });
  CHECK(max_slice_diff(d, want) < 1e-13);
}

TEST_CASE("pointwise_product: identity and product-to-sum") {
  Grid3 g(24);
  TimeGrid tg(1);
  std::mt19937_64 rng(3);
  auto one = sample_scalar(g, tg, [](const Vector3d&, double) { return 1.0; });
  auto f = random_scalar(g, tg, g.dealias_cut(), rng);
  auto prod = pointwise_product(one, f);
  // identity up to the dealias truncation of f
  auto ftr = f;
  for (auto& s : ftr.slices) slice::truncate(g, s, g.dealias_cut());
  CHECK(max_slice_diff(prod, ftr) / slice::max_coeff(f.slices[0]) < 1e-13);

  auto c = sample_scalar(
      g, tg, [](const Vector3d& x, double) { return std::cos(x[0]); });
  auto c2 = pointwise_product(c, c);
  auto want = sample_scalar(g, tg, [](const Vector3d& x, double) {
    return 0.5 + 0.5 * std::cos(2 * x[0]);
  });
  CHECK(max_slice_diff(c2, want) < 1e-13);
}

TEST_CASE("pointwise_product: exactness, commutativity, bilinearity") {
  Grid3 g(32);
  TimeGrid tg(1);
  std::mt19937_64 rng(11);
  // combined support stays inside the retained band
  auto f = random_scalar(g, tg, 4, rng);
  auto h = random_scalar(g, tg, 5, rng);
  auto fh = pointwise_product(f, h);
  auto hf = pointwise_product(h, f);
  CHECK(max_slice_diff(fh, hf) == 0.0);

  // exact convolution oracle on a coarse mode set
  Complex conv = 0;
  for (int k1 = -4; k1 <= 4; ++k1)
    for (int k2 = -4; k2 <= 4; ++k2)
      for (int k3 = -4; k3 <= 4; ++k3)
        conv += f.mode(0, Vector3i(k1, k2, k3)) *
                h.mode(0, Vector3i(2 - k1, 1 - k2, -k3));
  CHECK(std::abs(fh.mode(0, Vector3i(2, 1, 0)) - conv) /
            std::abs(conv) < 1e-12);

  auto fplus = lincomb(2.0, f, 1.0, h);
  auto lhs = pointwise_product(fplus, h);
  auto rhs = lincomb(2.0, fh, 1.0, pointwise_product(h, h));
  CHECK(max_slice_diff(lhs, rhs) / slice::max_coeff(lhs.slices[0]) < 1e-12);
}

TEST_CASE("time_derivative: polynomial exactness and spectral error decay") {
  Grid3 g(8);
  TimeGrid tg(9);
  auto c = sample_scalar(g, tg, [](const Vector3d&, double) { return 2.0; });
  CHECK(slice::max_coeff(time_derivative(c).slices[4]) < 1e-13);

  auto lin = sample_scalar(
      g, tg, [](const Vector3d& x, double t) { return t * std::sin(x[0]); });
  auto dlin = time_derivative(lin);
  auto want = sample_scalar(
      g, tg, [](const Vector3d& x, double) { return std::sin(x[0]); });
  CHECK(max_slice_diff(dlin, want) < 1e-12);

  CHECK_THROWS(time_derivative(sample_scalar(
      Grid3(8), TimeGrid(4), [](const Vector3d&, double) { return 0.0; })));

  // 4th-order convergence against the analytic derivative
  auto err = [&](int s) {
    TimeGrid tgs(s);
    auto f = sample_scalar(g, tgs, [](const Vector3d& x, double t) {
      return std::sin(kTwoPi * t) * std::cos(x[0]);
    });
    auto d = time_derivative(f);
    auto dwant = sample_scalar(g, tgs, [](const Vector3d& x, double t) {
      return kTwoPi * std::cos(kTwoPi * t) * std::cos(x[0]);
    });
    return max_slice_diff(d, dwant);
  };
  double e64 = err(65), e128 = err(129);
  CHECK(e128 < 1e-4);
  double order = std::log2(e64 / e128);
  CHECK(order > 3.5);
  CHECK(order < 4.5);
}

TEST_CASE("space_mean") {
  Grid3 g(16);
  TimeGrid tg(2);
  auto c = sample_scalar(g, tg, [](const Vector3d&, double) { return -1.25; });
  CHECK(space_mean(c)[1] == doctest::Approx(-1.25).epsilon(1e-14));
  auto s = sample_scalar(
      g, tg, [](const Vector3d& x, double) { return std::sin(x[0]); });
  CHECK(std::abs(space_mean(s)[0]) < 1e-15);
}

TEST_CASE("vector calculus identities") {
  Grid3 g(16);
  TimeGrid tg(1);
  std::mt19937_64 rng(23);
  auto v = random_vector(g, tg, 5, rng);
  auto f = random_scalar(g, tg, 5, rng);

  auto dc = divergence(curl(v));
  CHECK(slice::max_coeff(dc.slices[0]) /
            slice::max_coeff(v.comp[0].slices[0]) < 1e-12);

  auto cg = curl(gradient(f));
  for (int c = 0; c < 3; ++c)
    CHECK(slice::max_coeff(cg.comp[c].slices[0]) /
              slice::max_coeff(f.slices[0]) < 1e-12);
}

TEST_CASE("reality is preserved through operations") {
  Grid3 g(16);
  TimeGrid tg(1);
  std::mt19937_64 rng(5);
  auto f = random_scalar(g, tg, 6, rng);
  auto g2 = random_scalar(g, tg, 6, rng);
  auto prod = pointwise_product(f, g2);
  CHECK(slice::hermitian_defect(g, prod.slices[0]) < 1e-14);
  auto d = derivative(f, 3);
  CHECK(slice::hermitian_defect(g, d.slices[0]) < 1e-14);
}

TEST_CASE("grid mismatch raises") {
  Grid3 a(16), b(24);
  TimeGrid tg(1);
  SpectralScalarField fa(a, tg), fb(b, tg);
  CHECK_THROWS(pointwise_product(fa, fb));
}
