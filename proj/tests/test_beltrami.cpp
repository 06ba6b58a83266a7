#include "doctest.h"

#include <cmath>
#include <random>

#include "cvx/beltrami.hpp"
#include "cvx/multipliers.hpp"
#include "test_util.hpp"

using namespace cvx;
using namespace cvx::testutil;

namespace {
// independent shell count: reduced residues walk, distinct loop structure
int count_lattice_points(int norm2) {
  int count = 0;
  int m = 0;
  while (m * m <= norm2) ++m;
  for (int a = -m; a <= m; ++a) {
    int ra = norm2 - a * a;
    if (ra < 0) continue;
    for (int b = -m; b <= m; ++b) {
      int rb = ra - b * b;
      if (rb < 0) continue;
      int c = int(std::lround(std::sqrt(double(rb))));
      for (int cc : {c - 1, c, c + 1})
        if (cc >= 0 && cc * cc == rb) count += cc == 0 ? 1 : 2;
    }
  }
  return count;
}

BeltramiCoefficients random_coeffs(const BeltramiBasis& basis,
                                   std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  BeltramiCoefficients c;
  for (std::size_t i = 0; i < basis.pairs.size(); ++i)
    c.a.emplace_back(dist(rng), dist(rng));
  return c;
}
}  // namespace

TEST_CASE("build_basis invariants") {
  SUBCASE("lambda0 = 5, k = (3,4,0)") {
    auto basis = build_basis(5);
    int idx = basis.pair_index(Vector3i(3, 4, 0));
    REQUIRE(idx >= 0);
    const auto& e = basis.pairs[idx];
    CHECK(std::abs(e.A.dot(Vector3d(3, 4, 0))) < 1e-14);
    CHECK(e.A.squaredNorm() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(std::abs(e.A[2]) - 1.0 / std::sqrt(2.0)) < 1e-14);
  }
  SUBCASE("lambda0 = 1: six lattice points") {
    auto basis = build_basis(1);
    CHECK(basis.pairs.size() == 3);
    for (const auto& e : basis.pairs) {
      CHECK(std::abs(e.A.dot(e.k.cast<double>())) < 1e-15);
      CHECK(e.A.squaredNorm() == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(std::abs(e.B.dot(e.k.cast<double>().cast<Complex>())) < 1e-14);
      CHECK(e.B.squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  SUBCASE("lambda0 = 7: shell count matches enumeration oracle") {
    auto basis = build_basis(7);
    CHECK(int(basis.pairs.size()) * 2 == count_lattice_points(49));
    CHECK(count_lattice_points(49) == 54);
    for (const auto& e : basis.pairs)
      CHECK(std::abs(e.B.dot(e.k.cast<double>().cast<Complex>())) < 1e-13);
  }
  SUBCASE("empty shell rejected") {
    CHECK_THROWS_WITH_AS(build_basis_norm(7), doctest::Contains("empty shell"),
                         std::invalid_argument);
  }
}

TEST_CASE("assemble_flow: eigenflow and stationarity") {
  Grid3 g(48);
  TimeGrid tg(1);
  std::mt19937_64 rng(13);

  for (int lambda0 : {1, 5}) {
    auto basis = build_basis(lambda0);
    SUBCASE(("lambda0 = " + std::to_string(lambda0)).c_str()) {
      auto zero = BeltramiCoefficients{
          std::vector<Complex>(basis.pairs.size(), Complex(0))};
      auto wz = assemble_flow(basis, zero, g, tg);
      for (int c = 0; c < 3; ++c)
        CHECK(slice::max_coeff(wz.comp[c].slices[0]) == 0.0);

      for (int trial = 0; trial < 5; ++trial) {
        auto coeffs = random_coeffs(basis, rng);
        auto w = assemble_flow(basis, coeffs, g, tg);
        double scale = sup_norm(w);

        CHECK(solenoidal_defect(w) < 1e-13);

        auto cw = curl(w);
        auto want = lincomb(double(lambda0), w, 0.0, w);
        double num = 0;
        for (int c = 0; c < 3; ++c)
          num = std::max(num, max_slice_diff(cw.comp[c], want.comp[c]));
        CHECK(num / scale < 1e-13);

        // stationarity: div(W (x) W) = grad |W|^2 / 2
        auto ww = outer_product(w, w);
        auto div_ww = divergence(ww);
        auto half_w2 = dot_product(w, w);
        cvx::scale(half_w2, 0.5);
        auto grad_half = gradient(half_w2);
        double resid = 0;
        for (int c = 0; c < 3; ++c)
          resid = std::max(
              resid, max_slice_diff(div_ww.comp[c], grad_half.comp[c]));
        CHECK(resid / (scale * scale) < 1e-12);

        // stationary Euler solution with pressure -|W|^2/2
        auto pressure = half_w2;
        cvx::scale(pressure, -1.0);
        auto resid_vec = lincomb(1.0, div_ww, 1.0, gradient(pressure));
        for (int c = 0; c < 3; ++c)
          CHECK(slice::max_coeff(resid_vec.comp[c].slices[0]) /
                    (scale * scale) < 1e-12);
      }
    }
  }
}

TEST_CASE("mean_stress: closed form equals grid average") {
  Grid3 g(48);
  TimeGrid tg(1);
  std::mt19937_64 rng(101);

  SUBCASE("single pair, unit amplitude") {
    auto basis = build_basis(1);
    BeltramiCoefficients c{std::vector<Complex>(basis.pairs.size(), 0.0)};
    c.a[0] = Complex(1.0, 0.0);
    Matrix3d m = mean_stress(basis, c);
    Vector3d khat = basis.pairs[0].k.cast<double>().normalized();
    Matrix3d want = Matrix3d::Identity() - khat * khat.transpose();
    CHECK((m - want).norm() < 1e-14);
  }
  SUBCASE("zero coefficients") {
    auto basis = build_basis(5);
    BeltramiCoefficients c{std::vector<Complex>(basis.pairs.size(), 0.0)};
    CHECK(mean_stress(basis, c).norm() == 0.0);
  }
  SUBCASE("random coefficients on the lambda0 = 5 shell") {
    auto basis = build_basis(5);
    for (int trial = 0; trial < 5; ++trial) {
      auto coeffs = random_coeffs(basis, rng);
      auto w = assemble_flow(basis, coeffs, g, tg);
      auto avg = space_mean(outer_product(w, w))[0];
      Matrix3d want = mean_stress(basis, coeffs);
      CHECK((avg - want).norm() / want.norm() < 1e-12);
    }
  }
}
