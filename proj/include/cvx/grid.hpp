#pragma once

#include <cmath>
#include <cstdint>

#include "cvx/util.hpp"

namespace cvx {

// Collocation grid on [0,2pi)^3 with n points per axis.  Wavenumbers are the
// integers in [-n/2, n/2); storage order per axis is the usual FFT order
// (index i carries wavenumber i for i < n/2 and i-n otherwise).
struct Grid3 {
  int n = 0;
  double dealias_fraction = 2.0 / 3.0;

  Grid3() = default;
  Grid3(int n_, double frac = 2.0 / 3.0) : n(n_), dealias_fraction(frac) {
    require(n >= 8 && n % 2 == 0, "Grid3: n must be even and >= 8");
    require(frac > 0.0 && frac <= 1.0, "Grid3: dealias_fraction in (0,1]");
  }

  std::int64_t points() const { return std::int64_t(n) * n * n; }
  int half() const { return n / 2 + 1; }
  std::int64_t spec_size() const { return std::int64_t(n) * n * half(); }

  int wave(int i) const { return i < n / 2 ? i : i - n; }
  int index_of_wave(int k) const { return k >= 0 ? k : k + n; }

  // largest retained |k_i| when truncating before/after products
  int dealias_cut() const {
    return int(std::floor(dealias_fraction * (n / 2)));
  }
  // largest per-axis mode for which truncated products are alias-exact
  int exact_product_band() const {
    int cut = dealias_cut();
    int safe = (n - 1) / 3;
    return cut < safe ? cut : safe;
  }

  std::int64_t spec_index(int i1, int i2, int i3h) const {
    return (std::int64_t(i1) * n + i2) * half() + i3h;
  }
  std::int64_t phys_index(int i1, int i2, int i3) const {
    return (std::int64_t(i1) * n + i2) * n + i3;
  }

  bool operator==(const Grid3& o) const {
    return n == o.n && dealias_fraction == o.dealias_fraction;
  }
  bool operator!=(const Grid3& o) const { return !(*this == o); }
};

// Equispaced time samples on [0,1]; a single sample sits at t = 0.
struct TimeGrid {
  int samples = 1;

  TimeGrid() = default;
  explicit TimeGrid(int s) : samples(s) {
    require(s >= 1, "TimeGrid: samples must be positive");
  }

  double time(int s) const {
    return samples == 1 ? 0.0 : double(s) / double(samples - 1);
  }
  double dt() const {
    require(samples >= 2, "TimeGrid: dt undefined for a single sample");
    return 1.0 / double(samples - 1);
  }
  bool operator==(const TimeGrid& o) const { return samples == o.samples; }
  bool operator!=(const TimeGrid& o) const { return !(*this == o); }
};

// Smallest grid size >= x whose prime factors are all in {2,3,5,7} (and even).
int fft_friendly(int x);

}  // namespace cvx
