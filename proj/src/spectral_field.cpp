#include "cvx/spectral_field.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace cvx {

namespace slice {

void spec_to_phys(const Grid3& g, const ComplexBuf& spec, RealBuf& phys,
                  ComplexBuf& scratch) {
  scratch = spec;  // c2r destroys its input
  phys.resize(std::size_t(g.points()));
  Fft3::plan(g.n).backward(scratch.data(), phys.data());
}

void phys_to_spec(const Grid3& g, RealBuf& phys, ComplexBuf& spec) {
  spec.resize(std::size_t(g.spec_size()));
  Fft3::plan(g.n).forward(phys.data(), spec.data());
}

void derivative(const Grid3& g, const ComplexBuf& in, int axis,
                ComplexBuf& out) {
  require(axis >= 1 && axis <= 3, "derivative: axis must be 1..3");
  out.resize(in.size());
  const int n = g.n, h = g.half();
  parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i1 = lo; i1 < hi; ++i1) {
      int k1 = g.wave(int(i1));
      for (int i2 = 0; i2 < n; ++i2) {
        int k2 = g.wave(i2);
        std::int64_t row = (i1 * n + i2) * h;
        for (int i3 = 0; i3 < h; ++i3) {
          int k = axis == 1 ? k1 : axis == 2 ? k2 : i3;
          bool nyq = (axis == 1 && i1 == n / 2) ||
                     (axis == 2 && i2 == n / 2) ||
                     (axis == 3 && i3 == n / 2);
          out[row + i3] = nyq ? Complex(0)
                              : Complex(0, double(k)) * in[row + i3];
        }
      }
    }
  });
}

void truncate(const Grid3& g, ComplexBuf& spec, int cut) {
  const int n = g.n, h = g.half();
  parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i1 = lo; i1 < hi; ++i1) {
      int k1 = std::abs(g.wave(int(i1)));
      for (int i2 = 0; i2 < n; ++i2) {
        int k2 = std::abs(g.wave(i2));
        std::int64_t row = (i1 * n + i2) * h;
        if (k1 > cut || k2 > cut) {
          std::fill(spec.begin() + row, spec.begin() + row + h, Complex(0));
        } else {
          for (int i3 = cut + 1; i3 < h; ++i3) spec[row + i3] = Complex(0);
        }
      }
    }
  });
}

Complex mode(const Grid3& g, const ComplexBuf& spec, const Vector3i& k) {
  if (k[2] >= 0) {
    return spec[g.spec_index(g.index_of_wave(k[0]), g.index_of_wave(k[1]),
                             k[2])];
  }
  return std::conj(spec[g.spec_index(g.index_of_wave(-k[0]),
                                     g.index_of_wave(-k[1]), -k[2])]);
}

void set_mode(const Grid3& g, ComplexBuf& spec, const Vector3i& k, Complex v) {
  int n = g.n;
  auto store = [&](const Vector3i& kk, Complex val) {
    spec[g.spec_index(g.index_of_wave(kk[0]), g.index_of_wave(kk[1]), kk[2])] =
        val;
  };
  Vector3i kk = k;
  Complex val = v;
  if (kk[2] < 0) {
    kk = Vector3i(-k[0], -k[1], -k[2]);
    val = std::conj(v);
  }
  store(kk, val);
  if (kk[2] == 0 || kk[2] == n / 2) {
    // self-conjugate plane: keep the stored partner consistent
    int p1 = (kk[0] == -n / 2) ? kk[0] : -kk[0];
    int p2 = (kk[1] == -n / 2) ? kk[1] : -kk[1];
    Vector3i partner(p1, p2, kk[2]);
    if (partner[0] != kk[0] || partner[1] != kk[1])
      store(partner, std::conj(val));
    else if (std::abs(val.imag()) > 0)
      store(kk, Complex(val.real(), 0.0));
  }
}

double sup_abs(const RealBuf& phys) {
  double m = 0;
  for (double v : phys) m = std::max(m, std::abs(v));
  return m;
}

double max_coeff(const ComplexBuf& spec) {
  double m = 0;
  for (const auto& c : spec) m = std::max(m, std::abs(c));
  return m;
}

double mean_square(const Grid3& g, const ComplexBuf& spec) {
  const int n = g.n, h = g.half();
  double total = 0;
  for (std::int64_t i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      std::int64_t row = (i1 * n + i2) * h;
      for (int i3 = 0; i3 < h; ++i3) {
        double w = (i3 == 0 || i3 == n / 2) ? 1.0 : 2.0;
        total += w * std::norm(spec[row + i3]);
      }
    }
  return total;
}

double hermitian_defect(const Grid3& g, const ComplexBuf& spec) {
  const int n = g.n;
  double worst = 0;
  for (int plane : {0, n / 2})
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        int j1 = (n - i1) % n, j2 = (n - i2) % n;
        Complex a = spec[g.spec_index(i1, i2, plane)];
        Complex b = spec[g.spec_index(j1, j2, plane)];
        worst = std::max(worst, std::abs(a - std::conj(b)));
      }
  return worst;
}

}  // namespace slice

// ---------------------------------------------------------------------------

namespace {
void check_same(const Grid3& a, const Grid3& b, const TimeGrid& ta,
                const TimeGrid& tb) {
  require(a == b, "fields live on different grids");
  require(ta == tb, "fields live on different time grids");
}

// 4th-order first-derivative weights on 5 uniformly spaced samples
constexpr double kFd[5][5] = {
    {-25, 48, -36, 16, -3},
    {-3, -10, 18, -6, 1},
    {1, -8, 0, 8, -1},
    {-1, 6, -18, 10, 3},
    {3, -16, 36, -48, 25},
};
}  // namespace

std::vector<RealBuf> transform_to_physical(const SpectralScalarField& f) {
  std::vector<RealBuf> out(f.slices.size());
  ComplexBuf scratch;
  for (std::size_t t = 0; t < f.slices.size(); ++t)
    slice::spec_to_phys(f.grid, f.slices[t], out[t], scratch);
  return out;
}

SpectralScalarField transform_to_spectral(const Grid3& g, const TimeGrid& tg,
                                          const std::vector<RealBuf>& phys) {
  require(int(phys.size()) == tg.samples,
          "transform_to_spectral: sample count mismatch");
  SpectralScalarField f(g, tg);
  RealBuf tmp;
  for (std::size_t t = 0; t < phys.size(); ++t) {
    tmp = phys[t];
    slice::phys_to_spec(g, tmp, f.slices[t]);
  }
  return f;
}

SpectralScalarField derivative(const SpectralScalarField& f, int axis) {
  SpectralScalarField out(f.grid, f.time_grid);
  for (std::size_t t = 0; t < f.slices.size(); ++t)
    slice::derivative(f.grid, f.slices[t], axis, out.slices[t]);
  return out;
}

SpectralScalarField time_derivative(const SpectralScalarField& f) {
  const int s = f.time_grid.samples;
  require(s >= 5, "time_derivative: needs at least 5 samples");
  const double h = f.time_grid.dt();
  SpectralScalarField out(f.grid, f.time_grid);
  for (int t = 0; t < s; ++t) {
    int row, base;
    if (t <= 1) {
      row = t;
      base = 0;
    } else if (t >= s - 2) {
      row = 4 - (s - 1 - t);
      base = s - 5;
    } else {
      row = 2;
      base = t - 2;
    }
    auto& dst = out.slices[t];
    for (int j = 0; j < 5; ++j) {
      double w = kFd[row][j] / (12.0 * h);
      if (w == 0) continue;
      const auto& src = f.slices[base + j];
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w * src[i];
    }
  }
  return out;
}

SpectralVectorField time_derivative(const SpectralVectorField& f) {
  SpectralVectorField out;
  for (int c = 0; c < 3; ++c) out.comp[c] = time_derivative(f.comp[c]);
  return out;
}

SpectralMatrixField time_derivative(const SpectralMatrixField& f) {
  SpectralMatrixField out;
  for (int c = 0; c < 9; ++c) out.comp[c] = time_derivative(f.comp[c]);
  out.symmetric = f.symmetric;
  out.trace_free = f.trace_free;
  return out;
}

SpectralVectorField gradient(const SpectralScalarField& f) {
  SpectralVectorField out;
  for (int a = 0; a < 3; ++a) out.comp[a] = derivative(f, a + 1);
  return out;
}

SpectralScalarField divergence(const SpectralVectorField& v) {
  SpectralScalarField out(v.grid(), v.time_grid());
  ComplexBuf tmp;
  for (int a = 0; a < 3; ++a) {
    for (std::size_t t = 0; t < out.slices.size(); ++t) {
      slice::derivative(v.grid(), v.comp[a].slices[t], a + 1, tmp);
      auto& dst = out.slices[t];
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += tmp[i];
    }
  }
  return out;
}

SpectralVectorField divergence(const SpectralMatrixField& m) {
  SpectralVectorField out(m.grid(), m.time_grid());
  ComplexBuf tmp;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (std::size_t t = 0; t < m.comp[0].slices.size(); ++t) {
        slice::derivative(m.grid(), m.at(i, j).slices[t], j + 1, tmp);
        auto& dst = out.comp[i].slices[t];
        for (std::size_t q = 0; q < dst.size(); ++q) dst[q] += tmp[q];
      }
  return out;
}

SpectralVectorField curl(const SpectralVectorField& v) {
  SpectralVectorField out(v.grid(), v.time_grid());
  ComplexBuf a, b;
  for (std::size_t t = 0; t < v.comp[0].slices.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      slice::derivative(v.grid(), v.comp[k].slices[t], j + 1, a);
      slice::derivative(v.grid(), v.comp[j].slices[t], k + 1, b);
      auto& dst = out.comp[i].slices[t];
      for (std::size_t q = 0; q < dst.size(); ++q) dst[q] = a[q] - b[q];
    }
  }
  return out;
}

SpectralMatrixField gradient(const SpectralVectorField& v) {
  SpectralMatrixField out(v.grid(), v.time_grid());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.at(i, j) = derivative(v.comp[i], j + 1);
  return out;
}

namespace {
// dealiased product of two slices given their physical samples
void product_slices(const Grid3& g, const RealBuf& fa, const RealBuf& fb,
                    RealBuf& scratch, ComplexBuf& out) {
  scratch.resize(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i) scratch[i] = fa[i] * fb[i];
  slice::phys_to_spec(g, scratch, out);
  slice::truncate(g, out, g.dealias_cut());
}

std::vector<RealBuf> dealiased_physical(const SpectralScalarField& f) {
  std::vector<RealBuf> out(f.slices.size());
  ComplexBuf tmp, scratch;
  for (std::size_t t = 0; t < f.slices.size(); ++t) {
    tmp = f.slices[t];
    slice::truncate(f.grid, tmp, f.grid.dealias_cut());
    slice::spec_to_phys(f.grid, tmp, out[t], scratch);
  }
  return out;
}
}  // namespace

SpectralScalarField pointwise_product(const SpectralScalarField& f,
                                      const SpectralScalarField& g) {
  check_same(f.grid, g.grid, f.time_grid, g.time_grid);
  auto fp = dealiased_physical(f);
  auto gp = dealiased_physical(g);
  SpectralScalarField out(f.grid, f.time_grid);
  RealBuf scratch;
  for (std::size_t t = 0; t < fp.size(); ++t)
    product_slices(f.grid, fp[t], gp[t], scratch, out.slices[t]);
  return out;
}

SpectralMatrixField outer_product(const SpectralVectorField& v,
                                  const SpectralVectorField& w) {
  check_same(v.grid(), w.grid(), v.time_grid(), w.time_grid());
  SpectralMatrixField out(v.grid(), v.time_grid());
  std::array<std::vector<RealBuf>, 3> vp, wp;
  for (int c = 0; c < 3; ++c) {
    vp[c] = dealiased_physical(v.comp[c]);
    wp[c] = dealiased_physical(w.comp[c]);
  }
  RealBuf scratch;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (std::size_t t = 0; t < vp[0].size(); ++t)
        product_slices(v.grid(), vp[i][t], wp[j][t], scratch,
                       out.at(i, j).slices[t]);
  return out;
}

SpectralScalarField dot_product(const SpectralVectorField& v,
                                const SpectralVectorField& w) {
  check_same(v.grid(), w.grid(), v.time_grid(), w.time_grid());
  SpectralScalarField out(v.grid(), v.time_grid());
  RealBuf scratch;
  ComplexBuf tmp;
  for (int c = 0; c < 3; ++c) {
    auto vp = dealiased_physical(v.comp[c]);
    auto wp = dealiased_physical(w.comp[c]);
    for (std::size_t t = 0; t < vp.size(); ++t) {
      product_slices(v.grid(), vp[t], wp[t], scratch, tmp);
      auto& dst = out.slices[t];
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += tmp[i];
    }
  }
  return out;
}

std::vector<double> space_mean(const SpectralScalarField& f) {
  std::vector<double> out(f.slices.size());
  for (std::size_t t = 0; t < f.slices.size(); ++t)
    out[t] = f.slices[t][0].real();
  return out;
}

std::vector<Vector3d> space_mean(const SpectralVectorField& f) {
  std::vector<Vector3d> out(f.comp[0].slices.size());
  for (std::size_t t = 0; t < out.size(); ++t)
    out[t] = Vector3d(f.comp[0].slices[t][0].real(),
                      f.comp[1].slices[t][0].real(),
                      f.comp[2].slices[t][0].real());
  return out;
}

std::vector<Matrix3d> space_mean(const SpectralMatrixField& f) {
  std::vector<Matrix3d> out(f.comp[0].slices.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = f.at(i, j).slices[t][0].real();
    out[t] = m;
  }
  return out;
}

SpectralScalarField lincomb(double a, const SpectralScalarField& f, double b,
                            const SpectralScalarField& g) {
  check_same(f.grid, g.grid, f.time_grid, g.time_grid);
  SpectralScalarField out(f.grid, f.time_grid);
  for (std::size_t t = 0; t < f.slices.size(); ++t)
    for (std::size_t i = 0; i < f.slices[t].size(); ++i)
      out.slices[t][i] = a * f.slices[t][i] + b * g.slices[t][i];
  return out;
}

SpectralVectorField lincomb(double a, const SpectralVectorField& f, double b,
                            const SpectralVectorField& g) {
  SpectralVectorField out;
  for (int c = 0; c < 3; ++c) out.comp[c] = lincomb(a, f.comp[c], b, g.comp[c]);
  return out;
}

SpectralMatrixField lincomb(double a, const SpectralMatrixField& f, double b,
                            const SpectralMatrixField& g) {
  SpectralMatrixField out;
  for (int c = 0; c < 9; ++c) out.comp[c] = lincomb(a, f.comp[c], b, g.comp[c]);
  return out;
}

void scale(SpectralScalarField& f, double a) {
  for (auto& s : f.slices)
    for (auto& c : s) c *= a;
}

double sup_norm(const SpectralScalarField& f) {
  double m = 0;
  ComplexBuf scratch;
  RealBuf phys;
  for (const auto& s : f.slices) {
    slice::spec_to_phys(f.grid, s, phys, scratch);
    m = std::max(m, slice::sup_abs(phys));
  }
  return m;
}

double sup_norm(const SpectralVectorField& f) {
  double m = 0;
  ComplexBuf scratch;
  std::array<RealBuf, 3> phys;
  for (std::size_t t = 0; t < f.comp[0].slices.size(); ++t) {
    for (int c = 0; c < 3; ++c)
      slice::spec_to_phys(f.grid(), f.comp[c].slices[t], phys[c], scratch);
    for (std::size_t i = 0; i < phys[0].size(); ++i) {
      double v = phys[0][i] * phys[0][i] + phys[1][i] * phys[1][i] +
                 phys[2][i] * phys[2][i];
      m = std::max(m, v);
    }
  }
  return std::sqrt(m);
}

double sup_norm(const SpectralMatrixField& f) {
  double m = 0;
  ComplexBuf scratch;
  std::array<RealBuf, 9> phys;
  for (std::size_t t = 0; t < f.comp[0].slices.size(); ++t) {
    for (int c = 0; c < 9; ++c)
      slice::spec_to_phys(f.grid(), f.comp[c].slices[t], phys[c], scratch);
    std::int64_t npts = f.grid().points();
    parallel_for(0, npts, [&](std::int64_t lo, std::int64_t hi) {
      double local = 0;
      Matrix3d a;
      for (std::int64_t i = lo; i < hi; ++i) {
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) a(r, c) = phys[r * 3 + c][i];
        Matrix3d ata = a.transpose() * a;
        Eigen::SelfAdjointEigenSolver<Matrix3d> es;
        es.computeDirect(ata, Eigen::EigenvaluesOnly);
        local = std::max(local, es.eigenvalues().maxCoeff());
      }
      static std::mutex mu;
      std::lock_guard<std::mutex> lock(mu);
      m = std::max(m, local);
    });
  }
  return std::sqrt(std::max(0.0, m));
}

double solenoidal_defect(const SpectralVectorField& v) {
  double num = 0, den = 0;
  const Grid3& g = v.grid();
  const int n = g.n, h = g.half();
  for (std::size_t t = 0; t < v.comp[0].slices.size(); ++t) {
    for (std::int64_t i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i3 = 0; i3 < h; ++i3) {
          std::int64_t q = (i1 * n + i2) * h + i3;
          Vector3d k(g.wave(int(i1)), g.wave(i2), i3);
          Complex d = k[0] * v.comp[0].slices[t][q] +
                      k[1] * v.comp[1].slices[t][q] +
                      k[2] * v.comp[2].slices[t][q];
          double mag = std::abs(v.comp[0].slices[t][q]) +
                       std::abs(v.comp[1].slices[t][q]) +
                       std::abs(v.comp[2].slices[t][q]);
          num = std::max(num, std::abs(d));
          den = std::max(den, k.norm() * mag);
        }
  }
  return den > 0 ? num / den : 0.0;
}

double symmetry_defect(const SpectralMatrixField& m) {
  double num = 0, den = 1e-300;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (std::size_t t = 0; t < m.comp[0].slices.size(); ++t)
        for (std::size_t q = 0; q < m.comp[0].slices[t].size(); ++q) {
          num = std::max(num, std::abs(m.at(i, j).slices[t][q] -
                                       m.at(j, i).slices[t][q]));
          den = std::max(den, std::abs(m.at(i, j).slices[t][q]));
        }
  return num / den;
}

double trace_defect(const SpectralMatrixField& m) {
  double num = 0, den = 1e-300;
  for (std::size_t t = 0; t < m.comp[0].slices.size(); ++t)
    for (std::size_t q = 0; q < m.comp[0].slices[t].size(); ++q) {
      Complex tr = m.at(0, 0).slices[t][q] + m.at(1, 1).slices[t][q] +
                   m.at(2, 2).slices[t][q];
      num = std::max(num, std::abs(tr));
      for (int i = 0; i < 3; ++i)
        den = std::max(den, std::abs(m.at(i, i).slices[t][q]));
    }
  return num / den;
}

SpectralScalarField regrid(const SpectralScalarField& f, const Grid3& g) {
  SpectralScalarField out(g, f.time_grid);
  const Grid3& s = f.grid;
  int band = std::min(s.n / 2 - 1, g.n / 2 - 1);
  for (std::size_t t = 0; t < f.slices.size(); ++t)
    for (int k1 = -band; k1 <= band; ++k1)
      for (int k2 = -band; k2 <= band; ++k2)
        for (int k3 = 0; k3 <= band; ++k3) {
          Complex v = f.slices[t][s.spec_index(s.index_of_wave(k1),
                                               s.index_of_wave(k2), k3)];
          if (v != Complex(0))
            out.slices[t][g.spec_index(g.index_of_wave(k1),
                                       g.index_of_wave(k2), k3)] = v;
        }
  return out;
}

SpectralVectorField regrid(const SpectralVectorField& f, const Grid3& g) {
  SpectralVectorField out;
  for (int c = 0; c < 3; ++c) out.comp[c] = regrid(f.comp[c], g);
  out.solenoidal = f.solenoidal;
  return out;
}

SpectralMatrixField regrid(const SpectralMatrixField& f, const Grid3& g) {
  SpectralMatrixField out;
  for (int c = 0; c < 9; ++c) out.comp[c] = regrid(f.comp[c], g);
  out.symmetric = f.symmetric;
  out.trace_free = f.trace_free;
  return out;
}

}  // namespace cvx
