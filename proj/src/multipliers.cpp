#include "cvx/multipliers.hpp"

namespace cvx {

namespace slice {

namespace {
template <class Fn>
void for_modes(const Grid3& g, Fn&& fn) {
  const int n = g.n, h = g.half();
  parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i1 = lo; i1 < hi; ++i1) {
      double k1 = g.wave(int(i1));
      for (int i2 = 0; i2 < n; ++i2) {
        double k2 = g.wave(i2);
        std::int64_t row = (i1 * n + i2) * h;
        for (int i3 = 0; i3 < h; ++i3)
          fn(row + i3, Vector3d(k1, k2, double(i3)));
      }
    }
  });
}
}  // namespace

void inverse_laplacian(const Grid3& g, const ComplexBuf& in, ComplexBuf& out) {
  out.resize(in.size());
  for_modes(g, [&](std::int64_t q, const Vector3d& k) {
    double k2 = k.squaredNorm();
    out[q] = k2 == 0.0 ? Complex(0) : -in[q] / k2;
  });
}

void leray_q(const Grid3& g, const Complex* in[3], Complex* out[3]) {
  for_modes(g, [&](std::int64_t q, const Vector3d& k) {
    double k2 = k.squaredNorm();
    if (k2 == 0.0) {
      for (int i = 0; i < 3; ++i) out[i][q] = in[i][q];
      return;
    }
    Complex kv = k[0] * in[0][q] + k[1] * in[1][q] + k[2] * in[2][q];
    for (int i = 0; i < 3; ++i) out[i][q] = k[i] * kv / k2;
  });
}

void leray_p(const Grid3& g, const Complex* in[3], Complex* out[3]) {
  for_modes(g, [&](std::int64_t q, const Vector3d& k) {
    double k2 = k.squaredNorm();
    if (k2 == 0.0) {
      for (int i = 0; i < 3; ++i) out[i][q] = Complex(0);
      return;
    }
    Complex kv = k[0] * in[0][q] + k[1] * in[1][q] + k[2] * in[2][q];
    for (int i = 0; i < 3; ++i) out[i][q] = in[i][q] - k[i] * kv / k2;
  });
}

namespace {
// symmetric trace-free matrix block of the order-(-1) divergence inverse at
// one mode: u = -v/|k|^2, then 1/4 sym grad Pu + 3/4 sym grad u - 1/2 div u Id
inline void reynolds_mode(const Vector3d& k, const Complex v[3],
                          Complex m[9]) {
  double k2 = k.squaredNorm();
  if (k2 == 0.0) {
    for (int i = 0; i < 9; ++i) m[i] = Complex(0);
    return;
  }
  Complex u[3], pu[3];
  for (int i = 0; i < 3; ++i) u[i] = -v[i] / k2;
  Complex ku = k[0] * u[0] + k[1] * u[1] + k[2] * u[2];
  for (int i = 0; i < 3; ++i) pu[i] = u[i] - k[i] * ku / k2;
  const Complex I(0, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex grad_pu = k[j] * pu[i] + k[i] * pu[j];
      Complex grad_u = k[j] * u[i] + k[i] * u[j];
      Complex val = I * (0.25 * grad_pu + 0.75 * grad_u);
      if (i == j) val -= 0.5 * I * ku;
      m[i * 3 + j] = val;
    }
}
}  // namespace

void inverse_divergence(const Grid3& g, const Complex* in[3], Complex* out[9]) {
  for_modes(g, [&](std::int64_t q, const Vector3d& k) {
    Complex v[3] = {in[0][q], in[1][q], in[2][q]};
    Complex m[9];
    reynolds_mode(k, v, m);
    for (int i = 0; i < 9; ++i) out[i][q] = m[i];
  });
}

void inverse_divergence_sym(const Grid3& g, const Complex* in[3],
                            Complex* out[6]) {
  static constexpr int kUpper[6] = {0, 1, 2, 4, 5, 8};
  for_modes(g, [&](std::int64_t q, const Vector3d& k) {
    Complex v[3] = {in[0][q], in[1][q], in[2][q]};
    Complex m[9];
    reynolds_mode(k, v, m);
    for (int i = 0; i < 6; ++i) out[i][q] = m[kUpper[i]];
  });
}

void inverse_divergence_of_divergence(const Grid3& g, const Complex* in[9],
                                      Complex* out[9], bool leray_compose) {
  for_modes(g, [&](std::int64_t q, const Vector3d& k) {
    const Complex I(0, 1);
    Complex div[3];
    for (int i = 0; i < 3; ++i)
      div[i] = I * (k[0] * in[i * 3 + 0][q] + k[1] * in[i * 3 + 1][q] +
                    k[2] * in[i * 3 + 2][q]);
    if (leray_compose) {
      double k2 = k.squaredNorm();
      if (k2 == 0.0) {
        // mean part of Q passes through
      } else {
        Complex kd = k[0] * div[0] + k[1] * div[1] + k[2] * div[2];
        for (int i = 0; i < 3; ++i) div[i] = k[i] * kd / k2;
      }
    }
    Complex m[9];
    reynolds_mode(k, div, m);
    for (int i = 0; i < 9; ++i) out[i][q] = m[i];
  });
}

}  // namespace slice

SpectralScalarField inverse_laplacian(const SpectralScalarField& f) {
  SpectralScalarField out(f.grid, f.time_grid);
  for (std::size_t t = 0; t < f.slices.size(); ++t)
    slice::inverse_laplacian(f.grid, f.slices[t], out.slices[t]);
  return out;
}

SpectralVectorField leray_Q(const SpectralVectorField& v) {
  SpectralVectorField out(v.grid(), v.time_grid());
  for (std::size_t t = 0; t < v.comp[0].slices.size(); ++t) {
    const Complex* in[3];
    Complex* o[3];
    for (int c = 0; c < 3; ++c) {
      in[c] = v.comp[c].slices[t].data();
      o[c] = out.comp[c].slices[t].data();
    }
    slice::leray_q(v.grid(), in, o);
  }
  return out;
}

SpectralVectorField leray_P(const SpectralVectorField& v) {
  SpectralVectorField out(v.grid(), v.time_grid());
  for (std::size_t t = 0; t < v.comp[0].slices.size(); ++t) {
    const Complex* in[3];
    Complex* o[3];
    for (int c = 0; c < 3; ++c) {
      in[c] = v.comp[c].slices[t].data();
      o[c] = out.comp[c].slices[t].data();
    }
    slice::leray_p(v.grid(), in, o);
  }
  out.solenoidal = true;
  return out;
}

SpectralMatrixField inverse_divergence(const SpectralVectorField& v) {
  SpectralMatrixField out(v.grid(), v.time_grid());
  for (std::size_t t = 0; t < v.comp[0].slices.size(); ++t) {
    const Complex* in[3];
    Complex* o[9];
    for (int c = 0; c < 3; ++c) in[c] = v.comp[c].slices[t].data();
    for (int c = 0; c < 9; ++c) o[c] = out.comp[c].slices[t].data();
    slice::inverse_divergence(v.grid(), in, o);
  }
  out.symmetric = true;
  out.trace_free = true;
  return out;
}

SpectralMatrixField inverse_divergence_of_divergence(
    const SpectralMatrixField& a, bool leray_compose) {
  SpectralMatrixField out(a.grid(), a.time_grid());
  for (std::size_t t = 0; t < a.comp[0].slices.size(); ++t) {
    const Complex* in[9];
    Complex* o[9];
    for (int c = 0; c < 9; ++c) {
      in[c] = a.comp[c].slices[t].data();
      o[c] = out.comp[c].slices[t].data();
    }
    slice::inverse_divergence_of_divergence(a.grid(), in, o, leray_compose);
  }
  out.symmetric = true;
  out.trace_free = true;
  return out;
}

}  // namespace cvx
