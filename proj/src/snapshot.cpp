#include "cvx/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <memory>

namespace cvx {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'C', 'V', 'X', 'F', '0', '0', '0', '1'};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_or_throw(const std::string& path, const char* mode) {
  File f(std::fopen(path.c_str(), mode));
  if (!f) throw SnapshotError("cannot open '" + path + "'");
  return f;
}

void write_header(std::FILE* f, const SnapshotInfo& info) {
  std::fwrite(kMagic, 1, 8, f);
  std::uint32_t n = std::uint32_t(info.n), s = std::uint32_t(info.samples);
  std::uint8_t rank = std::uint8_t(info.rank), flags = std::uint8_t(info.flags);
  std::fwrite(&n, 4, 1, f);
  std::fwrite(&s, 4, 1, f);
  std::fwrite(&rank, 1, 1, f);
  std::fwrite(&flags, 1, 1, f);
}

SnapshotInfo read_header(std::FILE* f, const std::string& path) {
  char magic[8];
  if (std::fread(magic, 1, 8, f) != 8 || std::memcmp(magic, kMagic, 8) != 0)
    throw SnapshotError("'" + path + "': bad magic, expected CVXF0001");
  std::uint32_t n = 0, s = 0;
  std::uint8_t rank = 0, flags = 0;
  if (std::fread(&n, 4, 1, f) != 1 || std::fread(&s, 4, 1, f) != 1 ||
      std::fread(&rank, 1, 1, f) != 1 || std::fread(&flags, 1, 1, f) != 1)
    throw SnapshotError("'" + path + "': truncated header");
  SnapshotInfo info;
  info.n = int(n);
  info.samples = int(s);
  info.rank = int(rank);
  info.flags = flags;
  return info;
}

int rank_components(int rank) { return rank == 0 ? 1 : rank == 1 ? 3 : 9; }

// write coefficients in (t, k1, k2, k3, component) order
void write_body(std::FILE* f, const Grid3& g,
                const std::vector<const SpectralScalarField*>& comps) {
  const int n = g.n;
  const int ncomp = int(comps.size());
  std::vector<double> row(std::size_t(n) * ncomp * 2);
  for (int t = 0; t < comps[0]->time_grid.samples; ++t)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        std::size_t w = 0;
        for (int i3 = 0; i3 < n; ++i3) {
          Vector3i k(g.wave(i1), g.wave(i2), g.wave(i3));
          for (int c = 0; c < ncomp; ++c) {
            Complex v = comps[c]->mode(t, k);
            row[w++] = v.real();
            row[w++] = v.imag();
          }
        }
        if (std::fwrite(row.data(), 8, w, f) != w)
          throw SnapshotError("snapshot write failed");
      }
}

void read_body(std::FILE* f, const std::string& path, const Grid3& g,
               std::vector<SpectralScalarField*>& comps) {
  const int n = g.n;
  const int ncomp = int(comps.size());
  std::vector<double> row(std::size_t(n) * ncomp * 2);
  for (int t = 0; t < comps[0]->time_grid.samples; ++t)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        if (std::fread(row.data(), 8, row.size(), f) != row.size())
          throw SnapshotError("'" + path + "': truncated body");
        std::size_t r = 0;
        for (int i3 = 0; i3 < n; ++i3) {
          for (int c = 0; c < ncomp; ++c) {
            Complex v(row[r], row[r + 1]);
            r += 2;
            if (i3 <= n / 2)
              comps[c]->slices[t][g.spec_index(i1, i2, i3)] = v;
          }
        }
      }
}

unsigned field_flags(const SpectralVectorField& f) {
  return f.solenoidal ? 1u : 0u;
}
unsigned field_flags(const SpectralMatrixField& f) {
  return (f.symmetric ? 2u : 0u) | (f.trace_free ? 4u : 0u);
}
}  // namespace

SnapshotInfo read_snapshot_info(const std::string& path) {
  File f = open_or_throw(path, "rb");
  return read_header(f.get(), path);
}

void write_snapshot(const std::string& path, const SpectralScalarField& fld) {
  File f = open_or_throw(path, "wb");
  write_header(f.get(), {fld.grid.n, fld.time_grid.samples, 0, 0});
  write_body(f.get(), fld.grid, {&fld});
}

void write_snapshot(const std::string& path, const SpectralVectorField& fld) {
  File f = open_or_throw(path, "wb");
  write_header(f.get(),
               {fld.grid().n, fld.time_grid().samples, 1, field_flags(fld)});
  write_body(f.get(), fld.grid(),
             {&fld.comp[0], &fld.comp[1], &fld.comp[2]});
}

void write_snapshot(const std::string& path, const SpectralMatrixField& fld) {
  File f = open_or_throw(path, "wb");
  write_header(f.get(),
               {fld.grid().n, fld.time_grid().samples, 2, field_flags(fld)});
  std::vector<const SpectralScalarField*> comps;
  for (int c = 0; c < 9; ++c) comps.push_back(&fld.comp[c]);
  write_body(f.get(), fld.grid(), comps);
}

SpectralScalarField read_snapshot_scalar(const std::string& path) {
  File f = open_or_throw(path, "rb");
  auto info = read_header(f.get(), path);
  if (info.rank != 0)
    throw SnapshotError("'" + path + "': expected a scalar snapshot");
  SpectralScalarField fld(Grid3(info.n), TimeGrid(info.samples));
  std::vector<SpectralScalarField*> comps = {&fld};
  read_body(f.get(), path, fld.grid, comps);
  return fld;
}

SpectralVectorField read_snapshot_vector(const std::string& path) {
  File f = open_or_throw(path, "rb");
  auto info = read_header(f.get(), path);
  if (info.rank != 1)
    throw SnapshotError("'" + path + "': expected a vector snapshot");
  SpectralVectorField fld(Grid3(info.n), TimeGrid(info.samples));
  std::vector<SpectralScalarField*> comps = {&fld.comp[0], &fld.comp[1],
                                             &fld.comp[2]};
  read_body(f.get(), path, fld.grid(), comps);
  fld.solenoidal = info.flags & 1u;
  return fld;
}

SpectralMatrixField read_snapshot_matrix(const std::string& path) {
  File f = open_or_throw(path, "rb");
  auto info = read_header(f.get(), path);
  if (info.rank != 2)
    throw SnapshotError("'" + path + "': expected a matrix snapshot");
  SpectralMatrixField fld(Grid3(info.n), TimeGrid(info.samples));
  std::vector<SpectralScalarField*> comps;
  for (int c = 0; c < 9; ++c) comps.push_back(&fld.comp[c]);
  read_body(f.get(), path, fld.grid(), comps);
  fld.symmetric = info.flags & 2u;
  fld.trace_free = info.flags & 4u;
  return fld;
}

// ---------------------------------------------------------------------------

SparseVec3 sparsify_vec3(const Grid3& g, const ComplexBuf bufs[3],
                         double rel_threshold) {
  double peak = 0;
  for (int c = 0; c < 3; ++c)
    for (const auto& v : bufs[c]) peak = std::max(peak, std::abs(v));
  double cutoff = peak * rel_threshold;
  SparseVec3 out;
  std::int64_t m = std::int64_t(bufs[0].size());
  for (std::int64_t i = 0; i < m; ++i) {
    double mag = std::max({std::abs(bufs[0][i]), std::abs(bufs[1][i]),
                           std::abs(bufs[2][i])});
    if (mag >= cutoff && mag > 0) {
      out.idx.push_back(i);
      for (int c = 0; c < 3; ++c) out.val[c].push_back(bufs[c][i]);
    }
  }
  return out;
}

void accumulate(const SparseVec3& s, double w, ComplexBuf dense[3]) {
  for (std::size_t i = 0; i < s.idx.size(); ++i)
    for (int c = 0; c < 3; ++c) dense[c][s.idx[i]] += w * s.val[c][i];
}

namespace {
template <bool kKeepMean, bool kProjectOut>
void leray_apply(const Grid3& g, SparseVec3& s) {
  const int n = g.n, h = g.half();
  for (std::size_t i = 0; i < s.idx.size(); ++i) {
    std::int64_t q = s.idx[i];
    int i3 = int(q % h);
    int i2 = int((q / h) % n);
    int i1 = int(q / (std::int64_t(h) * n));
    Vector3d k(g.wave(i1), g.wave(i2), i3);
    double k2 = k.squaredNorm();
    if (k2 == 0.0) {
      if (kProjectOut)
        for (int c = 0; c < 3; ++c) s.val[c][i] = Complex(0);
      continue;
    }
    Complex kv = k[0] * s.val[0][i] + k[1] * s.val[1][i] + k[2] * s.val[2][i];
    for (int c = 0; c < 3; ++c) {
      Complex grad_part = k[c] * kv / k2;
      s.val[c][i] = kProjectOut ? s.val[c][i] - grad_part : grad_part;
    }
  }
}
}  // namespace

void leray_p_inplace(const Grid3& g, SparseVec3& s) {
  leray_apply<false, true>(g, s);
}
void leray_q_inplace(const Grid3& g, SparseVec3& s) {
  leray_apply<true, false>(g, s);
}

double deterministic_sum(const double* data, std::size_t n) {
  // fixed-size chunks summed in order, so the result does not depend on the
  // worker count
  constexpr std::size_t kChunk = 1 << 15;
  double total = 0;
  for (std::size_t lo = 0; lo < n; lo += kChunk) {
    std::size_t hi = std::min(n, lo + kChunk);
    double part = 0;
    for (std::size_t i = lo; i < hi; ++i) part += data[i];
    total += part;
  }
  return total;
}

}  // namespace cvx
