#include "cvx/fft3.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace cvx {

namespace {
std::mutex g_plan_mutex;
std::map<int, std::unique_ptr<Fft3>>& plan_cache() {
  static std::map<int, std::unique_ptr<Fft3>> cache;
  return cache;
}
int g_workers = int(std::thread::hardware_concurrency());

struct FftwThreadInit {
  FftwThreadInit() { fftw_init_threads(); }
};
}  // namespace

int default_workers() { return g_workers > 0 ? g_workers : 1; }
void set_default_workers(int w) { g_workers = w > 0 ? w : 1; }

void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t, std::int64_t)>& body,
                  int workers) {
  if (workers <= 0) workers = default_workers();
  std::int64_t total = end - begin;
  if (total <= 0) return;
  if (workers == 1 || total < 2) {
    body(begin, end);
    return;
  }
  std::int64_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = begin + w * chunk;
    std::int64_t hi = lo + chunk < end ? lo + chunk : end;
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

std::uint64_t fnv1a(const void* data, std::size_t size) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                (unsigned long long)fnv1a(bytes.data(), bytes.size()));
  return std::string(buf);
}

int fft_friendly(int x) {
  if (x < 8) x = 8;
  if (x % 2) ++x;
  for (;; x += 2) {
    int m = x;
    for (int p : {2, 3, 5, 7})
      while (m % p == 0) m /= p;
    if (m == 1) return x;
  }
}

Fft3::Fft3(int n) : n_(n) {
  static FftwThreadInit init_once;
  fftw_plan_with_nthreads(default_workers());
  double* phys = fftw_alloc_real(std::size_t(n) * n * n);
  fftw_complex* spec = fftw_alloc_complex(std::size_t(n) * n * (n / 2 + 1));
  fwd_ = fftw_plan_dft_r2c_3d(n, n, n, phys, spec, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_c2r_3d(n, n, n, spec, phys, FFTW_ESTIMATE);
  require(fwd_ && bwd_, "Fft3: planning failed");
  fftw_free(phys);
  fftw_free(spec);
}

const Fft3& Fft3::plan(int n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::unique_ptr<Fft3>(new Fft3(n))).first;
  return *it->second;
}

void Fft3::forward(double* phys_in, Complex* spec_out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), phys_in,
                       reinterpret_cast<fftw_complex*>(spec_out));
  double scale = 1.0 / (double(n_) * n_ * n_);
  std::int64_t m = std::int64_t(n_) * n_ * (n_ / 2 + 1);
  parallel_for(0, m, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) spec_out[i] *= scale;
  });
}

void Fft3::backward(Complex* spec_in, double* phys_out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(bwd_),
                       reinterpret_cast<fftw_complex*>(spec_in), phys_out);
}

}  // namespace cvx
