#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cvx {

using Complex = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;
// volume of the periodic box [0,2pi)^3
constexpr double kBoxVolume = kTwoPi * kTwoPi * kTwoPi;

// Aligned allocator so buffers allocated anywhere are usable with SIMD FFT
// plans (new-array execute requires matching alignment).
template <class T, std::size_t Align = 64>
struct AlignedAllocator {
  using value_type = T;
  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Align>;
  };
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Align>&) {}
  T* allocate(std::size_t n) {
    void* p = ::operator new[](n * sizeof(T), std::align_val_t(Align));
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete[](p, std::align_val_t(Align));
  }
  template <class U>
  bool operator==(const AlignedAllocator<U, Align>&) const { return true; }
};

using RealBuf = std::vector<double, AlignedAllocator<double>>;
using ComplexBuf = std::vector<Complex, AlignedAllocator<Complex>>;

// Static-split parallel for with deterministic work assignment.  Reductions
// built on it must merge per-chunk partials in chunk order.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t, std::int64_t)>& body,
                  int workers = 0);

int default_workers();
void set_default_workers(int w);

// FNV-1a, used for config/content hashes in run manifests.
std::uint64_t fnv1a(const void* data, std::size_t size);
std::string fnv1a_hex(const std::string& bytes);

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace cvx
