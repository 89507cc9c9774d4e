// Copyright 2026 The GQSP Toolkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <new>
#include <span>
#include <tuple>
#include <vector>

namespace gqsp::fft {

using cplx = std::complex<double>;

enum class Direction : int {
  kForward = FFTW_FORWARD,    // sum_j x_j e^{-2 pi i jk/n}
  kBackward = FFTW_BACKWARD,  // sum_j x_j e^{+2 pi i jk/n}
};

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace detail {

// FFTW's planner is not reentrant; execution of an existing plan on new
// arrays is. Plans are created once per (size, direction) under a lock and
// kept for the lifetime of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  /// Aligned plans may use SIMD kernels but only run on arrays with
  /// fftw_alignment_of == 0.
  fftw_plan get(std::size_t n, Direction dir, bool aligned) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(n, static_cast<int>(dir), aligned);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* scratch = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch,
                                      static_cast<int>(dir),
                                      FFTW_ESTIMATE | (aligned ? 0u : FFTW_UNALIGNED));
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mu_;
  std::map<std::tuple<std::size_t, int, bool>, fftw_plan> plans_;
};

}  // namespace detail

/// Allocator returning fftw_malloc storage, aligned for FFTW's SIMD kernels.
template <class T>
struct FftwAllocator {
  using value_type = T;

  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    if (void* p = fftw_malloc(n * sizeof(T))) return static_cast<T*>(p);
    throw std::bad_alloc();
  }
  void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept {
    return true;
  }
};

using AlignedBuffer = std::vector<cplx, FftwAllocator<cplx>>;

/// Unnormalized in-place DFT of arbitrary length.
inline void transform(std::span<cplx> data, Direction dir) {
  if (data.size() <= 1) return;
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(ptr)) == 0;
  fftw_plan plan = detail::PlanCache::instance().get(data.size(), dir, aligned);
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace gqsp::fft
